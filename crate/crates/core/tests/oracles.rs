//! The generic computations against random representations over F_p.

use compclust::catalog;
use compclust::oracle::{self, OracleConfig};
use compclust::{DimVector, HomExt, Quiver};

fn cases() -> Vec<(Quiver, DimVector)> {
    vec![
        (catalog::kronecker(), DimVector::from([3, 3])),
        (catalog::linear_a(3), DimVector::from([2, 2, 2])),
        (catalog::generalized_kronecker(3), DimVector::from([3, 3])),
        (catalog::a2_tilde(), DimVector::from([2, 2, 2])),
        (catalog::d4_tilde(), DimVector::from([2, 1, 1, 1, 1])),
        (catalog::kronecker_chain(), DimVector::from([1, 1, 1, 1, 1])),
    ]
}

#[test]
fn schur_test_matches_oracle_endomorphisms() {
    let cfg = OracleConfig::default();
    for (q, cap) in cases() {
        let h = HomExt::new(q.clone());
        for d in cap.box_below().filter(|d| d.is_positive()) {
            let ours = h.is_schur_root(&d).unwrap();
            let theirs = oracle::oracle_is_schur(&q, &d, &cfg).unwrap();
            assert_eq!(ours, theirs, "{q}: Schur({d})");
        }
    }
}

#[test]
fn ext_matches_oracle_on_affine_quivers() {
    let cfg = OracleConfig { prime: 1009, trials: 10, seed: 5 };
    for (q, cap) in cases().into_iter().skip(3) {
        let h = HomExt::new(q.clone());
        let vs: Vec<DimVector> = cap.box_below().collect();
        for a in &vs {
            for b in &vs {
                assert_eq!(h.ext(a, b).unwrap(), oracle::oracle_ext(&q, a, b, &cfg).unwrap(), "{q}: ext({a},{b})");
            }
        }
    }
}

#[test]
fn generic_subs_match_oracle_ext() {
    // a' is a generic sub of a iff ext(a', a - a') = 0
    let cfg = OracleConfig::default();
    for (q, cap) in cases().into_iter().take(4) {
        let h = HomExt::new(q.clone());
        for a in cap.box_below() {
            for sub in a.box_below() {
                let rest = &a - &sub;
                let expected = oracle::oracle_ext(&q, &sub, &rest, &cfg).unwrap() == 0;
                assert_eq!(h.is_generic_sub(&sub, &a).unwrap(), expected, "{q}: {sub} in {a}");
            }
        }
    }
}
