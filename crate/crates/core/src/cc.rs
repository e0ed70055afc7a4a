//! Caldero–Chapoton characters of small representations.
//!
//! `X_M = sum_e chi(Gr_e(M)) prod_i x_i^(-<e, e_i> - <e_i, m - e>)` with
//! `m = dim M`. Euler characteristics come from point counts over several
//! prime fields: the count is a polynomial in `q` of degree at most
//! `sum_v e_v (m_v - e_v)`, which is interpolated and evaluated at `q = 1`.

use num::rational::BigRational;
use num::{BigInt, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine;
use crate::error::{Error, Result};
use crate::homext::{GenSchurRoot, HomExt};
use crate::laurent::LaurentPoly;
use crate::oracle::{self, FpRep};
use crate::quiver::{Quiver, RootType};
use crate::vector::DimVector;

/// Largest total dimension accepted by [`generic_character`].
pub const GENERIC_CHARACTER_GUARD: i64 = 6;
/// Reference prime for detecting bad reductions.
pub const REFERENCE_PRIME: u64 = 1_000_003;
/// Entries of random integer representations lie in `[-ENTRY_RANGE, ENTRY_RANGE]`.
pub const ENTRY_RANGE: i64 = 1000;
pub const DEFAULT_SEEDS: usize = 3;

/// A representation over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZRep {
    quiver: Quiver,
    dim: DimVector,
    matrices: Vec<Vec<Vec<i64>>>,
    seed: Option<u64>,
}

impl ZRep {
    pub fn new(quiver: &Quiver, dim: &DimVector, matrices: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        // shape validation is shared with the prime-field type
        FpRep::from_integer_matrices(quiver, dim, &matrices, 2, 0)?;
        Ok(ZRep { quiver: quiver.clone(), dim: dim.clone(), matrices, seed: None })
    }

    /// Entries uniform in `[-ENTRY_RANGE, ENTRY_RANGE]`; ChaCha8 with one
    /// stream per arrow.
    pub fn random(quiver: &Quiver, dim: &DimVector, seed: u64) -> Result<Self> {
        if dim.len() != quiver.n() {
            return Err(Error::Dimension { expected: quiver.n(), got: dim.len() });
        }
        if !dim.is_nonnegative() {
            return Err(Error::domain(format!("{dim} has negative entries")));
        }
        let matrices = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64);
                (0..dim[t])
                    .map(|_| (0..dim[s]).map(|_| rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE)).collect())
                    .collect()
            })
            .collect();
        Ok(ZRep { quiver: quiver.clone(), dim: dim.clone(), matrices, seed: Some(seed) })
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.matrices
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &ZRep) -> Result<ZRep> {
        if self.quiver != other.quiver {
            return Err(Error::domain("direct sum of representations of different quivers"));
        }
        let dim = &self.dim + &other.dim;
        let matrices = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let (a, b) = (&self.matrices[k], &other.matrices[k]);
                let (ra, ca) = (self.dim[t] as usize, self.dim[s] as usize);
                let mut m = vec![vec![0i64; dim[s] as usize]; dim[t] as usize];
                for i in 0..ra {
                    m[i][..ca].copy_from_slice(&a[i]);
                }
                for (i, row) in b.iter().enumerate() {
                    m[ra + i][ca..].copy_from_slice(row);
                }
                m
            })
            .collect();
        Ok(ZRep { quiver: self.quiver.clone(), dim, matrices, seed: None })
    }

    pub fn reduce(&self, p: u64) -> Result<FpRep> {
        FpRep::from_integer_matrices(&self.quiver, &self.dim, &self.matrices, p, self.seed.unwrap_or(0))
    }
}

/// Euler characteristic of one quiver Grassmannian with its point counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannianChi {
    pub e: DimVector,
    /// `(q, #Gr_e(M)(F_q))`, the last pair being the consistency check.
    pub counts: Vec<(u64, u128)>,
    /// Coefficients of the count polynomial, constant term first.
    pub polynomial: Vec<BigRational>,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCReport {
    pub dim: DimVector,
    pub seed: Option<u64>,
    pub primes_used: Vec<u64>,
    pub primes_skipped: Vec<u64>,
    pub grassmannians: Vec<GrassmannianChi>,
    pub character: LaurentPoly,
}

/// Invariants of a reduction compared against the reference prime.
fn reduction_signature(m: &FpRep) -> Result<(usize, Vec<usize>)> {
    let ranks = m.matrices().iter().map(|a| oracle::rank_mod_p(a, m.prime())).collect();
    Ok((oracle::end_dim(m)?, ranks))
}

/// Newton interpolation through `(x_k, y_k)`; returns monomial coefficients.
fn interpolate(points: &[(u64, u128)]) -> Vec<BigRational> {
    let k = points.len();
    let xs: Vec<BigRational> = points.iter().map(|&(x, _)| BigRational::from_integer(BigInt::from(x))).collect();
    let mut coef: Vec<BigRational> = points.iter().map(|&(_, y)| BigRational::from_integer(BigInt::from(y))).collect();
    for j in 1..k {
        for i in (j..k).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // expand the Newton form into monomials
    let mut poly = vec![BigRational::zero(); k];
    for i in (0..k).rev() {
        // poly = poly * (x - xs[i]) + coef[i]
        let mut next = vec![BigRational::zero(); k];
        for d in 0..k {
            if poly[d].is_zero() {
                continue;
            }
            if d + 1 < k {
                next[d + 1] += &poly[d];
            }
            next[d] -= &poly[d] * &xs[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    poly
}

fn eval_poly(poly: &[BigRational], x: u64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// The Caldero–Chapoton character of an integer representation, counted
/// over small primes at which the reduction keeps the rank of every arrow
/// and the endomorphism dimension seen at [`REFERENCE_PRIME`].
pub fn cc_character(m: &ZRep) -> Result<CCReport> {
    cc_character_from(m, 2)
}

/// [`cc_character`] counting over primes `>= first_prime` only.
pub fn cc_character_from(m: &ZRep, first_prime: u64) -> Result<CCReport> {
    let q = &m.quiver;
    let n = q.n();
    let dim = &m.dim;
    if dim.total() > oracle::GRASSMANNIAN_GUARD {
        return Err(Error::guard(format!(
            "total dimension {} exceeds the counting guard {}",
            dim.total(),
            oracle::GRASSMANNIAN_GUARD
        )));
    }
    let degree = |e: &DimVector| -> usize { (0..n).map(|v| (e[v] * (dim[v] - e[v])) as usize).sum() };
    let max_degree = dim.box_below().map(|e| degree(&e)).max().unwrap_or(0);
    let reference = reduction_signature(&m.reduce(REFERENCE_PRIME)?)?;
    let mut used = Vec::new();
    let mut skipped = Vec::new();
    let mut reps = Vec::new();
    let mut candidate = first_prime.max(2);
    while used.len() < max_degree + 2 {
        if oracle::is_prime(candidate) {
            let r = m.reduce(candidate)?;
            if reduction_signature(&r)? == reference {
                used.push(candidate);
                reps.push(r);
            } else {
                skipped.push(candidate);
            }
        }
        candidate += 1;
        if candidate > first_prime + 10_000 {
            return Err(Error::Genericity(format!("too few good primes for {dim}")));
        }
    }
    let mut grassmannians = Vec::new();
    let mut character = LaurentPoly::zero(n);
    for e in dim.box_below() {
        let need = degree(&e) + 2;
        let counts: Vec<(u64, u128)> = reps[..need]
            .iter()
            .map(|r| Ok((r.prime(), oracle::grassmannian_count(r, &e)?)))
            .collect::<Result<_>>()?;
        let (fit, check) = counts.split_at(need - 1);
        let polynomial = interpolate(fit);
        let (px, py) = check[0];
        if eval_poly(&polynomial, px) != BigRational::from_integer(BigInt::from(py)) {
            return Err(Error::Genericity(format!(
                "point counts of Gr_{e} for {dim} are not polynomial over primes {:?}",
                counts.iter().map(|c| c.0).collect::<Vec<_>>()
            )));
        }
        let chi_q = eval_poly(&polynomial, 1);
        if !chi_q.is_integer() {
            return Err(Error::Genericity(format!("non-integral Euler characteristic {chi_q} for Gr_{e}")));
        }
        let chi = chi_q.to_integer().to_i64().ok_or_else(|| Error::internal("Euler characteristic overflow"))?;
        if chi != 0 {
            let rest = dim - &e;
            let exps = (0..n)
                .map(|i| {
                    let ei = DimVector::unit(n, i);
                    -q.euler_unchecked(&e, &ei) - q.euler_unchecked(&ei, &rest)
                })
                .collect();
            character.add_term(exps, chi);
        }
        grassmannians.push(GrassmannianChi { e, counts, polynomial, chi });
    }
    Ok(CCReport { dim: dim.clone(), seed: m.seed, primes_used: used, primes_skipped: skipped, grassmannians, character })
}

/// The character shared by random representations of dimension `d` for
/// seeds `0..seeds`.
pub fn generic_character(q: &Quiver, d: &DimVector, seeds: usize) -> Result<LaurentPoly> {
    generic_character_seeds(q, d, &(0..seeds as u64).collect::<Vec<_>>())
}

pub fn generic_character_seeds(q: &Quiver, d: &DimVector, seeds: &[u64]) -> Result<LaurentPoly> {
    if d.len() != q.n() {
        return Err(Error::Dimension { expected: q.n(), got: d.len() });
    }
    if d.total() > GENERIC_CHARACTER_GUARD {
        return Err(Error::guard(format!(
            "total dimension {} exceeds the generic character guard {GENERIC_CHARACTER_GUARD}",
            d.total()
        )));
    }
    if seeds.is_empty() {
        return Err(Error::domain("at least one seed is needed"));
    }
    let mut found: Option<LaurentPoly> = None;
    for &s in seeds {
        let x = cc_character(&ZRep::random(q, d, s)?)?.character;
        match &found {
            None => found = Some(x),
            Some(y) if *y == x => {}
            Some(_) => {
                return Err(Error::Genericity(format!("characters of {d} disagree across seeds {seeds:?}")));
            }
        }
    }
    Ok(found.unwrap())
}

/// `x_i` for `-e_i`, the generic character otherwise.
pub fn character_of_root(q: &Quiver, r: &GenSchurRoot, seeds: usize) -> Result<LaurentPoly> {
    match r.kind() {
        crate::homext::RootKind::NegativeSimple(i) => Ok(LaurentPoly::var(q.n(), i)),
        crate::homext::RootKind::Positive => generic_character(q, r.vector(), seeds),
    }
}

/// Both sides of `X_delta X_beta = X_beta1 + X_beta1'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeCheck {
    pub holds: bool,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

/// Tests the affine exchange identity. Every term except `delta` must be
/// rigid: `beta` and `beta1` real Schur roots and `beta1'` a real Schur
/// root or a negative simple.
pub fn verify_affine_exchange(
    q: &Quiver,
    beta: &GenSchurRoot,
    beta1: &GenSchurRoot,
    beta1p: &GenSchurRoot,
    seeds: usize,
) -> Result<ExchangeCheck> {
    let h = HomExt::new(q.clone());
    let dl = affine::delta(q)?;
    let rigid = |r: &GenSchurRoot| -> Result<bool> {
        Ok(r.is_negative() || (q.is_root(r.vector())? == RootType::Real && h.is_schur_root(r.vector())?))
    };
    if beta.is_negative() || !rigid(beta)? || affine::regular_class(q, beta.vector())? != affine::RegularClass::Preprojective {
        return Err(Error::domain(format!("{beta} is not a real preprojective root")));
    }
    for r in [beta1, beta1p] {
        if !rigid(r)? {
            return Err(Error::domain(format!("{r} is not rigid; only the delta term may be non-rigid")));
        }
    }
    let xd = generic_character(q, &dl, seeds)?;
    let lhs = &xd * &character_of_root(q, beta, seeds)?;
    let rhs = &character_of_root(q, beta1, seeds)? + &character_of_root(q, beta1p, seeds)?;
    Ok(ExchangeCheck { holds: lhs == rhs, lhs, rhs })
}
