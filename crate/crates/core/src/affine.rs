//! Structure of affine quivers: `delta`, the preprojective/regular/
//! preinjective trichotomy, exceptional tubes and their interval model,
//! and the component clusters containing `delta`.

use std::fmt;

use crate::clusters::{ComponentCluster, SearchBound};
use crate::error::{Error, Result};
use crate::homext::{GenSchurRoot, HomExt};
use crate::linalg;
use crate::quiver::{Quiver, RootType};
use crate::vector::DimVector;

/// The smallest positive isotropic root of a connected affine quiver.
pub fn delta(q: &Quiver) -> Result<DimVector> {
    if !q.is_affine() {
        return Err(Error::domain("quiver is not connected affine"));
    }
    let null = linalg::integer_nullspace(&q.cartan_matrix(), q.n());
    let [v] = null.as_slice() else {
        return Err(Error::internal(format!("radical of an affine form has rank {}", null.len())));
    };
    let v = DimVector::new(v.clone());
    let v = if v.is_nonnegative() { v } else { -v };
    if !v.is_positive() {
        return Err(Error::internal(format!("radical generator {v} is not of constant sign")));
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegularClass {
    Preprojective,
    Regular,
    Preinjective,
}

impl fmt::Display for RegularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegularClass::Preprojective => "Preprojective",
            RegularClass::Regular => "Regular",
            RegularClass::Preinjective => "Preinjective",
        })
    }
}

/// Class of a positive root `d` by the sign of `<delta, d> = -<d, delta>`:
/// negative for preprojective roots (e.g. projectives, where
/// `<P_i, delta> = delta_i > 0`), positive for preinjective ones.
pub fn regular_class(q: &Quiver, d: &DimVector) -> Result<RegularClass> {
    let dl = delta(q)?;
    match q.is_root(d)? {
        RootType::Real | RootType::Isotropic | RootType::ImaginaryNonIsotropic => {}
        _ => return Err(Error::domain(format!("{d} is not a positive root"))),
    }
    Ok(match q.euler_form(&dl, d)?.signum() {
        -1 => RegularClass::Preprojective,
        0 => RegularClass::Regular,
        _ => RegularClass::Preinjective,
    })
}

/// Vertices `e` with `delta_e = 1`.
pub fn extending_vertices(q: &Quiver) -> Result<Vec<usize>> {
    let d = delta(q)?;
    Ok((0..q.n()).filter(|&i| d[i] == 1).collect())
}

/// An exceptional tube, given by its regular simples `s_0, ..., s_{p-1}`
/// with `s_{k+1} = Phi s_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tube {
    simples: Vec<DimVector>,
    delta: DimVector,
}

impl Tube {
    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn simples(&self) -> &[DimVector] {
        &self.simples
    }

    /// `s_{k mod p}`.
    pub fn simple(&self, k: usize) -> &DimVector {
        &self.simples[k % self.rank()]
    }

    pub fn delta(&self) -> &DimVector {
        &self.delta
    }

    /// All intervals of the tube: every `(start, len)` with `len < p`,
    /// then `[0, p]`, sorted by `(len, start)`.
    pub fn intervals(&self) -> Vec<Interval> {
        let p = self.rank();
        let mut out: Vec<Interval> = (1..p)
            .flat_map(|len| (0..p).map(move |start| Interval { start, end: start + len, rank: p }))
            .collect();
        out.push(Interval::delta(p));
        out
    }
}

/// The exceptional tubes of an affine quiver, sorted by first simple.
///
/// Real regular Schur roots `0 < d < delta` are split into `Phi`-orbits;
/// the orbits summing to `delta` are the regular simples.
pub fn tubes(h: &HomExt) -> Result<Vec<Tube>> {
    let q = h.quiver();
    let dl = delta(q)?;
    let candidates: Vec<DimVector> = dl
        .box_below()
        .filter(|d| !d.is_zero() && d != &dl)
        .filter(|d| q.euler_unchecked(d, d) == 1 && q.euler_unchecked(d, &dl) == 0)
        .filter(|d| h.is_schur_root(d).unwrap_or(false))
        .collect();
    let mut seen = vec![false; candidates.len()];
    let mut out = Vec::new();
    for start in 0..candidates.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![candidates[start].clone()];
        seen[start] = true;
        let mut closed = true;
        loop {
            let next = q.coxeter_apply(orbit.last().unwrap(), 1)?;
            if next == orbit[0] {
                break;
            }
            match candidates.iter().position(|c| c == &next) {
                Some(k) if !seen[k] => {
                    seen[k] = true;
                    orbit.push(next);
                }
                _ => {
                    closed = false;
                    break;
                }
            }
        }
        let mut sum = DimVector::zero(q.n());
        for d in &orbit {
            sum += d;
        }
        if closed && sum == dl {
            // start from the lexicographically smallest simple
            let k = (0..orbit.len()).min_by(|&a, &b| orbit[a].cmp(&orbit[b])).unwrap();
            orbit.rotate_left(k);
            out.push(Tube { simples: orbit, delta: dl.clone() });
        }
    }
    out.sort_by(|a, b| a.simples[0].cmp(&b.simples[0]));
    let excess: usize = out.iter().map(|t| t.rank() - 1).sum();
    if excess != q.n() - 2 {
        return Err(Error::internal(format!(
            "tube ranks give sum(p - 1) = {excess}, expected n - 2 = {}",
            q.n() - 2
        )));
    }
    Ok(out)
}

/// The interval `[start, end]` of a rank-`p` tube: the regular module with
/// composition factors `s_start, ..., s_{end-1}` (indices mod `p`).
///
/// Intervals are kept as integer segments with `start < p` and
/// `1 <= end - start <= p`; the only interval of length `p` is `[0, p]`,
/// which stands for `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    start: usize,
    end: usize,
    rank: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize, rank: usize) -> Result<Self> {
        let ok = rank >= 1 && start < rank && end > start && (end - start < rank || (start == 0 && end == rank));
        if !ok {
            return Err(Error::domain(format!("[{start},{end}] is not an interval of a rank-{rank} tube")));
        }
        Ok(Interval { start, end, rank })
    }

    pub fn delta(rank: usize) -> Self {
        Interval { start: 0, end: rank, rank }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn is_delta(&self) -> bool {
        self.len() == self.rank
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

pub fn root_of_interval(t: &Tube, i: &Interval) -> Result<DimVector> {
    if i.rank != t.rank() {
        return Err(Error::domain(format!("interval {i} belongs to a rank-{} tube", i.rank)));
    }
    let mut sum = DimVector::zero(t.delta.len());
    for k in i.start..i.end {
        sum += t.simple(k);
    }
    Ok(sum)
}

pub fn interval_of_root(t: &Tube, d: &DimVector) -> Result<Interval> {
    for i in t.intervals() {
        if &root_of_interval(t, &i)? == d {
            return Ok(i);
        }
    }
    Err(Error::NotFound(format!("{d} is not a regular root of this tube")))
}

/// Two intervals of the same tube are compatible when, in the universal
/// cover, every translate of one is disjoint from or nested with the
/// other. Segments sharing an endpoint are not disjoint. `delta` is
/// compatible with everything.
pub fn compatible(a: &Interval, b: &Interval) -> bool {
    if a.is_delta() || b.is_delta() {
        return true;
    }
    let p = a.rank as i64;
    let (a0, a1) = (a.start as i64, a.end as i64);
    (-2..=2).all(|k| {
        let (b0, b1) = (b.start as i64 + k * p, b.end as i64 + k * p);
        let disjoint = a1 < b0 || b1 < a0;
        let nested = (a0 <= b0 && b1 <= a1) || (b0 <= a0 && a1 <= b1);
        disjoint || nested
    })
}

/// All maximal sets of pairwise compatible intervals of length `< p`, as
/// root sets. Each has exactly `p - 1` elements.
pub fn maximal_rigid_sets(t: &Tube) -> Result<Vec<Vec<DimVector>>> {
    let ivs: Vec<Interval> = t.intervals().into_iter().filter(|i| !i.is_delta()).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    extend_compatible(&ivs, 0, &mut cur, &mut found);
    let p = t.rank();
    let mut out = Vec::with_capacity(found.len());
    for set in found {
        if set.len() != p - 1 {
            let shown: Vec<String> = set.iter().map(|&k| ivs[k].to_string()).collect();
            return Err(Error::internal(format!(
                "maximal compatible set {} has size {}, expected {}",
                shown.join(" "),
                set.len(),
                p - 1
            )));
        }
        let mut roots = set.iter().map(|&k| root_of_interval(t, &ivs[k])).collect::<Result<Vec<_>>>()?;
        roots.sort();
        out.push(roots);
    }
    out.sort();
    Ok(out)
}

/// Backtracking over intervals in `(len, start)` order; records sets that
/// no interval extends.
fn extend_compatible(ivs: &[Interval], from: usize, cur: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
    let fits = |k: usize, cur: &[usize]| !cur.contains(&k) && cur.iter().all(|&j| compatible(&ivs[j], &ivs[k]));
    if (0..ivs.len()).all(|k| !fits(k, cur)) {
        found.push(cur.clone());
        return;
    }
    for k in from..ivs.len() {
        if fits(k, cur) {
            cur.push(k);
            extend_compatible(ivs, k + 1, cur, found);
            cur.pop();
        }
    }
}

/// Every component cluster containing `delta`: `delta` together with one
/// maximal rigid set per exceptional tube. These are maximal among all
/// Schur roots, since every root orthogonal to `delta` is regular and
/// regular Schur roots lie below `delta`.
pub fn delta_clusters(h: &HomExt) -> Result<Vec<ComponentCluster>> {
    let dl = delta(h.quiver())?;
    let per_tube: Vec<Vec<Vec<DimVector>>> = tubes(h)?.iter().map(maximal_rigid_sets).collect::<Result<_>>()?;
    let bound = SearchBound::new(dl.clone())?;
    let mut combos: Vec<Vec<DimVector>> = vec![vec![dl.clone()]];
    for sets in &per_tube {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                sets.iter().map(move |s| {
                    let mut next = c.clone();
                    next.extend(s.iter().cloned());
                    next
                })
            })
            .collect();
    }
    let mut out = Vec::with_capacity(combos.len());
    for roots in combos {
        let roots: Vec<GenSchurRoot> = roots.into_iter().map(GenSchurRoot::positive_unchecked).collect();
        let c = ComponentCluster::certified(h, roots, bound.clone())?.mark_globally_maximal();
        if c.len() != h.n() - 1 {
            return Err(Error::internal(format!("delta-cluster {c} has size {}", c.len())));
        }
        out.push(c);
    }
    out.sort_by(|a, b| a.roots().cmp(b.roots()));
    Ok(out)
}

/// Rank of the lattice spanned by `roots` and whether it is saturated
/// (all elementary divisors equal 1).
pub fn lattice_rank_purity(roots: &[DimVector]) -> Result<(usize, bool)> {
    if roots.is_empty() {
        return Err(Error::domain("empty root list"));
    }
    let rows: Vec<Vec<i64>> = roots.iter().map(|r| r.entries().to_vec()).collect();
    let divs = linalg::elementary_divisors(&rows);
    Ok((divs.len(), divs.iter().all(|&d| d == 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn v<const N: usize>(x: [i64; N]) -> DimVector {
        DimVector::from(x)
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&catalog::kronecker()).unwrap(), v([1, 1]));
        assert_eq!(delta(&catalog::d4_tilde()).unwrap(), v([2, 1, 1, 1, 1]));
        assert_eq!(delta(&catalog::a2_tilde()).unwrap(), v([1, 1, 1]));
        assert!(matches!(delta(&catalog::linear_a(3)), Err(Error::Domain(_))));
        assert!(matches!(delta(&catalog::generalized_kronecker(3)), Err(Error::Domain(_))));
    }

    #[test]
    fn trichotomy_examples() {
        let k = catalog::kronecker();
        assert_eq!(regular_class(&k, &v([0, 1])).unwrap(), RegularClass::Preprojective);
        assert_eq!(regular_class(&k, &v([1, 1])).unwrap(), RegularClass::Regular);
        assert_eq!(regular_class(&k, &v([1, 0])).unwrap(), RegularClass::Preinjective);
        assert!(regular_class(&k, &v([3, 1])).is_err());
        assert_eq!(extending_vertices(&k).unwrap(), vec![0, 1]);
        assert_eq!(extending_vertices(&catalog::d4_tilde()).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn tube_examples() {
        assert!(tubes(&HomExt::new(catalog::kronecker())).unwrap().is_empty());
        let a2 = tubes(&HomExt::new(catalog::a2_tilde())).unwrap();
        assert_eq!(a2.iter().map(Tube::rank).collect::<Vec<_>>(), vec![2]);
        let d4 = tubes(&HomExt::new(catalog::d4_tilde())).unwrap();
        assert_eq!(d4.iter().map(Tube::rank).collect::<Vec<_>>(), vec![2, 2, 2]);
        let a3 = tubes(&HomExt::new(catalog::a3_tilde_31())).unwrap();
        assert_eq!(a3.iter().map(Tube::rank).collect::<Vec<_>>(), vec![3]);
        for t in a2.iter().chain(&d4).chain(&a3) {
            let q = match t.delta().len() {
                3 => catalog::a2_tilde(),
                4 => catalog::a3_tilde_31(),
                _ => catalog::d4_tilde(),
            };
            for k in 0..t.rank() {
                assert_eq!(&q.coxeter_apply(t.simple(k), 1).unwrap(), t.simple(k + 1));
            }
        }
    }

    #[test]
    fn interval_examples() {
        let h = HomExt::new(catalog::a2_tilde());
        let t = &tubes(&h).unwrap()[0];
        assert_eq!(&root_of_interval(t, &Interval::new(0, 1, 2).unwrap()).unwrap(), t.simple(0));
        assert_eq!(root_of_interval(t, &Interval::delta(2)).unwrap(), v([1, 1, 1]));
        let h3 = HomExt::new(catalog::a3_tilde_31());
        let t3 = &tubes(&h3).unwrap()[0];
        let r = root_of_interval(t3, &Interval::new(1, 3, 3).unwrap()).unwrap();
        assert_eq!(r, t3.simple(1) + t3.simple(2));
        assert!(h3.is_schur_root(&r).unwrap());
        for i in t3.intervals() {
            assert_eq!(interval_of_root(t3, &root_of_interval(t3, &i).unwrap()).unwrap(), i);
        }
        assert!(matches!(interval_of_root(t3, &v([1, 0, 0, 0])), Err(Error::NotFound(_))));
        assert!(Interval::new(1, 4, 3).is_err());
    }

    #[test]
    fn compatibility_examples() {
        let iv = |a, b| Interval::new(a, b, 3).unwrap();
        // s_0 and s_2 = tau s_0 in a rank-3 tube have an extension
        assert!(!compatible(&iv(0, 1), &iv(2, 3)));
        assert!(!compatible(&iv(0, 2), &iv(1, 3)));
        assert!(compatible(&Interval::delta(3), &iv(1, 2)));
        assert!(compatible(&iv(0, 2), &iv(0, 1)));
        assert!(compatible(&iv(0, 1), &iv(1, 2)) == compatible(&iv(1, 2), &iv(0, 1)));
    }

    #[test]
    fn maximal_rigid_set_counts() {
        let t2 = &tubes(&HomExt::new(catalog::a2_tilde())).unwrap()[0];
        let sets = maximal_rigid_sets(t2).unwrap();
        assert_eq!(sets, vec![vec![t2.simple(0).clone()], vec![t2.simple(1).clone()]]);
        let t3 = &tubes(&HomExt::new(catalog::a3_tilde_31())).unwrap()[0];
        let sets = maximal_rigid_sets(t3).unwrap();
        assert_eq!(sets.len(), 6);
        assert!(sets.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn delta_cluster_examples() {
        let k = delta_clusters(&HomExt::new(catalog::kronecker())).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_string(), "{(1,1)}");
        assert_eq!(delta_clusters(&HomExt::new(catalog::a2_tilde())).unwrap().len(), 2);
        let d4 = delta_clusters(&HomExt::new(catalog::d4_tilde())).unwrap();
        assert_eq!(d4.len(), 8);
        assert!(d4.iter().all(|c| c.len() == 4));
    }

    #[test]
    fn purity_examples() {
        let basis: Vec<DimVector> = (0..3).map(|i| DimVector::unit(3, i)).collect();
        assert_eq!(lattice_rank_purity(&basis).unwrap(), (3, true));
        assert_eq!(lattice_rank_purity(&[v([2, 0])]).unwrap(), (1, false));
        assert!(lattice_rank_purity(&[]).is_err());
    }
}
