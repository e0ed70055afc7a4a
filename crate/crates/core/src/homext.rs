//! Generic `hom`/`ext` on dimension vectors, Schur roots and generic
//! decompositions.
//!
//! `ext(a, b)` is computed with Schofield's recursion: it is the maximum of
//! `-<a', b>` over generic subdimension vectors `a'` of `a`, and `a'` is a
//! generic subdimension vector of `a` exactly when `ext(a', a - a') = 0`.
//! A positive vector `d` is a Schur root iff `<a', d> - <d, a'> > 0` for
//! every generic subdimension vector `0 < a' < d`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::vector::DimVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    Positive,
    /// `-e_i`, 0-based `i`.
    NegativeSimple(usize),
}

/// A positive Schur root or a negative simple root `-e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenSchurRoot {
    vector: DimVector,
    kind: RootKind,
}

impl GenSchurRoot {
    pub fn negative(n: usize, i: usize) -> Self {
        GenSchurRoot { vector: -DimVector::unit(n, i), kind: RootKind::NegativeSimple(i) }
    }

    /// Wraps a positive vector without testing the Schur property. Use
    /// [`HomExt::schur_root`] for a checked constructor.
    pub fn positive_unchecked(v: DimVector) -> Self {
        GenSchurRoot { vector: v, kind: RootKind::Positive }
    }

    pub fn vector(&self) -> &DimVector {
        &self.vector
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn is_negative(&self) -> bool {
        matches!(self.kind, RootKind::NegativeSimple(_))
    }

    /// Parses `(1,2)`, `1,2` or `-e_i` (1-based `i`) for a quiver with `n`
    /// vertices. Does not test the Schur property of positive vectors.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if let Some(idx) = t.strip_prefix("-e_").or_else(|| t.strip_prefix("-e")) {
            let i: usize = idx.parse().map_err(|_| Error::Parse { line: 0, msg: format!("bad root {t:?}") })?;
            if i == 0 || i > n {
                return Err(Error::VertexOutOfRange(i));
            }
            return Ok(GenSchurRoot::negative(n, i - 1));
        }
        let v: DimVector = t.parse()?;
        if v.len() != n {
            return Err(Error::Dimension { expected: n, got: v.len() });
        }
        if let Some(i) = v.as_negative_simple() {
            return Ok(GenSchurRoot::negative(n, i));
        }
        if !v.is_positive() {
            return Err(Error::domain(format!("{v} is neither positive nor a negative simple root")));
        }
        Ok(GenSchurRoot::positive_unchecked(v))
    }
}

/// Positive roots first, in lexicographic order of entries; then negative
/// simple roots by vertex.
impl Ord for GenSchurRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.kind, other.kind) {
            (RootKind::Positive, RootKind::Positive) => self.vector.cmp(&other.vector),
            (RootKind::Positive, RootKind::NegativeSimple(_)) => Ordering::Less,
            (RootKind::NegativeSimple(_), RootKind::Positive) => Ordering::Greater,
            (RootKind::NegativeSimple(i), RootKind::NegativeSimple(j)) => i.cmp(&j),
        }
    }
}

impl PartialOrd for GenSchurRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenSchurRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RootKind::Positive => write!(f, "{}", self.vector),
            RootKind::NegativeSimple(i) => write!(f, "-e_{}", i + 1),
        }
    }
}

/// Kac's generic decomposition of an integer vector, with negative
/// coordinates contributing copies of `-e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericDecomposition {
    input: DimVector,
    summands: Vec<GenSchurRoot>,
}

impl GenericDecomposition {
    pub fn input(&self) -> &DimVector {
        &self.input
    }

    /// Summands in sorted order.
    pub fn summands(&self) -> &[GenSchurRoot] {
        &self.summands
    }
}

impl fmt::Display for GenericDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (k, s) in self.summands.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

pub const DEFAULT_DECOMPOSITION_GUARD: i64 = 64;

/// Memoizing session for generic homological computations on one quiver.
///
/// The caches behave as pure function caches, so a shared `HomExt` can be
/// used from several threads.
#[derive(Debug)]
pub struct HomExt {
    quiver: Quiver,
    decomposition_guard: i64,
    sub_memo: RwLock<HashMap<(DimVector, DimVector), bool>>,
    ext_memo: RwLock<HashMap<(DimVector, DimVector), i64>>,
    schur_memo: RwLock<HashMap<DimVector, bool>>,
}

impl Clone for HomExt {
    fn clone(&self) -> Self {
        HomExt::new(self.quiver.clone()).with_decomposition_guard(self.decomposition_guard)
    }
}

impl HomExt {
    pub fn new(quiver: Quiver) -> Self {
        HomExt {
            quiver,
            decomposition_guard: DEFAULT_DECOMPOSITION_GUARD,
            sub_memo: RwLock::default(),
            ext_memo: RwLock::default(),
            schur_memo: RwLock::default(),
        }
    }

    /// Maximal `l1` norm accepted by [`HomExt::generic_decomposition`].
    pub fn with_decomposition_guard(mut self, guard: i64) -> Self {
        self.decomposition_guard = guard;
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn clear_cache(&self) {
        self.sub_memo.write().unwrap().clear();
        self.ext_memo.write().unwrap().clear();
        self.schur_memo.write().unwrap().clear();
    }

    /// Number of cached entries across all tables.
    pub fn cache_len(&self) -> usize {
        self.sub_memo.read().unwrap().len()
            + self.ext_memo.read().unwrap().len()
            + self.schur_memo.read().unwrap().len()
    }

    fn check_nonneg(&self, v: &DimVector) -> Result<()> {
        self.quiver.check(v)?;
        if !v.is_nonnegative() {
            return Err(Error::domain(format!("{v} has negative entries")));
        }
        Ok(())
    }

    /// Generic dimension of `Ext^1(M, N)` for `M`, `N` of dimension `a`, `b`.
    pub fn ext(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check_nonneg(a)?;
        self.check_nonneg(b)?;
        Ok(self.ext_raw(a, b))
    }

    /// Generic dimension of `Hom(M, N)`; equals `<a,b> + ext(a,b)`.
    pub fn hom(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        let e = self.ext(a, b)?;
        let h = self.quiver.euler_unchecked(a, b) + e;
        if h < 0 {
            return Err(Error::internal(format!("negative hom({a}, {b}) = {h}")));
        }
        Ok(h)
    }

    /// Whether a general representation of dimension `a` has a
    /// subrepresentation of dimension `sub`.
    pub fn is_generic_sub(&self, sub: &DimVector, a: &DimVector) -> Result<bool> {
        self.check_nonneg(sub)?;
        self.check_nonneg(a)?;
        if !sub.le(a) {
            return Err(Error::domain(format!("{sub} is not below {a}")));
        }
        Ok(self.generic_sub_raw(sub, a))
    }

    fn generic_sub_raw(&self, sub: &DimVector, a: &DimVector) -> bool {
        if sub.is_zero() || sub == a {
            return true;
        }
        let key = (sub.clone(), a.clone());
        if let Some(&hit) = self.sub_memo.read().unwrap().get(&key) {
            return hit;
        }
        let quotient = a - sub;
        let result = self.ext_raw(sub, &quotient) == 0;
        self.sub_memo.write().unwrap().insert(key, result);
        result
    }

    fn ext_raw(&self, a: &DimVector, b: &DimVector) -> i64 {
        if a.is_zero() || b.is_zero() {
            return 0;
        }
        let key = (a.clone(), b.clone());
        if let Some(&hit) = self.ext_memo.read().unwrap().get(&key) {
            return hit;
        }
        // Candidates in decreasing order of -<a', b>; the first generic
        // subdimension vector attains the maximum. a' = 0 gives 0.
        let mut candidates: Vec<(i64, DimVector)> = a
            .box_below()
            .filter(|s| !s.is_zero())
            .map(|s| (-self.quiver.euler_unchecked(&s, b), s))
            .filter(|(val, _)| *val > 0)
            .collect();
        candidates.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
        let result = candidates
            .into_iter()
            .find(|(_, s)| self.generic_sub_raw(s, a))
            .map_or(0, |(val, _)| val);
        self.ext_memo.write().unwrap().insert(key, result);
        result
    }

    /// Whether `d` (positive, nonzero) is a Schur root.
    pub fn is_schur_root(&self, d: &DimVector) -> Result<bool> {
        self.check_nonneg(d)?;
        if d.is_zero() {
            return Err(Error::domain("the zero vector is not a root"));
        }
        Ok(self.schur_raw(d))
    }

    fn schur_raw(&self, d: &DimVector) -> bool {
        if let Some(&hit) = self.schur_memo.read().unwrap().get(d) {
            return hit;
        }
        let q = &self.quiver;
        let result = q.support_connected(d).unwrap_or(false)
            && d.box_below().filter(|s| !s.is_zero() && s != d).all(|s| {
                // cheap test first: only generic subs can violate
                q.euler_unchecked(&s, d) - q.euler_unchecked(d, &s) > 0 || !self.generic_sub_raw(&s, d)
            });
        self.schur_memo.write().unwrap().insert(d.clone(), result);
        result
    }

    /// Checked constructor for a generalized Schur root.
    pub fn schur_root(&self, v: &DimVector) -> Result<GenSchurRoot> {
        self.quiver.check(v)?;
        if let Some(i) = v.as_negative_simple() {
            return Ok(GenSchurRoot::negative(self.n(), i));
        }
        if v.is_positive() && self.schur_raw(v) {
            return Ok(GenSchurRoot::positive_unchecked(v.clone()));
        }
        Err(Error::domain(format!("{v} is not a generalized Schur root")))
    }

    /// Ext-orthogonality of generalized Schur roots. Two positive roots
    /// need vanishing generic ext in both directions; `-e_i` is orthogonal
    /// to a positive `d` iff `d_i = 0`; negative roots are pairwise
    /// orthogonal.
    pub fn ext_orthogonal(&self, a: &GenSchurRoot, b: &GenSchurRoot) -> bool {
        match (a.kind, b.kind) {
            (RootKind::NegativeSimple(_), RootKind::NegativeSimple(_)) => true,
            (RootKind::NegativeSimple(i), RootKind::Positive) => b.vector[i] == 0,
            (RootKind::Positive, RootKind::NegativeSimple(i)) => a.vector[i] == 0,
            (RootKind::Positive, RootKind::Positive) => {
                self.ext_raw(&a.vector, &b.vector) == 0 && self.ext_raw(&b.vector, &a.vector) == 0
            }
        }
    }

    /// The generic decomposition of any integer vector.
    pub fn generic_decomposition(&self, v: &DimVector) -> Result<GenericDecomposition> {
        self.quiver.check(v)?;
        if v.l1() > self.decomposition_guard {
            return Err(Error::guard(format!(
                "|{v}|_1 = {} exceeds the decomposition guard {}",
                v.l1(),
                self.decomposition_guard
            )));
        }
        let n = self.n();
        let mut summands = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            for _ in 0..(-x).max(0) {
                summands.push(GenSchurRoot::negative(n, i));
            }
        }
        let pos = v.positive_part();
        let mut chosen = Vec::new();
        if !self.decompose_dfs(&pos, None, &mut chosen) {
            return Err(Error::internal(format!("no certified generic decomposition found for {v}")));
        }
        summands.extend(chosen.into_iter().map(GenSchurRoot::positive_unchecked));
        summands.sort();
        let dec = GenericDecomposition { input: v.clone(), summands };
        self.certify(&dec)?;
        Ok(dec)
    }

    /// DFS over Schur summands in non-increasing lexicographic order.
    fn decompose_dfs(&self, rest: &DimVector, last: Option<&DimVector>, chosen: &mut Vec<DimVector>) -> bool {
        if rest.is_zero() {
            return true;
        }
        let mut cands: Vec<DimVector> = rest
            .box_below()
            .filter(|s| !s.is_zero() && last.is_none_or(|l| s <= l))
            .collect();
        cands.reverse();
        for s in cands {
            if !self.schur_raw(&s) {
                continue;
            }
            let ok = chosen
                .iter()
                .all(|c| self.ext_raw(c, &s) == 0 && self.ext_raw(&s, c) == 0);
            if !ok {
                continue;
            }
            let next = rest - &s;
            chosen.push(s.clone());
            if self.decompose_dfs(&next, Some(&s), chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Re-verifies a decomposition: the summands add up, every positive
    /// summand is Schur, and summands are pairwise ext-orthogonal.
    pub fn certify(&self, dec: &GenericDecomposition) -> Result<()> {
        let mut sum = DimVector::zero(self.n());
        for s in &dec.summands {
            sum += s.vector();
        }
        if &sum != dec.input() {
            return Err(Error::internal(format!("summands of {} add up to {sum}", dec.input())));
        }
        for s in &dec.summands {
            if !s.is_negative() && !self.schur_raw(s.vector()) {
                return Err(Error::internal(format!("summand {s} is not a Schur root")));
            }
        }
        for (i, a) in dec.summands.iter().enumerate() {
            for b in &dec.summands[i + 1..] {
                if !self.ext_orthogonal(a, b) {
                    return Err(Error::internal(format!("summands {a} and {b} are not ext-orthogonal")));
                }
            }
        }
        Ok(())
    }
}
