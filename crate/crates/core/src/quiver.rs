//! Acyclic quivers and the representation-free combinatorics of their root
//! systems: Euler and Tits forms, simple reflections, the fundamental set,
//! the Coxeter transformation and the Dynkin/affine/wild trichotomy.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::vector::DimVector;

/// A finite quiver without oriented cycles. Vertices are `0..n` internally
/// and `1..=n` in all text I/O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    /// arrow multiplicities `counts[s][t]`
    counts: Vec<Vec<i64>>,
    /// Euler matrix, `<a,b> = a^T E b`
    euler: Vec<Vec<i64>>,
    /// `E^{-1}`: number of paths `i -> j`
    paths: Vec<Vec<i64>>,
    coxeter: Vec<Vec<i64>>,
    coxeter_inv: Vec<Vec<i64>>,
    topo: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuiverClass {
    Dynkin,
    Affine,
    Wild,
}

impl fmt::Display for QuiverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuiverClass::Dynkin => "Dynkin",
            QuiverClass::Affine => "Affine",
            QuiverClass::Wild => "Wild",
        };
        f.write_str(s)
    }
}

/// A connected component of the underlying graph with its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub vertices: Vec<usize>,
    pub class: QuiverClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    Real,
    Isotropic,
    ImaginaryNonIsotropic,
    NotARoot,
    NegativeSimple,
}

impl RootType {
    pub fn is_root(self) -> bool {
        !matches!(self, RootType::NotARoot)
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::Real => "Real",
            RootType::Isotropic => "Isotropic",
            RootType::ImaginaryNonIsotropic => "ImaginaryNonIsotropic",
            RootType::NotARoot => "NotARoot",
            RootType::NegativeSimple => "NegativeSimple",
        };
        f.write_str(s)
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

impl Quiver {
    /// Builds a quiver on `n` vertices from 0-based arrows. Loops, vertices
    /// out of range and oriented cycles are rejected.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a quiver needs at least one vertex"));
        }
        let mut counts = vec![vec![0i64; n]; n];
        for &(s, t) in &arrows {
            if s >= n {
                return Err(Error::VertexOutOfRange(s + 1));
            }
            if t >= n {
                return Err(Error::VertexOutOfRange(t + 1));
            }
            if s == t {
                return Err(Error::domain(format!("loop at vertex {}", s + 1)));
            }
            counts[s][t] += 1;
        }
        let topo = topological_order(n, &counts)
            .ok_or_else(|| Error::domain("quiver has an oriented cycle"))?;

        let euler: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j) - counts[i][j]).collect())
            .collect();
        // E = I - A with A nilpotent, so E^{-1} = sum of powers of A.
        let mut paths: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut power = paths.clone();
        for _ in 1..n {
            power = mat_mul(&power, &counts);
            if power.iter().all(|r| r.iter().all(|&x| x == 0)) {
                break;
            }
            for i in 0..n {
                for j in 0..n {
                    paths[i][j] += power[i][j];
                }
            }
        }
        let neg = |m: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
        };
        let coxeter = neg(mat_mul(&transpose(&paths), &euler));
        let coxeter_inv = neg(mat_mul(&paths, &transpose(&euler)));

        Ok(Quiver { n, arrows, counts, euler, paths, coxeter, coxeter_inv, topo })
    }

    /// Parses the text format: `vertices N`, then `arrow S T` lines with
    /// 1-based indices. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut arrows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: lineno + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["vertices", k] => {
                    if n.is_some() {
                        return Err(perr("duplicate `vertices` line".into()));
                    }
                    let k: usize = k.parse().map_err(|_| perr(format!("bad vertex count {k:?}")))?;
                    if k == 0 {
                        return Err(perr("vertex count must be positive".into()));
                    }
                    n = Some(k);
                }
                ["arrow", s, t] => {
                    let Some(k) = n else {
                        return Err(perr("`arrow` before `vertices`".into()));
                    };
                    let parse_v = |x: &str| -> Result<usize> {
                        let v: usize = x.parse().map_err(|_| perr(format!("bad vertex {x:?}")))?;
                        if v == 0 || v > k {
                            return Err(perr(format!("vertex {v} out of range 1..={k}")));
                        }
                        Ok(v - 1)
                    };
                    let (s, t) = (parse_v(s)?, parse_v(t)?);
                    if s == t {
                        return Err(perr(format!("loop at vertex {}", s + 1)));
                    }
                    arrows.push((s, t));
                }
                _ => return Err(perr(format!("unrecognized line {line:?}"))),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing `vertices` line".into() })?;
        Quiver::new(n, arrows)
    }

    /// Inverse of [`Quiver::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n);
        for &(a, b) in &self.arrows {
            s.push_str(&format!("arrow {} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of arrows `s -> t`.
    pub fn arrow_count(&self, s: usize, t: usize) -> i64 {
        self.counts[s][t]
    }

    /// A topological order of the vertices (sources first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn euler_matrix(&self) -> &[Vec<i64>] {
        &self.euler
    }

    pub fn coxeter_matrix(&self) -> &[Vec<i64>] {
        &self.coxeter
    }

    /// Gram matrix of the symmetrized Euler form.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.euler[i][j] + self.euler[j][i]).collect())
            .collect()
    }

    pub(crate) fn check(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: v.len() });
        }
        Ok(())
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange(i + 1));
        }
        Ok(())
    }

    /// `<a,b> = sum a_i b_i - sum over arrows f of a_{s(f)} b_{t(f)}`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.euler_unchecked(a, b))
    }

    pub(crate) fn euler_unchecked(&self, a: &DimVector, b: &DimVector) -> i64 {
        let mut s: i64 = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
        for &(src, tgt) in &self.arrows {
            s -= a[src] * b[tgt];
        }
        s
    }

    /// `(a,b) = <a,b> + <b,a>`.
    pub fn sym_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        Ok(self.euler_form(a, b)? + self.euler_form(b, a)?)
    }

    /// `(a, e_i)` without allocating.
    fn sym_with_simple(&self, a: &DimVector, i: usize) -> i64 {
        let mut s = 2 * a[i];
        for j in 0..self.n {
            s -= (self.counts[i][j] + self.counts[j][i]) * a[j];
        }
        s
    }

    /// Tits form `q(a) = <a,a>`.
    pub fn tits_form(&self, a: &DimVector) -> Result<i64> {
        self.euler_form(a, a)
    }

    /// Simple reflection `s_i(a) = a - (a, e_i) e_i`.
    pub fn reflect(&self, a: &DimVector, i: usize) -> Result<DimVector> {
        self.check(a)?;
        self.check_vertex(i)?;
        let mut out = a.clone();
        out[i] -= self.sym_with_simple(a, i);
        Ok(out)
    }

    /// Applies the reflections of `word` in order (first element first).
    pub fn apply_word(&self, a: &DimVector, word: &[usize]) -> Result<DimVector> {
        word.iter().try_fold(a.clone(), |acc, &i| self.reflect(&acc, i))
    }

    /// `(a, e_i) <= 0` for all `i` and connected support.
    pub fn is_fundamental(&self, a: &DimVector) -> Result<bool> {
        self.check(a)?;
        if !a.is_positive() {
            return Ok(false);
        }
        let nonpositive = (0..self.n).all(|i| self.sym_with_simple(a, i) <= 0);
        Ok(nonpositive && self.support_connected(a)?)
    }

    /// Null-cone `{ i : (e_i, a) = 0 }`.
    pub fn null_cone(&self, a: &DimVector) -> Result<Vec<usize>> {
        self.check(a)?;
        Ok((0..self.n).filter(|&i| self.sym_with_simple(a, i) == 0).collect())
    }

    pub fn support(a: &DimVector) -> Vec<usize> {
        a.support()
    }

    /// Whether the full subquiver on `supp(a)` is connected (the empty
    /// support counts as disconnected).
    pub fn support_connected(&self, a: &DimVector) -> Result<bool> {
        self.check(a)?;
        let s = a.support();
        Ok(!s.is_empty() && self.components_of(&s).len() == 1)
    }

    /// Connected components (of the underlying graph) of the full
    /// subquiver on `vertices`.
    pub fn components_of(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &v in &set {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = vec![];
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &set {
                    if !seen.contains(&y) && (self.counts[x][y] > 0 || self.counts[y][x] > 0) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Reflects a positive imaginary root into the fundamental set. Returns
    /// the reflection word (in application order) and the fundamental root.
    pub fn to_fundamental(&self, a: &DimVector) -> Result<(Vec<usize>, DimVector)> {
        self.check(a)?;
        if !a.is_positive() {
            return Err(Error::domain(format!("{a} is not a positive vector")));
        }
        if self.euler_unchecked(a, a) > 0 {
            return Err(Error::domain(format!("{a} has q > 0 and is not imaginary")));
        }
        let cap = 10 * self.n as i64 * a.l1();
        let mut cur = a.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.n).find(|&i| self.sym_with_simple(&cur, i) > 0) {
            cur[i] -= self.sym_with_simple(&cur, i);
            word.push(i);
            if cur[i] < 0 {
                return Err(Error::domain(format!("{a} is not a positive imaginary root")));
            }
            if word.len() as i64 > cap {
                return Err(Error::internal(format!(
                    "to_fundamental({a}) exceeded {cap} reflections; last vector {cur}, word length {}",
                    word.len()
                )));
            }
        }
        if !self.support_connected(&cur)? {
            return Err(Error::domain(format!(
                "{a} reflects to {cur} with disconnected support; not a root"
            )));
        }
        Ok((word, cur))
    }

    /// Applies `Phi^k` with `Phi = -E^{-T} E`; negative `k` uses the inverse.
    ///
    /// With the Euler form convention used here, `Phi` sends the dimension
    /// vector of a non-injective indecomposable `M` to that of `tau^{-1} M`.
    pub fn coxeter_apply(&self, a: &DimVector, k: i64) -> Result<DimVector> {
        self.check(a)?;
        let m = if k >= 0 { &self.coxeter } else { &self.coxeter_inv };
        let mut v = a.entries().to_vec();
        for _ in 0..k.unsigned_abs() {
            v = mat_vec(m, &v);
        }
        Ok(DimVector::new(v))
    }

    /// Dimension vector of the indecomposable projective at `i`.
    pub fn projective(&self, i: usize) -> DimVector {
        DimVector::new(self.paths[i].clone())
    }

    /// Dimension vector of the indecomposable injective at `i`.
    pub fn injective(&self, i: usize) -> DimVector {
        DimVector::new((0..self.n).map(|j| self.paths[j][i]).collect())
    }

    /// Type of each connected component of the underlying graph.
    pub fn classify(&self) -> Vec<ComponentClass> {
        let all: Vec<usize> = (0..self.n).collect();
        self.components_of(&all)
            .into_iter()
            .map(|vertices| {
                let class = self.class_of(&vertices);
                ComponentClass { vertices, class }
            })
            .collect()
    }

    /// Type of the full subquiver on `vertices`, which is assumed
    /// connected.
    pub fn class_of(&self, vertices: &[usize]) -> QuiverClass {
        let c = self.cartan_matrix();
        let sub: Vec<Vec<i64>> = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| c[i][j]).collect())
            .collect();
        match linalg::psd_radical_dim(&sub) {
            Some(0) => QuiverClass::Dynkin,
            Some(1) => QuiverClass::Affine,
            _ => QuiverClass::Wild,
        }
    }

    /// Connected and affine.
    pub fn is_affine(&self) -> bool {
        matches!(self.classify().as_slice(), [c] if c.class == QuiverClass::Affine)
    }

    /// Root test via Weyl-group descent.
    ///
    /// A positive vector is reflected at the smallest vertex `i` with
    /// `(d, e_i) > 0` until it reaches a simple root (real), lands in the
    /// fundamental set (imaginary), or leaves the positive cone (not a root).
    pub fn is_root(&self, d: &DimVector) -> Result<RootType> {
        self.check(d)?;
        if d.as_negative_simple().is_some() {
            return Ok(RootType::NegativeSimple);
        }
        if !d.is_positive() {
            return Ok(RootType::NotARoot);
        }
        let q = self.euler_unchecked(d, d);
        if q > 1 {
            return Ok(RootType::NotARoot);
        }
        let mut cur = d.clone();
        loop {
            if cur.as_simple().is_some() {
                return Ok(if q == 1 { RootType::Real } else { RootType::NotARoot });
            }
            match (0..self.n).find(|&i| self.sym_with_simple(&cur, i) > 0) {
                Some(i) => {
                    cur[i] -= self.sym_with_simple(&cur, i);
                    if cur[i] < 0 {
                        return Ok(RootType::NotARoot);
                    }
                }
                None => {
                    if !self.support_connected(&cur)? {
                        return Ok(RootType::NotARoot);
                    }
                    return Ok(match q {
                        0 => RootType::Isotropic,
                        q if q < 0 => RootType::ImaginaryNonIsotropic,
                        _ => RootType::NotARoot,
                    });
                }
            }
        }
    }

    /// Full subquiver on `vertices`, relabelled `0..k` in increasing order
    /// of the original indices.
    pub fn subquiver(&self, vertices: &[usize]) -> Result<Quiver> {
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            self.check_vertex(v)?;
        }
        let pos = |v: usize| vs.iter().position(|&x| x == v);
        let arrows = self
            .arrows
            .iter()
            .filter_map(|&(s, t)| Some((pos(s)?, pos(t)?)))
            .collect();
        Quiver::new(vs.len(), arrows)
    }

    /// `S` and `T` are disjoint and no arrow joins them.
    pub fn totally_disconnected(&self, s: &[usize], t: &[usize]) -> bool {
        s.iter().all(|&a| {
            t.iter().all(|&b| a != b && self.counts[a][b] == 0 && self.counts[b][a] == 0)
        })
    }

    /// Vertices outside `set` joined to it by at least one arrow.
    pub fn neighbours_of(&self, set: &[usize]) -> Vec<usize> {
        (0..self.n)
            .filter(|v| !set.contains(v))
            .filter(|&v| set.iter().any(|&s| self.counts[s][v] > 0 || self.counts[v][s] > 0))
            .collect()
    }
}

fn topological_order(n: usize, counts: &[Vec<i64>]) -> Option<Vec<usize>> {
    let mut indeg: Vec<i64> = (0..n).map(|j| (0..n).map(|i| counts[i][j]).sum()).collect();
    let mut order = Vec::with_capacity(n);
    let mut ready: BTreeSet<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for w in 0..n {
            if counts[v][w] > 0 {
                indeg[w] -= counts[v][w];
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
