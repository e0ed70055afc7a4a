//! Brute-force checks over prime fields: random representations, exact
//! `Hom` dimensions and quiver Grassmannian point counts.
//!
//! Random entries come from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(seed)` and one stream per arrow index, so a sample is a
//! pure function of `(quiver, d, p, seed)`.

#![allow(clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::vector::DimVector;

pub const DEFAULT_PRIME: u64 = 1009;
pub const DEFAULT_TRIALS: usize = 25;
/// Hard cap on the total dimension accepted by [`grassmannian_count`].
pub const GRASSMANNIAN_GUARD: i64 = 8;

/// Matrix over `F_p`, row-major.
pub type FpMatrix = Vec<Vec<u64>>;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The first `count` primes that are at least `start`.
pub fn primes_from(start: u64, count: usize) -> Vec<u64> {
    (start.max(2)..).filter(|&p| is_prime(p)).take(count).collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduces `rows` to reduced row echelon form in place and drops zero rows.
/// Returns the pivot columns.
fn rref(rows: &mut FpMatrix, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a matrix over `F_p`.
pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, p).len()
}

/// A representation over `F_p`: one `d_t x d_s` matrix per arrow `s -> t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpRep {
    quiver: Quiver,
    dim: DimVector,
    matrices: Vec<FpMatrix>,
    prime: u64,
    seed: u64,
}

impl FpRep {
    /// Reduces integer matrices mod `p`. `seed` is recorded only.
    pub fn from_integer_matrices(
        quiver: &Quiver,
        dim: &DimVector,
        matrices: &[Vec<Vec<i64>>],
        p: u64,
        seed: u64,
    ) -> Result<Self> {
        check_dim(quiver, dim)?;
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if matrices.len() != quiver.arrows().len() {
            return Err(Error::Dimension { expected: quiver.arrows().len(), got: matrices.len() });
        }
        let mut out = Vec::with_capacity(matrices.len());
        for (&(s, t), m) in quiver.arrows().iter().zip(matrices) {
            let (rows, cols) = (dim[t] as usize, dim[s] as usize);
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(Error::domain(format!("matrix for arrow {}->{} must be {rows}x{cols}", s + 1, t + 1)));
            }
            out.push(m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect());
        }
        Ok(FpRep { quiver: quiver.clone(), dim: dim.clone(), matrices: out, prime: p, seed })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    /// Matrices in the quiver's arrow order.
    pub fn matrices(&self) -> &[FpMatrix] {
        &self.matrices
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn d(&self, v: usize) -> usize {
        self.dim[v] as usize
    }
}

fn check_dim(q: &Quiver, d: &DimVector) -> Result<()> {
    if d.len() != q.n() {
        return Err(Error::Dimension { expected: q.n(), got: d.len() });
    }
    if !d.is_nonnegative() {
        return Err(Error::domain(format!("{d} has negative entries")));
    }
    Ok(())
}

/// A uniformly random representation of dimension `d` over `F_p`.
pub fn sample_rep(q: &Quiver, d: &DimVector, p: u64, seed: u64) -> Result<FpRep> {
    check_dim(q, d)?;
    if p < 101 || !is_prime(p) {
        return Err(Error::domain(format!("sampling needs a prime >= 101, got {p}")));
    }
    let matrices = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            (0..d[t])
                .map(|_| (0..d[s]).map(|_| rng.gen_range(0..p)).collect())
                .collect()
        })
        .collect();
    Ok(FpRep { quiver: q.clone(), dim: d.clone(), matrices, prime: p, seed })
}

fn same_setting(m: &FpRep, n: &FpRep) -> Result<()> {
    if m.prime != n.prime {
        return Err(Error::domain(format!("prime mismatch: {} vs {}", m.prime, n.prime)));
    }
    if m.quiver != n.quiver {
        return Err(Error::domain("representations of different quivers"));
    }
    Ok(())
}

/// `dim Hom(M, N)`: the solution space of `f_t M_a = N_a f_s` over all arrows.
pub fn hom_dim(m: &FpRep, n: &FpRep) -> Result<usize> {
    same_setting(m, n)?;
    let p = m.prime;
    let q = &m.quiver;
    // unknown f_v is an n_v x m_v block
    let mut offset = vec![0usize; q.n() + 1];
    for v in 0..q.n() {
        offset[v + 1] = offset[v] + n.d(v) * m.d(v);
    }
    let unknowns = offset[q.n()];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.d(v) + j;
    let mut rows: FpMatrix = Vec::new();
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        let (ma, na) = (&m.matrices[k], &n.matrices[k]);
        for i in 0..n.d(t) {
            for j in 0..m.d(s) {
                let mut row = vec![0u64; unknowns];
                for l in 0..m.d(t) {
                    let c = var(t, i, l);
                    row[c] = (row[c] + ma[l][j]) % p;
                }
                for l in 0..n.d(s) {
                    let c = var(s, l, j);
                    row[c] = (row[c] + p - na[i][l]) % p;
                }
                rows.push(row);
            }
        }
    }
    Ok(unknowns - rank_mod_p(&rows, p))
}

pub fn end_dim(m: &FpRep) -> Result<usize> {
    hom_dim(m, m)
}

/// Prime, number of trials and base seed for generic-value estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { prime: DEFAULT_PRIME, trials: DEFAULT_TRIALS, seed: 0 }
    }
}

impl OracleConfig {
    /// Seed for trial `trial`, role `role` (0 for the first module, 1 for
    /// the second), via the splitmix64 finalizer.
    pub fn trial_seed(&self, trial: usize, role: u64) -> u64 {
        let mut z = self
            .seed
            .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(2 * trial as u64 + role + 1));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::domain("at least one trial is needed"));
        }
        Ok(())
    }
}

/// Minimum over trials of `hom(M, N) - <a, b>` for random `M`, `N`.
pub fn oracle_ext(q: &Quiver, a: &DimVector, b: &DimVector, cfg: &OracleConfig) -> Result<i64> {
    Ok(oracle_hom(q, a, b, cfg)? - q.euler_form(a, b)?)
}

/// Minimum over trials of `hom(M, N)` for random `M`, `N`.
pub fn oracle_hom(q: &Quiver, a: &DimVector, b: &DimVector, cfg: &OracleConfig) -> Result<i64> {
    cfg.check()?;
    let mut best = i64::MAX;
    for t in 0..cfg.trials {
        let m = sample_rep(q, a, cfg.prime, cfg.trial_seed(t, 0))?;
        let n = sample_rep(q, b, cfg.prime, cfg.trial_seed(t, 1))?;
        best = best.min(hom_dim(&m, &n)? as i64);
    }
    Ok(best)
}

/// Minimum over trials of `dim End(M)`.
pub fn oracle_end(q: &Quiver, d: &DimVector, cfg: &OracleConfig) -> Result<i64> {
    cfg.check()?;
    let mut best = i64::MAX;
    for t in 0..cfg.trials {
        let m = sample_rep(q, d, cfg.prime, cfg.trial_seed(t, 0))?;
        best = best.min(end_dim(&m)? as i64);
    }
    Ok(best)
}

pub fn oracle_is_schur(q: &Quiver, d: &DimVector, cfg: &OracleConfig) -> Result<bool> {
    Ok(oracle_end(q, d, cfg)? == 1)
}

/// Calls `f` with a basis (as rows) of every `r`-dimensional subspace of
/// `F_p^k`, each given by its reduced row echelon form.
pub fn for_each_subspace(k: usize, r: usize, p: u64, f: &mut dyn FnMut(&FpMatrix)) {
    if r > k {
        return;
    }
    let mut pivots = Vec::with_capacity(r);
    choose_pivots(k, r, 0, &mut pivots, p, f);
}

fn choose_pivots(k: usize, r: usize, from: usize, pivots: &mut Vec<usize>, p: u64, f: &mut dyn FnMut(&FpMatrix)) {
    if pivots.len() == r {
        // free positions: row i, columns right of pivot i that are not pivots
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| (pivots[i] + 1..k).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let mut m = vec![vec![0u64; k]; r];
        for (i, &c) in pivots.iter().enumerate() {
            m[i][c] = 1;
        }
        fill_free(&free, 0, &mut m, p, f);
        return;
    }
    for c in from..k {
        if k - c < r - pivots.len() {
            break;
        }
        pivots.push(c);
        choose_pivots(k, r, c + 1, pivots, p, f);
        pivots.pop();
    }
}

fn fill_free(free: &[(usize, usize)], idx: usize, m: &mut FpMatrix, p: u64, f: &mut dyn FnMut(&FpMatrix)) {
    if idx == free.len() {
        f(m);
        return;
    }
    let (i, c) = free[idx];
    for x in 0..p {
        m[i][c] = x;
        fill_free(free, idx + 1, m, p, f);
    }
    m[free[idx].0][free[idx].1] = 0;
}

/// Gaussian binomial `[k choose r]_q` at an integer `q`.
pub fn gaussian_binomial(k: usize, r: usize, q: u128) -> u128 {
    if r > k {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..r {
        num *= q.pow((k - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

fn mat_vec(m: &FpMatrix, v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0u64, |acc, (a, b)| (acc + a * b) % p))
        .collect()
}

/// Number of subrepresentations of `m` with dimension vector `e`.
///
/// Vertices are visited in topological order. At a vertex the subspace must
/// contain the span `W` of the images of its incoming arrows, so only
/// subspaces of a complement of `W` are enumerated; at vertices without
/// outgoing arrows the choices are counted by a Gaussian binomial.
pub fn grassmannian_count(m: &FpRep, e: &DimVector) -> Result<u128> {
    check_dim(&m.quiver, e)?;
    if !e.le(&m.dim) {
        return Err(Error::domain(format!("{e} is not below {}", m.dim)));
    }
    if m.dim.total() > GRASSMANNIAN_GUARD {
        return Err(Error::guard(format!(
            "total dimension {} exceeds the Grassmannian guard {GRASSMANNIAN_GUARD}",
            m.dim.total()
        )));
    }
    let q = &m.quiver;
    let order = q.topological_order().to_vec();
    let has_out: Vec<bool> = (0..q.n()).map(|v| q.arrows().iter().any(|&(s, _)| s == v)).collect();
    let mut chosen: Vec<Option<FpMatrix>> = vec![None; q.n()];
    Ok(count_from(m, e, &order, 0, &has_out, &mut chosen))
}

fn count_from(
    m: &FpRep,
    e: &DimVector,
    order: &[usize],
    pos: usize,
    has_out: &[bool],
    chosen: &mut Vec<Option<FpMatrix>>,
) -> u128 {
    let Some(&v) = order.get(pos) else {
        return 1;
    };
    let p = m.prime;
    let dv = m.d(v);
    let ev = e[v] as usize;
    let mut w: FpMatrix = Vec::new();
    for (k, &(s, t)) in m.quiver.arrows().iter().enumerate() {
        if t == v {
            let basis = chosen[s].as_ref().expect("predecessor visited");
            w.extend(basis.iter().map(|u| mat_vec(&m.matrices[k], u, p)));
        }
    }
    let w_pivots = rref(&mut w, p);
    if w.len() > ev {
        return 0;
    }
    let extra = ev - w.len();
    let codim = dv - w.len();
    if !has_out[v] {
        chosen[v] = Some(Vec::new());
        let rest = count_from(m, e, order, pos + 1, has_out, chosen);
        return gaussian_binomial(codim, extra, p as u128) * rest;
    }
    // complement of W spanned by the non-pivot standard vectors
    let comp: Vec<usize> = (0..dv).filter(|c| !w_pivots.contains(c)).collect();
    let mut total = 0u128;
    for_each_subspace(codim, extra, p, &mut |sub| {
        let mut basis = w.clone();
        for row in sub {
            let mut vec = vec![0u64; dv];
            for (j, &c) in comp.iter().enumerate() {
                vec[c] = row[j];
            }
            basis.push(vec);
        }
        chosen[v] = Some(basis);
        total += count_from(m, e, order, pos + 1, has_out, chosen);
    });
    chosen[v] = None;
    total
}
