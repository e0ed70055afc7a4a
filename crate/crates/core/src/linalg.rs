//! Exact linear algebra over the rationals and the integers.

#![allow(clippy::needless_range_loop)]

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Symmetric elimination on a symmetric integer matrix.
///
/// Returns `Some(r)` when the matrix is positive semidefinite with an
/// `r`-dimensional radical, `None` when it is indefinite or negative
/// somewhere.
pub fn psd_radical_dim(m: &[Vec<i64>]) -> Option<usize> {
    let mut a = to_rational(m);
    let mut active: Vec<usize> = (0..a.len()).collect();
    loop {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let Some(p) = pivot else {
            // Zero diagonal on what is left: PSD only if the block vanishes.
            let nonzero = active
                .iter()
                .any(|&i| active.iter().any(|&j| !a[i][j].is_zero()));
            return if nonzero { None } else { Some(active.len()) };
        };
        if a[p][p].is_negative() {
            return None;
        }
        active.retain(|&i| i != p);
        let piv = a[p][p].clone();
        for &j in &active {
            if a[j][p].is_zero() {
                continue;
            }
            let f = &a[j][p] / &piv;
            for &l in &active {
                let delta = &f * &a[p][l];
                a[j][l] -= delta;
            }
        }
    }
}

/// Basis of the right nullspace of an integer matrix, each basis vector
/// scaled to a primitive integer vector.
pub fn integer_nullspace(m: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut a = to_rational(m);
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = BigRational::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..nrows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..ncols {
                    let delta = &f * &a[row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

fn primitive(v: &[BigRational]) -> Vec<i64> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.iter()
        .map(|x| {
            let y = x / &g;
            i64::try_from(y).expect("nullspace entry fits in i64")
        })
        .collect()
}

/// Rank of an integer matrix over the rationals.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    ncols - integer_nullspace(m, ncols).len()
}

/// Nonzero elementary divisors of an integer matrix (Smith normal form
/// diagonal), in divisibility order.
pub fn elementary_divisors(m: &[Vec<i64>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j];
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}
