//! Laurent polynomials with integer coefficients in `x_1, ..., x_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

/// Exponent vector to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 1, vec![0; n])
    }

    /// `x_i` (0-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(n, 1, e)
    }

    pub fn monomial(n: usize, coef: i64, exps: Vec<i64>) -> Self {
        assert_eq!(exps.len(), n, "exponent vector length");
        let mut p = Self::zero(n);
        p.add_term(exps, coef);
        p
    }

    pub fn add_term(&mut self, exps: Vec<i64>, coef: i64) {
        if coef == 0 {
            return;
        }
        let c = self.terms.get(&exps).copied().unwrap_or(0) + coef;
        if c == 0 {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, c);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i64]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Evaluates at a point with nonzero rational coordinates.
    pub fn eval(&self, point: &[num::rational::BigRational]) -> num::rational::BigRational {
        use num::{One, Zero};
        let mut total = num::rational::BigRational::zero();
        for (e, &c) in &self.terms {
            let mut t = num::rational::BigRational::from_integer(c.into());
            for (x, &k) in point.iter().zip(e) {
                let base = if k >= 0 { x.clone() } else { num::rational::BigRational::one() / x };
                for _ in 0..k.unsigned_abs() {
                    t *= &base;
                }
            }
            total += t;
        }
        total
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = LaurentPoly::zero(self.n);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// `coef * x1^a1 ... xn^an` terms joined by ` + `, lexicographic in the
/// exponent vector; `0` for the zero polynomial.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} *")?;
            for (i, a) in e.iter().enumerate() {
                write!(f, " x{}^{a}", i + 1)?;
            }
        }
        Ok(())
    }
}
