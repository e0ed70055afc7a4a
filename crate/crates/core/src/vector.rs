//! Integer vectors indexed by the vertices of a quiver.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::Error;

/// A dimension vector, root, or generalized root: one integer per vertex.
///
/// Entries are in the user's vertex order. Negative entries are only
/// meaningful for generalized vectors (e.g. `-e_i`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The standard basis vector `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &i64> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Nonnegative and nonzero.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn is_sincere(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    /// Sum of absolute values.
    pub fn l1(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Vertices with nonzero entry, 0-based.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| num::integer::gcd(g, x))
    }

    /// `-e_i` for some `i`, returning that index.
    pub fn as_negative_simple(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                -1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// `e_i` for some `i`, returning that index.
    pub fn as_simple(&self) -> Option<usize> {
        (-self.clone()).as_negative_simple()
    }

    /// Componentwise positive part.
    pub fn positive_part(&self) -> DimVector {
        DimVector(self.0.iter().map(|&x| x.max(0)).collect())
    }

    pub fn componentwise_max(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// All vectors `v` with `0 <= v <= self`, in lexicographic order.
    /// `self` must be nonnegative.
    pub fn box_below(&self) -> BoxIter {
        BoxIter::new(self.clone())
    }
}

/// Iterates over all integer vectors in the box `[0, cap]`.
pub struct BoxIter {
    cap: DimVector,
    cur: Option<Vec<i64>>,
}

impl BoxIter {
    fn new(cap: DimVector) -> Self {
        let cur = if cap.is_nonnegative() {
            Some(vec![0; cap.len()])
        } else {
            None
        };
        BoxIter { cap, cur }
    }
}

impl Iterator for BoxIter {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        let cur = self.cur.take()?;
        let out = DimVector(cur.clone());
        let mut next = cur;
        let mut k = next.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if next[k] < self.cap.0[k] {
                next[k] += 1;
                for x in next.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Parses `1,2,3` or `(1,2,3)`.
impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Err(Error::Parse { line: 0, msg: format!("empty vector {s:?}") });
        }
        t.split(',')
            .map(|x| {
                x.trim().parse::<i64>().map_err(|e| Error::Parse {
                    line: 0,
                    msg: format!("bad integer {x:?} in {s:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DimVector)
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for DimVector {
    fn from(v: [i64; N]) -> Self {
        DimVector(v.to_vec())
    }
}

impl Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for DimVector {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        debug_assert_eq!(self.len(), rhs.len());
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for DimVector {
    type Output = DimVector;
    fn add(self, rhs: DimVector) -> DimVector {
        &self + &rhs
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        debug_assert_eq!(self.len(), rhs.len());
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for DimVector {
    type Output = DimVector;
    fn sub(self, rhs: DimVector) -> DimVector {
        &self - &rhs
    }
}

impl AddAssign<&DimVector> for DimVector {
    fn add_assign(&mut self, rhs: &DimVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&DimVector> for DimVector {
    fn sub_assign(&mut self, rhs: &DimVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for DimVector {
    type Output = DimVector;
    fn neg(self) -> DimVector {
        DimVector(self.0.into_iter().map(|x| -x).collect())
    }
}

impl Mul<&DimVector> for i64 {
    type Output = DimVector;
    fn mul(self, rhs: &DimVector) -> DimVector {
        DimVector(rhs.0.iter().map(|x| self * x).collect())
    }
}
