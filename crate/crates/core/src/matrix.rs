//! Small dense integer matrices (rank-sized: Cartan, Euler and Coxeter data).

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zeros(n: usize, m: usize) -> Self {
        IntMatrix { rows: vec![vec![0; m]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.rows[i][i] = 1;
        }
        out
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.len() == first.len()), "ragged matrix");
        }
        IntMatrix { rows }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        let mut out = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "ragged columns");
            for i in 0..n {
                out.rows[i][j] = c[i];
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn transpose(&self) -> Self {
        let (n, m) = (self.nrows(), self.ncols());
        let mut out = Self::zeros(m, n);
        for i in 0..n {
            for j in 0..m {
                out.rows[j][i] = self.rows[i][j];
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.ncols());
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `uᵀ · self · v`.
    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        u.iter().zip(self.apply(v)).map(|(a, b)| a * b).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols() && *self == Self::identity(self.nrows())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.nrows());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, searched up to `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Exact inverse over the rationals; `None` if singular or not integral.
    pub fn integer_inverse(&self) -> Option<Self> {
        let n = self.nrows();
        if n != self.ncols() {
            return None;
        }
        let mut a: Vec<Vec<Ratio<i128>>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<Ratio<i128>> =
                    r.iter().map(|&x| Ratio::from_integer(x as i128)).collect();
                row.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col];
            for x in a[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col];
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = a[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                out.rows[i][j] = i64::try_from(x.to_integer()).ok()?;
            }
        }
        Some(out)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.rows[i][j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.rows[i][j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch");
        let mut out = IntMatrix::zeros(self.nrows(), rhs.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    out.rows[i][j] += a * rhs.rows[k][j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_unimodular() {
        let m = IntMatrix::from_rows(vec![vec![0, -1], vec![1, -1]]);
        let inv = m.integer_inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(m.order(10), Some(3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![1, 2]]);
        assert!(m.integer_inverse().is_none());
    }
}
