//! Exact linear algebra over ℚ for sparse integer matrices.
//!
//! Ranks are computed by fraction-free sparse elimination on integer rows.
//! Arithmetic runs in `i128` and restarts with arbitrary-precision integers if
//! any intermediate value would overflow, so the answer is always exact.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on stored entries per matrix.
pub const DEFAULT_MAX_ENTRIES: usize = 2_000_000;
/// Default cap on basis elements per graded component.
pub const DEFAULT_MAX_BASIS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_entries: usize,
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_entries: DEFAULT_MAX_ENTRIES, max_basis: DEFAULT_MAX_BASIS }
    }
}

impl Limits {
    /// Defaults, with the basis cutoff overridden by `MESHROOTS_CUTOFF` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var("MESHROOTS_CUTOFF") {
            limits.max_basis = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("MESHROOTS_CUTOFF: not a count: {raw:?}")))?;
        }
        Ok(limits)
    }
}

/// Row-major sparse integer matrix; each row is sorted by column with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Sums duplicate positions and drops zeros. Panics on out-of-range indices.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *row = merged;
        }
        SparseIntMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r]
            .binary_search_by_key(&c, |&(cc, _)| cc)
            .map_or(0, |k| self.data[r][k].1)
    }

    pub fn row(&self, r: usize) -> &[(usize, i64)] {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v)))
    }

    /// Exact product `self · rhs`. Panics on overflow.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Vec::with_capacity(self.rows);
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for row in &self.data {
            acc.clear();
            for &(k, a) in row {
                for &(c, b) in &rhs.data[k] {
                    let e = acc.entry(c).or_insert(0);
                    *e = a
                        .checked_mul(b)
                        .and_then(|p| e.checked_add(p))
                        .expect("overflow in sparse product");
                }
            }
            let mut r: Vec<(usize, i64)> = acc.iter().filter(|(_, v)| **v != 0).map(|(c, v)| (*c, *v)).collect();
            r.sort_unstable();
            out.push(r);
        }
        SparseIntMatrix { rows: self.rows, cols: rhs.cols, data: out }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            d[r][c] = v;
        }
        d
    }
}

trait Scalar: Clone {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a·x - b·y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
}

impl Scalar for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl Scalar for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
}

type SparseVec<T> = Vec<(usize, T)>;

struct Overflow;

/// `a·v - b·p` over sparse vectors, dropping cancelled entries.
fn combine<T: Scalar>(a: &T, v: &SparseVec<T>, b: &T, p: &SparseVec<T>) -> Result<SparseVec<T>, Overflow> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let (c, x, y) = match (v.get(i), p.get(j)) {
            (Some(&(cv, ref xv)), Some(&(cp, _))) if cv < cp => {
                i += 1;
                (cv, xv.clone(), zero.clone())
            }
            (Some(&(cv, _)), Some(&(cp, ref yp))) if cp < cv => {
                j += 1;
                (cp, zero.clone(), yp.clone())
            }
            (Some(&(cv, ref xv)), Some((_, yp))) => {
                i += 1;
                j += 1;
                (cv, xv.clone(), yp.clone())
            }
            (Some(&(cv, ref xv)), None) => {
                i += 1;
                (cv, xv.clone(), zero.clone())
            }
            (None, Some(&(cp, ref yp))) => {
                j += 1;
                (cp, zero.clone(), yp.clone())
            }
            (None, None) => unreachable!(),
        };
        let z = T::mul_sub(a, &x, b, &y).ok_or(Overflow)?;
        if !z.is_zero() {
            out.push((c, z));
        }
    }
    Ok(out)
}

/// Divides by the content and makes the leading entry positive.
fn normalize<T: Scalar>(v: &mut SparseVec<T>) {
    let Some(first) = v.first() else { return };
    let mut g = first.1.clone();
    for (_, x) in v.iter().skip(1) {
        if g.is_unit() {
            break;
        }
        g = g.gcd(x);
    }
    if first.1.is_negative() {
        g = g.neg();
    }
    if !(g.is_unit() && !g.is_negative()) {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

fn echelon_rank<T: Scalar>(m: &SparseIntMatrix) -> Result<usize, Overflow> {
    // Rows with fewer entries first keeps fill-in low.
    let mut order: Vec<usize> = (0..m.nrows()).filter(|&r| !m.row(r).is_empty()).collect();
    order.sort_by_key(|&r| (m.row(r).len(), r));
    let mut pivots: HashMap<usize, SparseVec<T>> = HashMap::new();
    for r in order {
        let mut v: SparseVec<T> = m.row(r).iter().map(|&(c, x)| (c, T::from_i64(x))).collect();
        loop {
            let Some((lead, _)) = v.first() else { break };
            match pivots.get(lead) {
                Some(p) => {
                    let pl = &p[0].1;
                    let vl = &v[0].1;
                    let g = pl.gcd(vl);
                    let a = pl.div_exact(&g);
                    let b = vl.div_exact(&g);
                    v = combine(&a, &v, &b, p)?;
                    normalize(&mut v);
                }
                None => {
                    pivots.insert(*lead, v);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

/// Rank over ℚ, computed exactly.
pub fn rank(m: &SparseIntMatrix, limits: &Limits) -> Result<usize> {
    let nnz = m.nnz();
    if nnz > limits.max_entries {
        return Err(Error::SizeLimitExceeded {
            what: format!("{}x{} matrix", m.nrows(), m.ncols()),
            required: nnz as u128,
            limit: limits.max_entries as u128,
        });
    }
    // Eliminate along the shorter side.
    let t;
    let m = if m.ncols() > m.nrows() {
        t = m.transpose();
        &t
    } else {
        m
    };
    match echelon_rank::<i128>(m) {
        Ok(r) => Ok(r),
        Err(Overflow) => Ok(echelon_rank::<BigInt>(m).unwrap_or_else(|_| unreachable!())),
    }
}

/// A finite chain complex `C_top → ... → C_1 → C_0` with `d_k : C_k → C_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    differentials: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    /// `differentials[k - 1]` is `d_k`, a `dims[k-1] × dims[k]` matrix.
    pub fn new(dims: Vec<usize>, differentials: Vec<SparseIntMatrix>) -> Result<Self> {
        if dims.is_empty() || differentials.len() + 1 != dims.len() {
            return Err(Error::Parse(format!(
                "{} chain groups need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.nrows() != dims[k] || d.ncols() != dims[k + 1] {
                return Err(Error::Parse(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    k + 1,
                    d.nrows(),
                    d.ncols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        Ok(ChainComplex { dims, differentials })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_k` for `k >= 1`.
    pub fn differential(&self, k: usize) -> &SparseIntMatrix {
        &self.differentials[k - 1]
    }

    pub fn differentials(&self) -> &[SparseIntMatrix] {
        &self.differentials
    }

    /// Checks `d_k ∘ d_{k+1} = 0` for every `k`.
    pub fn check(&self) -> Result<()> {
        for k in 1..self.differentials.len() {
            if !self.differentials[k - 1].mul(&self.differentials[k]).is_zero() {
                return Err(Error::NotAComplex { degree: k });
            }
        }
        Ok(())
    }
}

/// Chain dimensions, ranks and homology dimensions, all indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexDims {
    pub chain: Vec<usize>,
    /// `ranks[k]` is the rank of `d_k` (`ranks[0] = 0`).
    pub ranks: Vec<usize>,
    pub homology: Vec<usize>,
}

impl ComplexDims {
    pub fn euler_chain(&self) -> i64 {
        alternating(&self.chain)
    }

    pub fn euler_homology(&self) -> i64 {
        alternating(&self.homology)
    }

    /// `H_k`, zero beyond the top degree.
    pub fn h(&self, k: usize) -> usize {
        self.homology.get(k).copied().unwrap_or(0)
    }

    /// Degrees with nonzero homology.
    pub fn support(&self) -> Vec<usize> {
        (0..self.homology.len()).filter(|&k| self.homology[k] != 0).collect()
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

pub fn homology_dims(complex: &ChainComplex, limits: &Limits) -> Result<ComplexDims> {
    complex.check()?;
    let top = complex.dims.len();
    let mut ranks = vec![0; top + 1];
    for k in 1..top {
        ranks[k] = rank(complex.differential(k), limits)?;
    }
    let homology = (0..top).map(|k| complex.dims[k] - ranks[k] - ranks[k + 1]).collect();
    ranks.truncate(top);
    Ok(ComplexDims { chain: complex.dims.clone(), ranks, homology })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;
    use proptest::prelude::*;

    /// Dense Gauss-Jordan over ℚ, independent of the sparse path.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
        let mut rank = 0;
        for c in 0..m {
            let Some(p) = (rank..n).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = BigRational::one() / a[rank][c].clone();
            for r in 0..n {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c].clone() * inv.clone();
                    for cc in 0..m {
                        let sub = f.clone() * a[rank][cc].clone();
                        a[r][cc] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn r(rows: &[Vec<i64>]) -> usize {
        rank(&SparseIntMatrix::from_dense(rows), &Limits::default()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(r(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&SparseIntMatrix::identity(3), &Limits::default()).unwrap(), 3);
        assert_eq!(r(&[vec![2, 4], vec![1, 2]]), 1);
    }

    #[test]
    fn rank_cutoff() {
        let limits = Limits { max_entries: 2, ..Limits::default() };
        assert!(matches!(
            rank(&SparseIntMatrix::identity(3), &limits),
            Err(Error::SizeLimitExceeded { required: 3, limit: 2, .. })
        ));
    }

    #[test]
    fn overflowing_entries_fall_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![
            vec![big, big - 1, 7],
            vec![big - 5, big, 3],
            vec![2 * (big - 5) - big, 2 * big - (big - 1), 6 - 7],
        ];
        assert_eq!(r(&rows), dense_rank(&rows));
    }

    #[test]
    fn homology_examples() {
        let lim = Limits::default();
        let c = ChainComplex::new(vec![1], vec![]).unwrap();
        assert_eq!(homology_dims(&c, &lim).unwrap().homology, vec![1]);

        let c = ChainComplex::new(vec![1, 1], vec![SparseIntMatrix::identity(1)]).unwrap();
        assert_eq!(homology_dims(&c, &lim).unwrap().homology, vec![0, 0]);

        // ℚ² → ℚ by [1, 0]: the source keeps a 1-dimensional kernel.
        let d = SparseIntMatrix::from_dense(&[vec![1, 0]]);
        let c = ChainComplex::new(vec![1, 2], vec![d]).unwrap();
        let h = homology_dims(&c, &lim).unwrap();
        assert_eq!((h.h(1), h.h(0)), (1, 0));
    }

    #[test]
    fn non_complex_is_rejected() {
        let one = SparseIntMatrix::identity(1);
        let c = ChainComplex::new(vec![1, 1, 1], vec![one.clone(), one]).unwrap();
        assert_eq!(homology_dims(&c, &Limits::default()), Err(Error::NotAComplex { degree: 1 }));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let d = SparseIntMatrix::from_dense(&[vec![1, 0]]);
        assert!(ChainComplex::new(vec![2, 2], vec![d]).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(n, m)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, m), n)
        })
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(rows in small_matrix()) {
            prop_assert_eq!(r(&rows), dense_rank(&rows));
        }

        #[test]
        fn rank_is_transpose_invariant(rows in small_matrix()) {
            let m = SparseIntMatrix::from_dense(&rows);
            let lim = Limits::default();
            prop_assert_eq!(rank(&m, &lim).unwrap(), rank(&m.transpose(), &lim).unwrap());
        }

        #[test]
        fn euler_characteristic_is_preserved(a in small_matrix(), b_cols in 1usize..6, seed in any::<u64>()) {
            let n0 = a.len();
            let n1 = a[0].len();
            let d1 = SparseIntMatrix::from_dense(&a);
            // d_2 has columns that are multiples of one kernel vector of d_1 (or zero).
            let kernel = integer_kernel_vector(&a);
            let d2_rows: Vec<Vec<i64>> = (0..n1)
                .map(|i| (0..b_cols).map(|j| kernel.as_ref().map_or(0, |k| k[i] * (((seed >> (j % 60)) & 3) as i64))).collect())
                .collect();
            let d2 = SparseIntMatrix::from_dense(&d2_rows);
            let c = ChainComplex::new(vec![n0, n1, b_cols], vec![d1, d2]).unwrap();
            let h = homology_dims(&c, &Limits::default()).unwrap();
            prop_assert_eq!(h.euler_chain(), h.euler_homology());
        }
    }

    /// Some nonzero integer vector in the kernel, by brute force over a small box.
    fn integer_kernel_vector(a: &[Vec<i64>]) -> Option<Vec<i64>> {
        let m = a[0].len();
        if m > 4 {
            return None;
        }
        let range: Vec<i64> = (-2..=2).collect();
        let mut idx = vec![0usize; m];
        loop {
            let v: Vec<i64> = idx.iter().map(|&i| range[i]).collect();
            if v.iter().any(|&x| x != 0)
                && a.iter().all(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum::<i64>() == 0)
            {
                return Some(v);
            }
            let mut k = 0;
            loop {
                if k == m {
                    return None;
                }
                idx[k] += 1;
                if idx[k] < range.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}
