//! Exact dense linear algebra over the prime field F_p.
//!
//! Everything downstream (group representations, stable homs, Tate
//! cohomology) reduces to row reduction, kernels and solving over F_p,
//! so this module is the only place arithmetic happens. Only prime
//! fields are supported; the classification this tool verifies does not
//! depend on the ground field, so F_p suffices.
//!
//! Elimination always picks the leftmost available pivot, so every
//! basis produced here is reproducible across runs.

use crate::Error;
use serde::{Deserialize, Serialize};

/// The prime field F_p, 2 <= p <= 97.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) || p > 97 {
            return Err(Error::InvalidArgument(format!(
                "characteristic must be a prime <= 97, got {p}"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// A dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch(
                    "ragged rows in matrix literal".into(),
                ));
            }
            for &x in r {
                data.push(x % field.p());
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: PrimeField, cols: &[Vec<u64>], nrows: usize) -> Result<Self, Error> {
        let mut m = Self::zero(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::DimensionMismatch("column length mismatch".into()));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Row-major flattening; the coordinate convention used for hom spaces.
    pub fn vectorize(&self) -> Vec<u64> {
        self.data.clone()
    }

    pub fn from_vec(
        field: PrimeField,
        rows: usize,
        cols: usize,
        data: Vec<u64>,
    ) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch("entry count mismatch".into()));
        }
        let data = data.into_iter().map(|x| x % field.p()).collect();
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length mismatch".into()));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect())
    }

    pub fn pow(&self, mut k: u64) -> Result<Matrix, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("pow of non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form with deterministic leftmost-pivot choice.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            // first non-zero entry at or below row r
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j);
                    let b = m.get(pr, j);
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space, returned as the columns of a matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let f = self.field;
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = Some(row);
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|j| pivot_set[*j].is_none()).collect();
        let mut out = Matrix::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        out
    }

    /// Solves A x = b; `Ok(None)` means b is not in the column space.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "rhs has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let bcol = Matrix::from_cols(self.field, &[b.to_vec()], self.rows)?;
        let aug = self.hstack(&bcol)?;
        let Rref {
            matrix: r, pivots, ..
        } = aug.rref();
        // inconsistent iff some pivot lands in the appended column
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves A X = B column by column; `Ok(None)` if any column fails.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>, Error> {
        if b.rows() != self.rows {
            return Err(Error::DimensionMismatch("solve_matrix rhs rows".into()));
        }
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            match self.solve(&b.col(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_cols(self.field, &cols, self.cols)?))
    }

    pub fn inverse(&self) -> Result<Option<Matrix>, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
    }
}

/// An incrementally built echelonized row space, for rank bookkeeping and
/// basis completion.
#[derive(Debug, Clone)]
pub struct RowSpace {
    field: PrimeField,
    width: usize,
    // rows kept in echelon form, paired with their pivot column
    rows: Vec<(usize, Vec<u64>)>,
}

impl RowSpace {
    pub fn new(field: PrimeField, width: usize) -> Self {
        RowSpace {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for j in 0..self.width {
                    v[j] = f.sub(v[j], f.mul(c, row[j]));
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.width);
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // back-substitute into existing rows to keep reduced form
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for j in 0..self.width {
                    row[j] = f.sub(row[j], f.mul(c, v[j]));
                }
            }
        }
        self.rows.push((pc, v));
        self.rows.sort_by_key(|(pc, _)| *pc);
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn basis(&self) -> Vec<Vec<u64>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_non_prime_characteristic() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(101).is_err());
    }

    #[test]
    fn rref_equal_rows_f2() {
        let a = Matrix::from_rows(f(2), &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = a.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_identity_f3() {
        let a = Matrix::identity(f(3), 3);
        let r = a.rref();
        assert_eq!(r.matrix, a);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_singular_f3() {
        // determinant 2*2 - 1*1 = 3 = 0 mod 3; oracle: second row = 2 * first
        let a = Matrix::from_rows(f(3), &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(a.rref().rank, 1);
    }

    #[test]
    fn kernel_of_augmentation_row_f2() {
        let a = Matrix::from_rows(f(2), &[vec![1, 1]]).unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), vec![1, 1]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let a = Matrix::identity(f(5), 4);
        assert_eq!(a.kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_derived_f5() {
        // oracle: enumerate (x, y) in F5^2 with x + 2y = 0 -> spanned by (3, 1)
        let a = Matrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        let v = k.col(0);
        // normalize against the enumerated solution
        let fld = f(5);
        let scale = fld.mul(v[1], fld.inv(1));
        assert_eq!(v, vec![fld.mul(3, scale), fld.mul(1, scale)]);
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(f(7), 3);
        assert_eq!(a.solve(&[2, 5, 6]).unwrap(), Some(vec![2, 5, 6]));
    }

    #[test]
    fn solve_underdetermined_deterministic_pivot() {
        let a = Matrix::from_rows(f(2), &[vec![1, 1]]).unwrap();
        // leftmost pivot -> free variable is the second coordinate, set to 0
        assert_eq!(a.solve(&[1]).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_rows(f(2), &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(a.solve(&[1, 0]).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch_is_an_error() {
        let a = Matrix::identity(f(2), 2);
        assert!(a.solve(&[1]).is_err());
    }

    #[test]
    fn rowspace_tracks_rank() {
        let mut rs = RowSpace::new(f(2), 3);
        assert!(rs.insert(&[1, 1, 0]));
        assert!(!rs.insert(&[1, 1, 0]));
        assert!(rs.insert(&[0, 1, 1]));
        assert!(rs.contains(&[1, 0, 1]));
        assert_eq!(rs.rank(), 2);
    }

    fn arb_matrix(p: u64) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0u64..p, r * c)
                .prop_map(move |data| Matrix::from_vec(f(p), r, c, data).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in arb_matrix(3)) {
            let r = a.rref().matrix;
            prop_assert_eq!(r.rref().matrix, r);
        }

        #[test]
        fn rank_equals_transpose_rank(a in arb_matrix(5)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn kernel_annihilates_and_ranks_add(a in arb_matrix(2)) {
            let k = a.kernel_basis();
            prop_assert!(a.mul(&k).unwrap().is_zero());
            prop_assert_eq!(a.cols(), a.rank() + k.cols());
            // kernel columns are independent
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_verified_by_substitution(a in arb_matrix(3), seed in 0u64..81) {
            let b: Vec<u64> = (0..a.rows()).map(|i| (seed >> i) % 3).collect();
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
            }
        }
    }
}
