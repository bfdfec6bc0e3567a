//! Dense exact linear algebra over a prime field GF(p).
//!
//! Every Hom-space, factorization and homotopy question in the crate is
//! eventually phrased as one of three kernels here: [`Matrix::rref`],
//! [`Matrix::solve`] and [`Matrix::kernel_basis`]. All three are
//! deterministic: pivots are chosen leftmost-column first, topmost row first,
//! and free variables are set to zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > 65_521 {
            return Err(Error::Invalid(format!("modulus {p} too large (max 65521)")));
        }
        Ok(Self { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// `-1` as a field element.
    pub fn minus_one(self) -> u32 {
        self.p - 1
    }

    /// `(-1)^k`.
    pub fn sign(self, k: i64) -> u32 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            self.p - 1
        }
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        pow_mod(a, self.p - 2, self.p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (b % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A dense `rows × cols` matrix over GF(p), stored row-major with every entry
/// in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>[{}x{}]", self.p, self.rows, self.cols)?;
        if self.rows * self.cols > 0 {
            write!(f, "{:?}", self.to_rows())?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self { p: field.p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.reduce(v)).collect();
        Ok(Self { p: field.p, rows: r, cols: c, data })
    }

    /// Builds a matrix from row-major entries, reducing mod p.
    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "matrix {rows}x{cols} expects {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let data = entries.iter().map(|&v| field.reduce(v)).collect();
        Ok(Self { p: field.p, rows, cols, data })
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec { p: self.p }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix { p: self.p, rows: self.cols, cols: self.rows, data: vec![0; self.data.len()] };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let orow = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Ok(Matrix { p: self.p, rows: self.rows, cols: other.cols, data: out.into_iter().map(|v| v as u32).collect() })
    }

    /// Product for callers that have already established compatible shapes.
    pub fn dot(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("matrix shapes checked by caller")
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(u64, u64) -> u64) -> Result<Matrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "elementwise op on {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (f(a as u64, b as u64) % p) as u32).collect();
        Ok(Matrix { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        let p = self.p as u64;
        self.zip_with(other, move |a, b| a + p - b)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.p - 1)
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.p as u64;
        let s = (s % self.p) as u64;
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| (v as u64 * s % p) as u32).collect() }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { p: self.p, rows: self.rows, cols, data })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Assembles a block matrix. Row heights and column widths must be
    /// consistent across the grid.
    pub fn from_blocks(field: FieldSpec, heights: &[usize], widths: &[usize], blocks: &[Vec<Option<Matrix>>]) -> Result<Matrix> {
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for (bi, h) in heights.iter().enumerate() {
            let mut c0 = 0;
            for (bj, w) in widths.iter().enumerate() {
                if let Some(b) = blocks.get(bi).and_then(|row| row.get(bj)).and_then(Option::as_ref) {
                    if b.shape() != (*h, *w) {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({bi},{bj}) is {}x{}, expected {h}x{w}",
                            b.rows, b.cols
                        )));
                    }
                    out.paste(r0, c0, b);
                }
                c0 += w;
            }
            r0 += h;
        }
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in r0..r0 + rows {
            data.extend_from_slice(&self.data[r * self.cols + c0..r * self.cols + c0 + cols]);
        }
        Matrix { p: self.p, rows, cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix { p: self.p, rows: self.rows, cols: cols.len(), data: vec![0; self.rows * cols.len()] };
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let p = self.p as u64;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix { p: self.p, rows, cols, data: vec![0; rows * cols] };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = (a * other.get(k, l) as u64 % p) as u32;
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with leftmost-pivot, topmost-row elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else { continue };
            m.swap_rows(row, piv);
            let inv = self.field().inv(m.get(row, col)) as u64;
            for c in col..m.cols {
                let v = m.data[row * m.cols + c] as u64;
                m.data[row * m.cols + c] = (v * inv % p) as u32;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col) as u64;
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for c in col..m.cols {
                    let src = m.data[row * m.cols + c] as u64;
                    if src != 0 {
                        let dst = &mut m.data[r * m.cols + c];
                        *dst = ((*dst as u64 + neg * src) % p) as u32;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Solves `self · x = b`. Free variables are set to zero; `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let Rref { matrix: r, pivots, .. } = aug.rref();
        let n = self.cols;
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Matrix { p: self.p, rows: n, cols: b.cols, data: vec![0; n * b.cols] };
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(i, n + j);
            }
        }
        Ok(Some(x))
    }

    /// Columns form a basis of the null space, one per free column in
    /// increasing order.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix { p: self.p, rows: n, cols: free.len(), data: vec![0; n * free.len()] };
        for (j, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + j] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, fc);
                if v != 0 {
                    k.data[pc * free.len() + j] = self.p - v;
                }
            }
        }
        k
    }

    /// Rows spanning the annihilator of the column space: a full-row-rank
    /// `(rows - rank) × rows` matrix `c` with `c · self = 0`.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// A basis of the column space, picked from the pivot columns.
    pub fn column_space(&self) -> Matrix {
        let r = self.rref();
        self.select_columns(&r.pivots)
    }

    /// Right inverse of a full-row-rank matrix.
    pub fn right_inverse(&self) -> Result<Matrix> {
        let id = Matrix::identity(self.field(), self.rows);
        self.solve(&id)?.ok_or_else(|| Error::Invalid("matrix has no right inverse".into()))
    }

    /// Left inverse of a full-column-rank matrix.
    pub fn left_inverse(&self) -> Result<Matrix> {
        Ok(self.transpose().right_inverse()?.transpose())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(self.field(), self.rows);
        match self.solve(&id) {
            Ok(Some(x)) if self.dot(&x) == id => Some(x),
            _ => None,
        }
    }

    /// Indices of the columns that extend the column space of `self` to all
    /// of `k^rows`, chosen greedily among the unit vectors.
    pub fn complement_units(&self) -> Vec<usize> {
        let id = Matrix::identity(self.field(), self.rows);
        let aug = self.hstack(&id).expect("same row count");
        let r = aug.rref();
        r.pivots.iter().filter(|&&c| c >= self.cols).map(|&c| c - self.cols).collect()
    }

    /// Flattens to a column vector (row-major order).
    pub fn vectorize(&self) -> Vec<u32> {
        self.data.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn m(p: u32, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(gf(p), rows).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(97).is_ok());
    }

    #[test]
    fn rref_identity_gf2() {
        let id = Matrix::identity(gf(2), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(gf(2), 3, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_all_ones_gf2() {
        let a = m(2, &[vec![1, 1], vec![1, 1]]);
        let r = a.rref();
        assert_eq!(r.matrix, m(2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = m(3, &[vec![2, 1], vec![0, 1], vec![1, 1]]);
        let x = Matrix::identity(gf(3), 3).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_zero_system() {
        let a = Matrix::zeros(gf(2), 2, 2);
        let b = Matrix::zeros(gf(2), 2, 1);
        assert_eq!(a.solve(&b).unwrap().unwrap(), Matrix::zeros(gf(2), 2, 1));
    }

    #[test]
    fn solve_inconsistent_gf2() {
        let a = m(2, &[vec![1, 1], vec![0, 0]]);
        let b = m(2, &[vec![1], vec![1]]);
        // Enumerate all four candidates: none satisfies the second row.
        for x0 in 0..2 {
            for x1 in 0..2 {
                let x = m(2, &[vec![x0], vec![x1]]);
                assert_ne!(a.dot(&x), b);
            }
        }
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::zeros(gf(2), 2, 2);
        let b = Matrix::zeros(gf(2), 3, 1);
        assert!(matches!(a.solve(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kernel_identity_empty() {
        assert_eq!(Matrix::identity(gf(5), 4).kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_zero_is_identity() {
        assert_eq!(Matrix::zeros(gf(3), 3, 3).kernel_basis(), Matrix::identity(gf(3), 3));
    }

    #[test]
    fn kernel_row_of_ones_gf2() {
        let k = m(2, &[vec![1, 1]]).kernel_basis();
        assert_eq!(k, m(2, &[vec![1], vec![1]]));
    }

    #[test]
    fn inverse_roundtrip_gf3() {
        let a = m(3, &[vec![1, 2], vec![0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.dot(&inv), Matrix::identity(gf(3), 2));
        assert!(m(3, &[vec![1, 2], vec![2, 1]]).inverse().is_none());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(5, &[vec![1, 2]]);
        let b = m(5, &[vec![3], vec![4]]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k, m(5, &[vec![3, 6], vec![4, 8]]));
    }

    #[test]
    fn cokernel_projection_annihilates() {
        let a = m(3, &[vec![1, 0], vec![1, 0], vec![0, 0]]);
        let c = a.cokernel_projection();
        assert_eq!(c.rows(), 2);
        assert!(c.dot(&a).is_zero());
    }
}
