//! Dense real matrices.
//!
//! [`RealMatrix`] is a thin newtype over [`nalgebra::DMatrix`] that keeps the
//! "all entries finite" invariant at construction and exposes the handful of
//! block and norm helpers the inverse constructions need. Arithmetic operators
//! panic on shape mismatch, matching nalgebra; the fallible entry points of the
//! crate validate shapes before reaching them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct RealMatrix(DMatrix<f64>);

impl RealMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadLength {
                rows,
                cols,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, &entries)))
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Error::BadLength {
                    rows: nrows,
                    cols: ncols,
                    got: entries.len() + row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(nrows, ncols, entries)
    }

    /// Column vector.
    pub fn column(values: &[f64]) -> Result<Self> {
        Self::new(values.len(), 1, values.to_vec())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        Self(m)
    }

    pub(crate) fn from_inner(inner: DMatrix<f64>) -> Self {
        Self(inner)
    }

    pub fn inner(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.rows() == 0 || self.cols() == 0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.0[(row, col)] = value;
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    /// Entries of a single-column matrix, or the first column otherwise.
    pub fn column_values(&self) -> Vec<f64> {
        self.0.column(0).iter().copied().collect()
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// `self^k`, with `self^0 = I`. Panics if the matrix is not square.
    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut out = DMatrix::identity(self.rows(), self.rows());
        for _ in 0..k {
            out = &out * &self.0;
        }
        Self(out)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(&self.0 * c)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Largest singular value (0 for empty matrices).
    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Singular values in non-increasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.is_empty() {
            return Vec::new();
        }
        crate::svd::singular_values(&self.0)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::ShapeMismatch {
                op: "multiply",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(self * rhs)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(self + rhs)
    }

    /// Copy of the `nr x nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self(self.0.view((r0, c0), (nr, nc)).into_owned())
    }

    /// Assembles `[[a, b], [c, d]]`. Panics if the blocks do not tile.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows(), b.rows());
        assert_eq!(c.rows(), d.rows());
        assert_eq!(a.cols(), c.cols());
        assert_eq!(b.cols(), d.cols());
        let (r1, c1) = a.shape();
        let mut m = DMatrix::zeros(r1 + c.rows(), c1 + b.cols());
        m.view_mut((0, 0), a.shape()).copy_from(&a.0);
        m.view_mut((0, c1), b.shape()).copy_from(&b.0);
        m.view_mut((r1, 0), c.shape()).copy_from(&c.0);
        m.view_mut((r1, c1), d.shape()).copy_from(&d.0);
        Self(m)
    }

    /// `blockdiag(a, b)`; either block may be empty.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let z1 = Self::zeros(a.rows(), b.cols());
        let z2 = Self::zeros(b.rows(), a.cols());
        Self::from_blocks(a, &z1, &z2, b)
    }

    pub fn hstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.rows(), b.rows());
        let mut m = DMatrix::zeros(a.rows(), a.cols() + b.cols());
        m.view_mut((0, 0), a.shape()).copy_from(&a.0);
        m.view_mut((0, a.cols()), b.shape()).copy_from(&b.0);
        Self(m)
    }

    pub fn vstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.cols(), b.cols());
        let mut m = DMatrix::zeros(a.rows() + b.rows(), a.cols());
        m.view_mut((0, 0), a.shape()).copy_from(&a.0);
        m.view_mut((a.rows(), 0), b.shape()).copy_from(&b.0);
        Self(m)
    }

    /// Ordinary inverse via LU, `None` when singular.
    pub fn try_inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        self.0.clone().try_inverse().map(Self)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `||a - b||_F / (1 + min(||a||_F, ||b||_F))`.
///
/// The shared residual metric: equals the absolute error near zero and the
/// relative error for large operands.
pub fn rel_distance(a: &RealMatrix, b: &RealMatrix) -> f64 {
    let diff = (a - b).norm();
    diff / (1.0 + a.norm().min(b.norm()))
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealMatrix{:?}", self.to_rows())
    }
}

impl<'a> Mul<&'a RealMatrix> for &'a RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &'a RealMatrix) -> RealMatrix {
        RealMatrix(&self.0 * &rhs.0)
    }
}

impl Mul<f64> for &RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: f64) -> RealMatrix {
        self.scale(rhs)
    }
}

impl<'a> Add<&'a RealMatrix> for &'a RealMatrix {
    type Output = RealMatrix;
    fn add(self, rhs: &'a RealMatrix) -> RealMatrix {
        RealMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a RealMatrix> for &'a RealMatrix {
    type Output = RealMatrix;
    fn sub(self, rhs: &'a RealMatrix) -> RealMatrix {
        RealMatrix(&self.0 - &rhs.0)
    }
}

impl Neg for &RealMatrix {
    type Output = RealMatrix;
    fn neg(self) -> RealMatrix {
        RealMatrix(-&self.0)
    }
}
