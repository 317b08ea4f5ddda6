//! Dual matrices `A + εB` and dual vectors under `ε² = 0`.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::matrix::{rel_distance, RealMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct DualMatrix {
    real: RealMatrix,
    dual: RealMatrix,
}

impl DualMatrix {
    pub fn new(real: RealMatrix, dual: RealMatrix) -> Result<Self> {
        if real.shape() != dual.shape() {
            return Err(Error::ShapeMismatch {
                op: "dual matrix",
                left: real.shape(),
                right: dual.shape(),
            });
        }
        Ok(Self { real, dual })
    }

    /// `A + ε0`.
    pub fn from_real(real: RealMatrix) -> Self {
        let dual = RealMatrix::zeros(real.rows(), real.cols());
        Self { real, dual }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            real: RealMatrix::zeros(rows, cols),
            dual: RealMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_real(RealMatrix::identity(n))
    }

    pub fn real(&self) -> &RealMatrix {
        &self.real
    }

    pub fn dual(&self) -> &RealMatrix {
        &self.dual
    }

    pub fn into_parts(self) -> (RealMatrix, RealMatrix) {
        (self.real, self.dual)
    }

    pub fn shape(&self) -> (usize, usize) {
        self.real.shape()
    }

    pub fn is_square(&self) -> bool {
        self.real.is_square()
    }

    /// `(A + εB)(C + εD) = AC + ε(AD + BC)`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.shape().1 != rhs.shape().0 {
            return Err(Error::ShapeMismatch {
                op: "multiply",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(self * rhs)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs, "add")?;
        Ok(Self {
            real: &self.real + &rhs.real,
            dual: &self.dual + &rhs.dual,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs, "sub")?;
        Ok(Self {
            real: &self.real - &rhs.real,
            dual: &self.dual - &rhs.dual,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            real: self.real.scale(c),
            dual: self.dual.scale(c),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            real: self.real.transpose(),
            dual: self.dual.transpose(),
        }
    }

    /// `Â^k = A^k + ε Σ_{i<k} A^(k-1-i) B A^i`, with `Â^0 = I`.
    pub fn power(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "power",
                rows: self.shape().0,
                cols: self.shape().1,
            });
        }
        let n = self.shape().0;
        let mut out = Self::identity(n);
        for _ in 0..k {
            out = &out * self;
        }
        Ok(out)
    }

    /// Dual part of `Â^k` on its own.
    pub fn power_dual_part(&self, k: usize) -> Result<RealMatrix> {
        Ok(self.power(k)?.dual)
    }

    pub fn apply(&self, v: &DualVector) -> Result<DualVector> {
        if self.shape().1 != v.len() {
            return Err(Error::ShapeMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let (vr, vd) = v.as_columns();
        let real = &self.real * &vr;
        let dual = &(&self.real * &vd) + &(&self.dual * &vr);
        Ok(DualVector::from_columns(&real, &dual))
    }

    fn check_same_shape(&self, rhs: &Self, op: &'static str) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(())
    }
}

/// Panics on inner-dimension mismatch; use [`DualMatrix::multiply`] for a
/// checked product.
impl<'a> Mul<&'a DualMatrix> for &'a DualMatrix {
    type Output = DualMatrix;
    fn mul(self, rhs: &'a DualMatrix) -> DualMatrix {
        DualMatrix {
            real: &self.real * &rhs.real,
            dual: &(&self.real * &rhs.dual) + &(&self.dual * &rhs.real),
        }
    }
}

/// Max of the [`rel_distance`] of the real parts and of the dual parts.
pub fn dual_distance(l: &DualMatrix, r: &DualMatrix) -> Result<f64> {
    l.check_same_shape(r, "dual_distance")?;
    Ok(rel_distance(&l.real, &r.real).max(rel_distance(&l.dual, &r.dual)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualVector {
    real: Vec<f64>,
    dual: Vec<f64>,
}

impl DualVector {
    pub fn new(real: Vec<f64>, dual: Vec<f64>) -> Result<Self> {
        if real.len() != dual.len() {
            return Err(Error::ShapeMismatch {
                op: "dual vector",
                left: (real.len(), 1),
                right: (dual.len(), 1),
            });
        }
        if real.iter().chain(&dual).any(|v| !v.is_finite()) {
            let pos = real
                .iter()
                .chain(&dual)
                .position(|v| !v.is_finite())
                .unwrap_or(0);
            return Err(Error::NonFinite {
                row: pos % real.len().max(1),
                col: 0,
            });
        }
        Ok(Self { real, dual })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            real: vec![0.0; n],
            dual: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.real.len()
    }

    pub fn is_empty(&self) -> bool {
        self.real.is_empty()
    }

    pub fn real(&self) -> &[f64] {
        &self.real
    }

    pub fn dual(&self) -> &[f64] {
        &self.dual
    }

    pub fn as_columns(&self) -> (RealMatrix, RealMatrix) {
        (
            RealMatrix::column(&self.real).expect("finite by construction"),
            RealMatrix::column(&self.dual).expect("finite by construction"),
        )
    }

    pub(crate) fn from_columns(real: &RealMatrix, dual: &RealMatrix) -> Self {
        Self {
            real: real.column_values(),
            dual: dual.column_values(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.len() != rhs.len() {
            return Err(Error::ShapeMismatch {
                op: "add",
                left: (self.len(), 1),
                right: (rhs.len(), 1),
            });
        }
        Ok(Self {
            real: self
                .real
                .iter()
                .zip(&rhs.real)
                .map(|(a, b)| a + b)
                .collect(),
            dual: self
                .dual
                .iter()
                .zip(&rhs.dual)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            real: self.real.iter().map(|v| v * c).collect(),
            dual: self.dual.iter().map(|v| v * c).collect(),
        }
    }

    /// Euclidean norm of the stacked `(real, dual)` vector.
    pub fn norm(&self) -> f64 {
        self.real
            .iter()
            .chain(&self.dual)
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Same metric as [`dual_distance`], on vectors.
    pub fn distance(&self, rhs: &Self) -> Result<f64> {
        let (a, b) = (self.as_columns(), rhs.as_columns());
        if self.len() != rhs.len() {
            return Err(Error::ShapeMismatch {
                op: "distance",
                left: (self.len(), 1),
                right: (rhs.len(), 1),
            });
        }
        Ok(rel_distance(&a.0, &b.0).max(rel_distance(&a.1, &b.1)))
    }
}
