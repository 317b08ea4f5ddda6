//! Dual linear systems `Âx̂ = b̂` solved through the dual Drazin inverse.

use crate::dualgi::{ddgi, settled_power};
use crate::dualmat::{DualMatrix, DualVector};
use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::realgi::{numerical_rank_at_scale, power_rank, truncated_pinv};
use crate::tolerance::Tolerances;

/// A square dual system with its DDGI computed once.
#[derive(Debug, Clone)]
pub struct DualSystem {
    a: DualMatrix,
    drazin: DualMatrix,
    k: usize,
}

impl DualSystem {
    pub fn new(a: &DualMatrix, tol: &Tolerances) -> Result<Self> {
        let res = ddgi(a, tol)?;
        let drazin = res.inverse.ok_or(Error::NoDdgi)?;
        Ok(Self {
            a: a.clone(),
            drazin,
            k: res.k,
        })
    }

    pub fn matrix(&self) -> &DualMatrix {
        &self.a
    }

    pub fn drazin(&self) -> &DualMatrix {
        &self.drazin
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `dual_distance(ÂÂ^D b̂, b̂)`.
    pub fn consistency_residual(&self, b: &DualVector) -> Result<f64> {
        let projected = self.a.apply(&self.drazin.apply(b)?)?;
        projected.distance(b)
    }

    pub fn is_consistent(&self, b: &DualVector, tol: &Tolerances) -> Result<bool> {
        Ok(tol.within(self.consistency_residual(b)?))
    }

    /// `Â^D b̂`, the solution lying in `R(Â^k)`.
    pub fn solve_unique(&self, b: &DualVector, tol: &Tolerances) -> Result<DualVector> {
        let residual = self.consistency_residual(b)?;
        if !tol.within(residual) {
            return Err(Error::Inconsistent { residual });
        }
        self.drazin.apply(b)
    }

    /// `Â^D b̂ + (Â^(k-1) - Â^D Â^k) ẑ`; for `k = 0` the second term is zero.
    pub fn general_solution(
        &self,
        b: &DualVector,
        z: &DualVector,
        tol: &Tolerances,
    ) -> Result<DualVector> {
        let x = self.solve_unique(b, tol)?;
        if self.k == 0 {
            if z.len() != x.len() {
                return Err(Error::ShapeMismatch {
                    op: "general_solution",
                    left: self.a.shape(),
                    right: (z.len(), 1),
                });
            }
            return Ok(x);
        }
        let ak = self.a.power(self.k)?;
        let homogeneous = self.a.power(self.k - 1)?.sub(&(&self.drazin * &ak))?;
        x.add(&homogeneous.apply(z)?)
    }

    /// `dual_distance(Âx̂, b̂)`.
    pub fn residual(&self, x: &DualVector, b: &DualVector) -> Result<f64> {
        self.a.apply(x)?.distance(b)
    }
}

pub fn is_consistent(a: &DualMatrix, b: &DualVector, tol: &Tolerances) -> Result<bool> {
    DualSystem::new(a, tol)?.is_consistent(b, tol)
}

pub fn solve_unique(a: &DualMatrix, b: &DualVector, tol: &Tolerances) -> Result<DualVector> {
    DualSystem::new(a, tol)?.solve_unique(b, tol)
}

pub fn general_solution(
    a: &DualMatrix,
    b: &DualVector,
    z: &DualVector,
    tol: &Tolerances,
) -> Result<DualVector> {
    DualSystem::new(a, tol)?.general_solution(b, z, tol)
}

struct PowerParts {
    ak: RealMatrix,
    rank: usize,
    d: RealMatrix,
}

fn power_parts(a: &DualMatrix, w: &DualVector, tol: &Tolerances) -> Result<(PowerParts, usize)> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "power membership",
            rows: a.shape().0,
            cols: a.shape().1,
        });
    }
    if w.len() != a.shape().0 {
        return Err(Error::ShapeMismatch {
            op: "power membership",
            left: a.shape(),
            right: (w.len(), 1),
        });
    }
    let k = crate::realgi::index(a.real(), tol)?;
    let parts = PowerParts {
        ak: settled_power(a.real(), k, tol),
        rank: power_rank(a.real(), k, tol),
        d: a.power_dual_part(k)?,
    };
    Ok((parts, k))
}

/// `ŵ ∈ R(Â^k)`, `k` the index of the real part.
///
/// `Â^k(x + εy) = A^k x + ε(A^k y + Dx)`, so this asks for `w_r ∈ R(A^k)`
/// and, with `x` fixed up to `N(A^k)`,
/// `w_d - D (A^k)^† w_r ∈ R([A^k | D (I - (A^k)^† A^k)])`.
pub fn in_range_power(a: &DualMatrix, w: &DualVector, tol: &Tolerances) -> Result<bool> {
    let (PowerParts { ak, rank, d }, _) = power_parts(a, w, tol)?;
    let n = ak.rows();
    let (wr, wd) = w.as_columns();
    let scale = ak.spectral_norm().max(d.spectral_norm()).max(w.norm());

    if numerical_rank_at_scale(&RealMatrix::hstack(&ak, &wr), scale, tol) != rank {
        return Ok(false);
    }
    let akp = truncated_pinv(&ak, rank);
    let v = &wd - &(&(&d * &akp) * &wr);
    let free = &d * &(&RealMatrix::identity(n) - &(&akp * &ak));
    let span = RealMatrix::hstack(&ak, &free);
    let base = numerical_rank_at_scale(&span, scale, tol);
    Ok(numerical_rank_at_scale(&RealMatrix::hstack(&span, &v), scale, tol) == base)
}

/// `ŵ ∈ N(Â^k)`: `A^k w_r = 0` and `A^k w_d + D w_r = 0` relative to
/// `(1 + ||A^k|| + ||D||) ||ŵ||`.
pub fn in_null_power(a: &DualMatrix, w: &DualVector, tol: &Tolerances) -> Result<bool> {
    let (PowerParts { ak, d, .. }, _) = power_parts(a, w, tol)?;
    let (wr, wd) = w.as_columns();
    let scale = (1.0 + ak.norm() + d.norm()) * w.norm();
    let real = (&ak * &wr).norm();
    let dual = (&(&ak * &wd) + &(&d * &wr)).norm();
    Ok(real <= tol.resid_rel * scale && dual <= tol.resid_rel * scale)
}
