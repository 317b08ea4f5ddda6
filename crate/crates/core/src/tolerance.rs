use crate::error::{Error, Result};

/// Thresholds behind every numerical existence decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Singular values at or below `rank_rel * sigma_max` count as zero.
    pub rank_rel: f64,
    /// Normalized residuals at or below this value count as zero.
    pub resid_rel: f64,
}

impl Tolerances {
    pub const DEFAULT_RANK_REL: f64 = 1e-10;
    pub const DEFAULT_RESID_REL: f64 = 1e-8;

    pub fn new(rank_rel: f64, resid_rel: f64) -> Result<Self> {
        for (name, value) in [("rank_rel", rank_rel), ("resid_rel", resid_rel)] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(Self {
            rank_rel,
            resid_rel,
        })
    }

    pub fn within(&self, residual: f64) -> bool {
        residual <= self.resid_rel
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_rel: Self::DEFAULT_RANK_REL,
            resid_rel: Self::DEFAULT_RESID_REL,
        }
    }
}
