//! Rank, index and the classical generalized inverses of real matrices.
//!
//! Every dual construction in this crate reduces to the kernels here. Ranks
//! are decided by singular-value thresholding; the Drazin inverse is computed
//! from the SVD of `A^k` (see [`drazin_inverse`]).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{rel_distance, RealMatrix};
use crate::svd::{thin_svd, Svd};
use crate::tolerance::Tolerances;

/// Number of singular values strictly above `rank_rel * sigma_max`.
pub fn numerical_rank(m: &RealMatrix, tol: &Tolerances) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let threshold = tol.rank_rel * sv[0];
    sv.iter().filter(|&&s| s > threshold).count()
}

/// Rank with an externally supplied scale: counts singular values above
/// `rank_rel * scale`. Used where the matrix may be pure round-off (a
/// projector that is zero in exact arithmetic, say) and its own largest
/// singular value would be a meaningless reference.
pub fn numerical_rank_at_scale(m: &RealMatrix, scale: f64, tol: &Tolerances) -> usize {
    if m.is_empty() {
        return 0;
    }
    let threshold = tol.rank_rel * scale;
    m.singular_values()
        .iter()
        .filter(|&&s| s > threshold)
        .count()
}

/// Rank of `A^j`. A power whose norm has collapsed below `rank_rel * ||A||^j`
/// is treated as exactly zero so that round-off on a nilpotent part does not
/// register as full rank.
pub fn power_rank(a: &RealMatrix, j: usize, tol: &Tolerances) -> usize {
    if j == 0 {
        return a.rows();
    }
    let p = a.pow(j);
    let top = p.spectral_norm();
    let reference = a.spectral_norm().powi(j as i32);
    if top <= tol.rank_rel * reference {
        0
    } else {
        numerical_rank(&p, tol)
    }
}

fn require_square(a: &RealMatrix, op: &'static str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Smallest `k >= 0` with `rank(A^k) = rank(A^(k+1))`.
pub fn index(a: &RealMatrix, tol: &Tolerances) -> Result<usize> {
    require_square(a, "index")?;
    let n = a.rows();
    let mut prev = n;
    for k in 0..=n {
        let next = power_rank(a, k + 1, tol);
        if next == prev {
            return Ok(k);
        }
        prev = next;
    }
    Ok(n)
}

/// Moore-Penrose inverse by thresholded SVD.
pub fn mp_inverse(m: &RealMatrix, tol: &Tolerances) -> RealMatrix {
    if m.is_empty() {
        return RealMatrix::zeros(m.cols(), m.rows());
    }
    let svd = thin_svd(m.inner());
    let rank = svd
        .s
        .iter()
        .filter(|&&s| s > tol.rank_rel * svd.s[0])
        .count();
    pinv_from_svd(&svd, rank)
}

/// Pseudo-inverse keeping exactly the `rank` largest singular values.
pub fn truncated_pinv(m: &RealMatrix, rank: usize) -> RealMatrix {
    if m.is_empty() {
        return RealMatrix::zeros(m.cols(), m.rows());
    }
    let svd = thin_svd(m.inner());
    pinv_from_svd(&svd, rank.min(svd.s.len()))
}

fn pinv_from_svd(svd: &Svd, rank: usize) -> RealMatrix {
    let (m, n) = (svd.u.nrows(), svd.v.nrows());
    let mut out = DMatrix::zeros(n, m);
    for i in 0..rank {
        let vi = svd.v.column(i);
        let ui = svd.u.column(i);
        out += (vi * ui.transpose()) / svd.s[i];
    }
    RealMatrix::from_inner(out)
}

/// Group inverse; exists iff `index(A) <= 1`.
pub fn group_inverse(a: &RealMatrix, tol: &Tolerances) -> Result<RealMatrix> {
    let (ad, k) = drazin_inverse(a, tol)?;
    if k > 1 {
        return Err(Error::NoGroupInverse { index: k });
    }
    Ok(ad)
}

/// Drazin inverse together with the index used.
///
/// With `A^k = U S V^T` (thin, rank `r`) the limit expression
/// `A^k (A^(2k+1))^† A^k` collapses to `U_r (V_r^T A U_r)^(-1) V_r^T`, which
/// never forms the badly conditioned power `A^(2k+1)`. [`drazin_by_power`]
/// evaluates the limit expression literally for cross-checking.
pub fn drazin_inverse(a: &RealMatrix, tol: &Tolerances) -> Result<(RealMatrix, usize)> {
    let k = index(a, tol)?;
    let n = a.rows();
    let r = power_rank(a, k, tol);
    if r == 0 {
        return Ok((RealMatrix::zeros(n, n), k));
    }
    let svd = thin_svd(a.pow(k).inner());
    let u = svd.u.columns(0, r).into_owned();
    let v = svd.v.columns(0, r).into_owned();
    let compressed = RealMatrix::from_inner(v.transpose() * a.inner() * &u);
    let inv = truncated_pinv(&compressed, r);
    let ad = &u * inv.inner() * v.transpose();
    Ok((RealMatrix::from_inner(ad), k))
}

/// `A^l · mp_inverse(A^(2l+1)) · A^l`; equals the Drazin inverse for any
/// `l >= index(A)`.
pub fn drazin_by_power(a: &RealMatrix, l: usize, tol: &Tolerances) -> Result<RealMatrix> {
    require_square(a, "drazin_by_power")?;
    let al = a.pow(l);
    let r = power_rank(a, l, tol);
    let mid = truncated_pinv(&a.pow(2 * l + 1), r);
    Ok(&(&al * &mid) * &al)
}

/// Core inverse `A^# A A^†`; exists iff `index(A) <= 1`.
pub fn core_inverse(a: &RealMatrix, tol: &Tolerances) -> Result<RealMatrix> {
    let (g, k) = drazin_inverse(a, tol)?;
    if k > 1 {
        return Err(Error::NoCoreInverse { index: k });
    }
    Ok(&(&g * a) * &mp_inverse(a, tol))
}

/// `A = P · blockdiag(C, N) · P^(-1)` with `C` nonsingular and `N` nilpotent.
#[derive(Debug, Clone)]
pub struct CoreNilpotent {
    pub p: RealMatrix,
    pub p_inv: RealMatrix,
    pub core: RealMatrix,
    pub nilpotent: RealMatrix,
    /// Size of the core block, `rank(A^k)`.
    pub rank: usize,
    /// Nilpotency index of `N` (0 when `N` is empty).
    pub nilpotency: usize,
}

impl CoreNilpotent {
    pub fn reconstruct(&self) -> RealMatrix {
        let mid = RealMatrix::block_diag(&self.core, &self.nilpotent);
        &(&self.p * &mid) * &self.p_inv
    }

    /// `P · blockdiag(C^(-1), 0) · P^(-1)`.
    pub fn drazin(&self) -> RealMatrix {
        let c_inv = truncated_pinv(&self.core, self.rank);
        let zero = RealMatrix::zeros(self.nilpotent.rows(), self.nilpotent.cols());
        let mid = RealMatrix::block_diag(&c_inv, &zero);
        &(&self.p * &mid) * &self.p_inv
    }
}

/// Core-nilpotent decomposition from orthonormal bases of `R(A^k)` and
/// `N(A^k)`.
pub fn core_nilpotent(a: &RealMatrix, tol: &Tolerances) -> Result<CoreNilpotent> {
    let k = index(a, tol)?;
    let n = a.rows();
    let r = power_rank(a, k, tol);
    let svd = thin_svd(a.pow(k).inner());
    let range = svd.u.columns(0, r).into_owned();
    let null = svd.v.columns(r, n - r).into_owned();
    let p = RealMatrix::hstack(
        &RealMatrix::from_inner(range),
        &RealMatrix::from_inner(null),
    );
    let p_inv = p.try_inverse().ok_or(Error::DecompositionFailure {
        residual: f64::INFINITY,
    })?;
    let similar = &(&p_inv * a) * &p;
    let core = similar.block(0, 0, r, r);
    let nilpotent = similar.block(r, r, n - r, n - r);
    let nilpotency = nilpotency_index(&nilpotent, a.spectral_norm(), tol);
    let out = CoreNilpotent {
        p,
        p_inv,
        core,
        nilpotent,
        rank: r,
        nilpotency,
    };
    let residual = rel_distance(&out.reconstruct(), a);
    if !tol.within(residual) {
        return Err(Error::DecompositionFailure { residual });
    }
    Ok(out)
}

fn nilpotency_index(n: &RealMatrix, scale: f64, tol: &Tolerances) -> usize {
    let size = n.rows();
    if size == 0 {
        return 0;
    }
    let mut power = RealMatrix::identity(size);
    for j in 1..=size {
        power = &power * n;
        if power.spectral_norm() <= tol.rank_rel * scale.powi(j as i32).max(f64::MIN_POSITIVE) {
            return j;
        }
    }
    size
}

/// The four ranks in the block-rank identity
/// `rank [[A, B^k], [C^l, 0]] = rank B^k + rank C^l + rank (I - BB^D) A (I - CC^D)`
/// with `k = index(B)`, `l = index(C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRankTerms {
    pub block: usize,
    pub rank_bk: usize,
    pub rank_cl: usize,
    pub rank_projected: usize,
}

impl BlockRankTerms {
    pub fn identity_holds(&self) -> bool {
        self.block == self.rank_bk + self.rank_cl + self.rank_projected
    }
}

pub fn block_rank_terms(
    a: &RealMatrix,
    b: &RealMatrix,
    c: &RealMatrix,
    tol: &Tolerances,
) -> Result<BlockRankTerms> {
    require_square(a, "block_rank_terms")?;
    let n = a.rows();
    if b.shape() != (n, n) || c.shape() != (n, n) {
        return Err(Error::ShapeMismatch {
            op: "block_rank_terms",
            left: a.shape(),
            right: if b.shape() != (n, n) {
                b.shape()
            } else {
                c.shape()
            },
        });
    }
    let (bd, k) = drazin_inverse(b, tol)?;
    let (cd, l) = drazin_inverse(c, tol)?;
    let bk = b.pow(k);
    let cl = c.pow(l);
    let block = RealMatrix::from_blocks(a, &bk, &cl, &RealMatrix::zeros(n, n));
    let eye = RealMatrix::identity(n);
    let left = &eye - &(b * &bd);
    let right = &eye - &(c * &cd);
    let projected = &(&left * a) * &right;
    // The projectors vanish exactly when B or C is nonsingular, so judge the
    // projected product against the scale of A rather than its own.
    let scale = a
        .spectral_norm()
        .max(bk.spectral_norm())
        .max(cl.spectral_norm());
    Ok(BlockRankTerms {
        block: numerical_rank(&block, tol),
        rank_bk: power_rank(b, k, tol),
        rank_cl: power_rank(c, l, tol),
        rank_projected: numerical_rank_at_scale(&projected, scale, tol),
    })
}
