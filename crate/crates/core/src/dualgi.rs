//! Generalized inverses of dual matrices.
//!
//! Every constructor returns an [`InverseResult`]: non-existence is a value
//! carrying the violating residual, never an error. Errors are reserved for
//! shape problems. Each returned inverse has been pushed back through
//! [`verify_inverse`], and `exists` is true only if every residual in the
//! report is within `resid_rel`.

use std::fmt;
use std::str::FromStr;

use crate::dualmat::{dual_distance, DualMatrix};
use crate::error::{Error, Result};
use crate::matrix::{rel_distance, RealMatrix};
use crate::realgi::{
    core_inverse, drazin_inverse, index, mp_inverse, numerical_rank, numerical_rank_at_scale,
    power_rank,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InverseKind {
    /// `A^† - εA^†BA^†`, always defined.
    Mpdgi,
    /// Dual Moore-Penrose inverse.
    Dmpgi,
    /// Dual group inverse.
    Dggi,
    /// Dual core inverse.
    Dcgi,
    /// Dual Drazin inverse.
    Ddgi,
    /// `Â^D Â Â^†`.
    Ddmpgi,
}

impl InverseKind {
    pub const ALL: [InverseKind; 6] = [
        InverseKind::Mpdgi,
        InverseKind::Dmpgi,
        InverseKind::Dggi,
        InverseKind::Dcgi,
        InverseKind::Ddgi,
        InverseKind::Ddmpgi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InverseKind::Mpdgi => "mpdgi",
            InverseKind::Dmpgi => "dmpgi",
            InverseKind::Dggi => "dggi",
            InverseKind::Dcgi => "dcgi",
            InverseKind::Ddgi => "ddgi",
            InverseKind::Ddmpgi => "ddmpgi",
        }
    }
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InverseKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown inverse kind '{s}'"))
    }
}

/// A rank equality checked alongside the residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct RankCheck {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
}

impl RankCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Named, normalized residuals in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResidualReport {
    residuals: Vec<(String, f64)>,
    ranks: Vec<RankCheck>,
}

impl ResidualReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Non-finite values are stored as `f64::MAX` so the report stays finite.
    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        let value = if value.is_finite() {
            value.abs()
        } else {
            f64::MAX
        };
        self.residuals.push((name.into(), value));
    }

    pub fn push_rank(&mut self, name: impl Into<String>, lhs: usize, rhs: usize) {
        self.ranks.push(RankCheck {
            name: name.into(),
            lhs,
            rhs,
        });
    }

    pub fn extend(&mut self, other: ResidualReport) {
        self.residuals.extend(other.residuals);
        self.ranks.extend(other.ranks);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    pub fn rank(&self, name: &str) -> Option<&RankCheck> {
        self.ranks.iter().find(|r| r.name == name)
    }

    pub fn residuals(&self) -> impl Iterator<Item = (&str, f64)> {
        self.residuals.iter().map(|(n, v)| (n.as_str(), *v))
    }

    pub fn ranks(&self) -> &[RankCheck] {
        &self.ranks
    }

    pub fn max(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, &(_, v)| m.max(v))
    }

    pub fn all_within(&self, tol: &Tolerances) -> bool {
        self.residuals.iter().all(|&(_, v)| tol.within(v))
    }

    pub fn first_violation(&self, tol: &Tolerances) -> Option<(&str, f64)> {
        self.residuals().find(|&(_, v)| !tol.within(v))
    }
}

/// Why an inverse was reported as absent.
#[derive(Debug, Clone, PartialEq)]
pub enum Missing {
    /// The existence condition of the kind fails.
    ConditionViolated { condition: String, residual: f64 },
    /// The real part has index above 1 (group and core kinds).
    IndexTooHigh { index: usize },
    /// A candidate was built but fails a defining equation.
    VerificationFailed { equation: String, residual: f64 },
    /// A factor of a composite inverse is absent.
    FactorMissing(InverseKind),
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseResult {
    pub kind: InverseKind,
    pub exists: bool,
    pub inverse: Option<DualMatrix>,
    /// Index used: the real-part index for DDGI and DDMPGI, 1 for DGGI and
    /// DCGI, 0 for the Moore-Penrose kinds.
    pub k: usize,
    pub reason: Option<Missing>,
    pub report: ResidualReport,
}

impl InverseResult {
    fn finish(
        kind: InverseKind,
        k: usize,
        candidate: Option<DualMatrix>,
        condition: &str,
        report: ResidualReport,
        tol: &Tolerances,
    ) -> Self {
        let violation = report.first_violation(tol).map(|(n, v)| (n.to_string(), v));
        match (candidate, violation) {
            (Some(inv), None) => Self {
                kind,
                exists: true,
                inverse: Some(inv),
                k,
                reason: None,
                report,
            },
            (_, Some((name, residual))) => {
                let reason = if name == condition {
                    Missing::ConditionViolated {
                        condition: name,
                        residual,
                    }
                } else {
                    Missing::VerificationFailed {
                        equation: name,
                        residual,
                    }
                };
                Self::absent(kind, k, reason, report)
            }
            (None, None) => Self::absent(
                kind,
                k,
                Missing::ConditionViolated {
                    condition: condition.to_string(),
                    residual: f64::MAX,
                },
                report,
            ),
        }
    }

    fn absent(kind: InverseKind, k: usize, reason: Missing, report: ResidualReport) -> Self {
        Self {
            kind,
            exists: false,
            inverse: None,
            k,
            reason: Some(reason),
            report,
        }
    }
}

fn require_square(a: &DualMatrix, op: &'static str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op,
            rows: a.shape().0,
            cols: a.shape().1,
        })
    }
}

/// `||m|| / (1 + scale)` for an equation of the form `m = 0` whose operands
/// have combined norm `scale`.
fn zero_residual(m: &RealMatrix, scale: f64) -> f64 {
    m.norm() / (1.0 + scale)
}

/// `A^† - εA^†BA^†`.
pub fn mpdgi(a: &DualMatrix, tol: &Tolerances) -> DualMatrix {
    let x = mp_inverse(a.real(), tol);
    let dual = -&(&(&x * a.dual()) * &x);
    DualMatrix::new(x, dual).expect("shapes agree")
}

/// Dual Moore-Penrose inverse.
///
/// Exists iff `(I - AA^†) B (I - A^†A) = 0`; the rank form
/// `rank [[B, A], [A, 0]] = 2 rank A` is recorded in the report as
/// `block_rank`.
pub fn dmpgi(a: &DualMatrix, tol: &Tolerances) -> InverseResult {
    const CONDITION: &str = "projector_condition";
    let (ar, b) = (a.real(), a.dual());
    let (m, n) = ar.shape();
    let ap = mp_inverse(ar, tol);
    let left = &RealMatrix::identity(m) - &(ar * &ap);
    let right = &RealMatrix::identity(n) - &(&ap * ar);
    let mut report = ResidualReport::new();
    report.push(
        CONDITION,
        zero_residual(
            &(&(&left * b) * &right),
            left.norm() * b.norm() * right.norm(),
        ),
    );
    let block = RealMatrix::from_blocks(b, ar, ar, &RealMatrix::zeros(m, n));
    report.push_rank(
        "block_rank",
        numerical_rank(&block, tol),
        2 * numerical_rank(ar, tol),
    );

    if !report.all_within(tol) {
        return InverseResult::finish(InverseKind::Dmpgi, 0, None, CONDITION, report, tol);
    }
    let bt = b.transpose();
    let ata_p = mp_inverse(&(&ar.transpose() * ar), tol);
    let aat_p = mp_inverse(&(ar * &ar.transpose()), tol);
    let r = &(&(&(&ap * b) * &ap) - &(&(&ata_p * &bt) * &left)) - &(&(&right * &bt) * &aat_p);
    let inv = DualMatrix::new(ap, -&r).expect("shapes agree");
    report.extend(verify_penrose(a, &inv));
    InverseResult::finish(InverseKind::Dmpgi, 0, Some(inv), CONDITION, report, tol)
}

/// Index-too-high marker: `rank A - rank A^2` as a residual, nonzero exactly
/// when the group and core kinds cannot exist.
fn rank_drop(a: &RealMatrix, tol: &Tolerances) -> f64 {
    power_rank(a, 1, tol).saturating_sub(power_rank(a, 2, tol)) as f64
}

/// Dual group inverse, for real parts of index at most 1.
pub fn dggi(a: &DualMatrix, tol: &Tolerances) -> Result<InverseResult> {
    const CONDITION: &str = "projector_condition";
    require_square(a, "dggi")?;
    let (ar, b) = (a.real(), a.dual());
    let (g, k) = drazin_inverse(ar, tol)?;
    let mut report = ResidualReport::new();
    if k > 1 {
        report.push("rank_drop", rank_drop(ar, tol));
        return Ok(InverseResult::absent(
            InverseKind::Dggi,
            1,
            Missing::IndexTooHigh { index: k },
            report,
        ));
    }
    let n = ar.rows();
    let q = &RealMatrix::identity(n) - &(ar * &g);
    report.push(
        CONDITION,
        zero_residual(&(&(&q * b) * &q), q.norm() * q.norm() * b.norm()),
    );
    if !report.all_within(tol) {
        return Ok(InverseResult::finish(
            InverseKind::Dggi,
            1,
            None,
            CONDITION,
            report,
            tol,
        ));
    }
    let r = dggi_dual_part(&g, b, &q);
    let inv = DualMatrix::new(g, r).expect("shapes agree");
    report.extend(verify_inverse(InverseKind::Dggi, a, &inv, 1, tol)?);
    Ok(InverseResult::finish(
        InverseKind::Dggi,
        1,
        Some(inv),
        CONDITION,
        report,
        tol,
    ))
}

/// `-A^# B A^# + (A^#)^2 B Q + Q B (A^#)^2` with `Q = I - AA^#`.
pub(crate) fn dggi_dual_part(g: &RealMatrix, b: &RealMatrix, q: &RealMatrix) -> RealMatrix {
    let g2 = g * g;
    &(&-&(&(g * b) * g) + &(&(&g2 * b) * q)) + &(&(q * b) * &g2)
}

/// Dual part of the dual core inverse,
/// `-A^⊕BA^⊕ + (I - AA^#) B (A^⊕)^2 + A^⊕ (A^⊕)^T B^T (I - AA^†)`.
pub(crate) fn dcgi_dual_part(
    a: &RealMatrix,
    b: &RealMatrix,
    tol: &Tolerances,
) -> Result<RealMatrix> {
    let (g, _) = drazin_inverse(a, tol)?;
    let x = core_inverse(a, tol)?;
    let n = a.rows();
    let eye = RealMatrix::identity(n);
    let q = &eye - &(a * &g);
    let range_perp = &eye - &(a * &mp_inverse(a, tol));
    let first = -&(&(&x * b) * &x);
    let second = &(&q * b) * &(&x * &x);
    let third = &(&(&x * &x.transpose()) * &b.transpose()) * &range_perp;
    Ok(&(&first + &second) + &third)
}

/// Dual core inverse. The candidate is accepted iff it satisfies the three
/// defining equations; `core_condition`, `(I - AA^†) B (I - AA^#) = 0`, is
/// reported alongside.
pub fn dcgi(a: &DualMatrix, tol: &Tolerances) -> Result<InverseResult> {
    const CONDITION: &str = "core_condition";
    require_square(a, "dcgi")?;
    let (ar, b) = (a.real(), a.dual());
    let k = index(ar, tol)?;
    let mut report = ResidualReport::new();
    if k > 1 {
        report.push("rank_drop", rank_drop(ar, tol));
        return Ok(InverseResult::absent(
            InverseKind::Dcgi,
            1,
            Missing::IndexTooHigh { index: k },
            report,
        ));
    }
    let n = ar.rows();
    let (g, _) = drazin_inverse(ar, tol)?;
    let eye = RealMatrix::identity(n);
    let q = &eye - &(ar * &g);
    let range_perp = &eye - &(ar * &mp_inverse(ar, tol));
    report.push(
        CONDITION,
        zero_residual(
            &(&(&range_perp * b) * &q),
            range_perp.norm() * b.norm() * q.norm(),
        ),
    );
    let inv =
        DualMatrix::new(core_inverse(ar, tol)?, dcgi_dual_part(ar, b, tol)?).expect("shapes agree");
    report.extend(verify_inverse(InverseKind::Dcgi, a, &inv, 1, tol)?);
    Ok(InverseResult::finish(
        InverseKind::Dcgi,
        1,
        Some(inv),
        CONDITION,
        report,
        tol,
    ))
}

/// Pieces shared by the DDGI routines.
struct DrazinParts {
    ad: RealMatrix,
    k: usize,
    /// Dual part of `Â^k`.
    d: RealMatrix,
}

fn drazin_parts(a: &DualMatrix, tol: &Tolerances) -> Result<DrazinParts> {
    let (ad, k) = drazin_inverse(a.real(), tol)?;
    let d = a.power_dual_part(k)?;
    Ok(DrazinParts { ad, k, d })
}

/// Dual Drazin inverse `A^D + εR` with
/// `R = -A^D B A^D + (A^D)^(k+1) D (I - AA^D) + (I - AA^D) D (A^D)^(k+1)`,
/// `D` the dual part of `Â^k`.
///
/// Exists iff `(I - AA^D) D (A^D A - I) = 0` (`nilpotent_coupling`).
pub fn ddgi(a: &DualMatrix, tol: &Tolerances) -> Result<InverseResult> {
    const CONDITION: &str = "nilpotent_coupling";
    require_square(a, "ddgi")?;
    let (ar, b) = (a.real(), a.dual());
    let DrazinParts { ad, k, d } = drazin_parts(a, tol)?;
    let n = ar.rows();
    let eye = RealMatrix::identity(n);
    let q = &eye - &(ar * &ad);
    let back = &(&ad * ar) - &eye;
    let mut report = ResidualReport::new();
    report.push(
        CONDITION,
        zero_residual(&(&(&q * &d) * &back), q.norm() * d.norm() * back.norm()),
    );
    if !report.all_within(tol) {
        return Ok(InverseResult::finish(
            InverseKind::Ddgi,
            k,
            None,
            CONDITION,
            report,
            tol,
        ));
    }
    let adk1 = ad.pow(k + 1);
    let r = &(&-&(&(&ad * b) * &ad) + &(&(&adk1 * &d) * &q)) + &(&(&q * &d) * &adk1);
    let inv = DualMatrix::new(ad, r).expect("shapes agree");
    report.extend(verify_inverse(InverseKind::Ddgi, a, &inv, k, tol)?);
    Ok(InverseResult::finish(
        InverseKind::Ddgi,
        k,
        Some(inv),
        CONDITION,
        report,
        tol,
    ))
}

/// `A^k`, with a power that [`power_rank`] classifies as zero returned as an
/// exact zero matrix.
pub(crate) fn settled_power(a: &RealMatrix, k: usize, tol: &Tolerances) -> RealMatrix {
    if k > 0 && power_rank(a, k, tol) == 0 {
        RealMatrix::zeros(a.rows(), a.cols())
    } else {
        a.pow(k)
    }
}

/// Existence of the DDGI by `rank [[D, A^k], [A^k, 0]] = 2 rank(A^k)`.
pub fn ddgi_exists_rank(a: &DualMatrix, tol: &Tolerances) -> Result<bool> {
    require_square(a, "ddgi_exists_rank")?;
    let ar = a.real();
    let DrazinParts { k, d, .. } = drazin_parts(a, tol)?;
    let n = ar.rows();
    let ak = settled_power(ar, k, tol);
    let block = RealMatrix::from_blocks(&d, &ak, &ak, &RealMatrix::zeros(n, n));
    let scale = block.spectral_norm().max(ar.spectral_norm().powi(k as i32));
    Ok(numerical_rank_at_scale(&block, scale, tol) == 2 * power_rank(ar, k, tol))
}

/// Existence of the DDGI by existence of the DMPGI of `A^k + εD`.
pub fn ddgi_exists_aux(a: &DualMatrix, tol: &Tolerances) -> Result<bool> {
    require_square(a, "ddgi_exists_aux")?;
    let DrazinParts { k, d, .. } = drazin_parts(a, tol)?;
    let aux = DualMatrix::new(settled_power(a.real(), k, tol), d)?;
    Ok(dmpgi(&aux, tol).exists)
}

/// DDGI when the dual part of `Â^k` is absorbed by the core projector,
/// `AA^D D = D AA^D = D`.
///
/// Under that hypothesis both correction terms of the general formula vanish
/// and the inverse is `A^D - εA^D B A^D`. (For index 1, `D = B`.)
pub fn ddgi_absorbed(a: &DualMatrix, tol: &Tolerances) -> Result<InverseResult> {
    require_square(a, "ddgi_absorbed")?;
    let (ar, b) = (a.real(), a.dual());
    let DrazinParts { ad, k, d } = drazin_parts(a, tol)?;
    let proj = ar * &ad;
    let left = rel_distance(&(&proj * &d), &d);
    let right = rel_distance(&(&d * &proj), &d);
    if !tol.within(left) || !tol.within(right) {
        return Err(Error::HypothesisFailed {
            what: "AA^D D = D AA^D = D",
            residual: left.max(right),
        });
    }
    let r = -&(&(&ad * b) * &ad);
    let inv = DualMatrix::new(ad, r).expect("shapes agree");
    let mut report = ResidualReport::new();
    report.push("absorbed_left", left);
    report.push("absorbed_right", right);
    report.extend(verify_inverse(InverseKind::Ddgi, a, &inv, k, tol)?);
    Ok(InverseResult::finish(
        InverseKind::Ddgi,
        k,
        Some(inv),
        "",
        report,
        tol,
    ))
}

/// `Â^D Â Â^†`, defined when both factors exist.
pub fn ddmpgi(a: &DualMatrix, tol: &Tolerances) -> Result<InverseResult> {
    require_square(a, "ddmpgi")?;
    let drazin = ddgi(a, tol)?;
    let mp = dmpgi(a, tol);
    let k = drazin.k;
    let (Some(ad), Some(ap)) = (&drazin.inverse, &mp.inverse) else {
        let missing = if drazin.exists {
            InverseKind::Dmpgi
        } else {
            InverseKind::Ddgi
        };
        let mut report = ResidualReport::new();
        for (name, v) in drazin.report.residuals() {
            report.push(format!("ddgi.{name}"), v);
        }
        for (name, v) in mp.report.residuals() {
            report.push(format!("dmpgi.{name}"), v);
        }
        return Ok(InverseResult::absent(
            InverseKind::Ddmpgi,
            k,
            Missing::FactorMissing(missing),
            report,
        ));
    };
    let inv = &(ad * a) * ap;
    let report = verify_ddmpgi(a, &inv, ad, ap, k)?;
    Ok(InverseResult::finish(
        InverseKind::Ddmpgi,
        k,
        Some(inv),
        "",
        report,
        tol,
    ))
}

fn verify_penrose(a: &DualMatrix, x: &DualMatrix) -> ResidualReport {
    let ax = a * x;
    let xa = x * a;
    let mut report = ResidualReport::new();
    report.push("axa", dist(&(&ax * a), a));
    report.push("xax", dist(&(&xa * x), x));
    report.push("ax_symmetric", dist(&ax, &ax.transpose()));
    report.push("xa_symmetric", dist(&xa, &xa.transpose()));
    report
}

fn verify_ddmpgi(
    a: &DualMatrix,
    x: &DualMatrix,
    ad: &DualMatrix,
    ap: &DualMatrix,
    k: usize,
) -> Result<ResidualReport> {
    let ak = a.power(k)?;
    let xa = x * a;
    let mut report = ResidualReport::new();
    report.push("xax", dist(&(&xa * x), x));
    report.push("xa_drazin", dist(&xa, &(ad * a)));
    report.push("power_x", dist(&(&ak * x), &(&ak * ap)));
    Ok(report)
}

fn dist(l: &DualMatrix, r: &DualMatrix) -> f64 {
    dual_distance(l, r).unwrap_or(f64::MAX)
}

/// Residuals of the defining equations of `kind` for the candidate `x`.
///
/// * DDGI: `Â^k X̂ Â = Â^k`, `X̂ Â X̂ = X̂`, `ÂX̂ = X̂Â`, plus the real part
///   against `A^D` and the three dual-part characterizations.
/// * DGGI: `ÂX̂Â = Â`, `X̂ÂX̂ = X̂`, `ÂX̂ = X̂Â`, plus their dual-part forms.
/// * DCGI: `ÂX̂Â = Â`, `ÂX̂² = X̂`, `(ÂX̂)^T = ÂX̂`.
/// * DMPGI and MPDGI: the four Penrose equations.
/// * DDMPGI: `X̂ÂX̂ = X̂`, `X̂Â = Â^DÂ`, `Â^k X̂ = Â^k Â^†`.
///
/// `k` is only read for DDGI and DDMPGI.
pub fn verify_inverse(
    kind: InverseKind,
    a: &DualMatrix,
    x: &DualMatrix,
    k: usize,
    tol: &Tolerances,
) -> Result<ResidualReport> {
    let (m, n) = a.shape();
    if x.shape() != (n, m) {
        return Err(Error::ShapeMismatch {
            op: "verify_inverse",
            left: a.shape(),
            right: x.shape(),
        });
    }
    if !matches!(kind, InverseKind::Mpdgi | InverseKind::Dmpgi) {
        require_square(a, "verify_inverse")?;
    }
    let (ar, b) = (a.real(), a.dual());
    let (xr, r) = (x.real(), x.dual());
    let mut report = ResidualReport::new();
    match kind {
        InverseKind::Mpdgi | InverseKind::Dmpgi => report.extend(verify_penrose(a, x)),
        InverseKind::Dggi => {
            let ax = a * x;
            report.push("axa", dist(&(&ax * a), a));
            report.push("xax", dist(&(x * &(a * x)), x));
            report.push("commute", dist(&ax, &(x * a)));
            let b_form = &(&(&(ar * xr) * b) + &(&(ar * r) * ar)) + &(&(b * xr) * ar);
            report.push("dual_axa", rel_distance(b, &b_form));
            let r_form = &(&(&(xr * ar) * r) + &(&(xr * b) * xr)) + &(&(r * ar) * xr);
            report.push("dual_xax", rel_distance(r, &r_form));
            report.push(
                "dual_commute",
                rel_distance(&(&(ar * r) + &(b * xr)), &(&(r * ar) + &(xr * b))),
            );
        }
        InverseKind::Dcgi => {
            let ax = a * x;
            report.push("axa", dist(&(&ax * a), a));
            report.push("axx", dist(&(&ax * x), x));
            report.push("ax_symmetric", dist(&ax, &ax.transpose()));
        }
        InverseKind::Ddgi => {
            let ak = a.power(k)?;
            report.push("power_absorption", dist(&(&(&ak * x) * a), &ak));
            report.push("xax", dist(&(x * &(a * x)), x));
            report.push("commute", dist(&(a * x), &(x * a)));
            let (ad, _) = drazin_inverse(ar, tol)?;
            report.push("real_part", rel_distance(xr, &ad));
            let d = ak.dual();
            let akr = ak.real();
            let eye = RealMatrix::identity(n);
            let first = &(&(akr * xr) * b) + &(&(akr * r) * ar);
            let tail = d * &(&(xr * ar) - &eye);
            let lhs = &first + &tail;
            let scale = akr.norm() * (xr.norm() * b.norm() + r.norm() * ar.norm())
                + d.norm() * (1.0 + xr.norm() * ar.norm());
            report.push("dual_power_absorption", zero_residual(&lhs, scale));
            let r_form = &(&(&(xr * ar) * r) + &(&(xr * b) * xr)) + &(&(r * ar) * xr);
            report.push("dual_xax", rel_distance(r, &r_form));
            report.push(
                "dual_commute",
                rel_distance(&(&(ar * r) + &(b * xr)), &(&(r * ar) + &(xr * b))),
            );
        }
        InverseKind::Ddmpgi => {
            let drazin = ddgi(a, tol)?;
            let mp = dmpgi(a, tol);
            match (&drazin.inverse, &mp.inverse) {
                (Some(ad), Some(ap)) => report.extend(verify_ddmpgi(a, x, ad, ap, k)?),
                _ => {
                    report.push("factor_missing", f64::MAX);
                }
            }
        }
    }
    Ok(report)
}
