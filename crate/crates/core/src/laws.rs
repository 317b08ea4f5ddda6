//! Reverse- and forward-order laws, the absorption law, and the D-group and
//! D-core partial orders.
//!
//! Hypotheses and conclusions are reported as separate flag lists, since the
//! hypotheses are sufficient but not necessary.

use std::fmt;
use std::str::FromStr;

use crate::dualgi::{dcgi, dcgi_dual_part, ddgi, dggi, dggi_dual_part, dmpgi};
use crate::dualmat::{dual_distance, DualMatrix};
use crate::error::{Error, Result};
use crate::matrix::{rel_distance, RealMatrix};
use crate::realgi::{core_inverse, drazin_inverse, group_inverse, mp_inverse, numerical_rank};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LawKind {
    Group,
    Drazin,
    MoorePenrose,
    Core,
}

impl LawKind {
    pub const ALL: [LawKind; 4] = [
        LawKind::Group,
        LawKind::Drazin,
        LawKind::MoorePenrose,
        LawKind::Core,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawKind::Group => "group",
            LawKind::Drazin => "drazin",
            LawKind::MoorePenrose => "mp",
            LawKind::Core => "core",
        }
    }

    /// MP and core laws additionally need `A^T C = C A^T`.
    fn needs_transpose(self) -> bool {
        matches!(self, LawKind::MoorePenrose | LawKind::Core)
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "group" => Ok(LawKind::Group),
            "drazin" => Ok(LawKind::Drazin),
            "mp" | "moore-penrose" | "moorepenrose" => Ok(LawKind::MoorePenrose),
            "core" => Ok(LawKind::Core),
            _ => Err(format!("unknown law kind '{s}'")),
        }
    }
}

/// Which dual inverse an order law is evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormChoice {
    /// `A^c - εA^c B A^c`.
    #[default]
    Particular,
    /// The full DGGI, DDGI, DMPGI or DCGI; an absent inverse is an error.
    General,
}

impl FromStr for FormChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "particular" => Ok(FormChoice::Particular),
            "general" => Ok(FormChoice::General),
            _ => Err(format!("unknown form '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Flag {
    pub name: String,
    pub residual: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LawReport {
    pub hypotheses: Vec<Flag>,
    pub conclusions: Vec<Flag>,
}

impl LawReport {
    fn hypothesis(&mut self, name: &str, residual: f64, tol: &Tolerances) {
        self.hypotheses.push(flag(name, residual, tol));
    }

    fn conclusion(&mut self, name: &str, residual: f64, tol: &Tolerances) {
        self.conclusions.push(flag(name, residual, tol));
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|f| f.holds)
    }

    pub fn conclusions_hold(&self) -> bool {
        self.conclusions.iter().all(|f| f.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Flag> {
        self.hypotheses
            .iter()
            .chain(&self.conclusions)
            .find(|f| f.name == name)
    }

    /// `(ÂĈ)^c = Ĉ^c Â^c`.
    pub fn reverse_holds(&self) -> bool {
        self.get("reverse").is_some_and(|f| f.holds)
    }

    /// `(ÂĈ)^c = Â^c Ĉ^c`.
    pub fn forward_holds(&self) -> bool {
        self.get("forward").is_some_and(|f| f.holds)
    }

    pub fn distance(&self, name: &str) -> Option<f64> {
        self.get(name).map(|f| f.residual)
    }
}

fn flag(name: &str, residual: f64, tol: &Tolerances) -> Flag {
    let residual = if residual.is_finite() {
        residual
    } else {
        f64::MAX
    };
    Flag {
        name: name.to_string(),
        residual,
        holds: tol.within(residual),
    }
}

fn real_inverse(kind: LawKind, a: &RealMatrix, tol: &Tolerances) -> Result<RealMatrix> {
    match kind {
        LawKind::Group => group_inverse(a, tol),
        LawKind::Drazin => Ok(drazin_inverse(a, tol)?.0),
        LawKind::MoorePenrose => Ok(mp_inverse(a, tol)),
        LawKind::Core => core_inverse(a, tol),
    }
}

/// `A^c - εA^c B A^c` for `c` one of `#`, `D`, `†`, `⊕`.
pub fn particular_form(kind: LawKind, a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    let x = real_inverse(kind, a.real(), tol)?;
    let dual = -&(&(&x * a.dual()) * &x);
    DualMatrix::new(x, dual)
}

fn general_form(kind: LawKind, a: &DualMatrix, tol: &Tolerances) -> Result<DualMatrix> {
    let (res, missing) = match kind {
        LawKind::Group => (dggi(a, tol)?, Error::NoDggi),
        LawKind::Drazin => (ddgi(a, tol)?, Error::NoDdgi),
        LawKind::MoorePenrose => (dmpgi(a, tol), Error::NoDmpgi),
        LawKind::Core => (dcgi(a, tol)?, Error::NoDcgi),
    };
    res.inverse.ok_or(missing)
}

pub fn dual_inverse(
    kind: LawKind,
    form: FormChoice,
    a: &DualMatrix,
    tol: &Tolerances,
) -> Result<DualMatrix> {
    match form {
        FormChoice::Particular => particular_form(kind, a, tol),
        FormChoice::General => general_form(kind, a, tol),
    }
}

fn commutator_residual(x: &RealMatrix, y: &RealMatrix) -> f64 {
    rel_distance(&(x * y), &(y * x))
}

/// Reverse- and forward-order laws for `Â = A + εB`, `Ĉ = C + εD`.
///
/// Hypotheses: `AC = CA`, `C^c B = B C^c`, `A^c D = D A^c`, and for the MP
/// and core kinds `A^T C = C A^T`. Conclusions: `reverse`, `forward`, and
/// `swap` (`Â^c Ĉ^c = Ĉ^c Â^c`), each a [`dual_distance`].
pub fn check_order_law(
    kind: LawKind,
    a: &DualMatrix,
    c: &DualMatrix,
    form: FormChoice,
    tol: &Tolerances,
) -> Result<LawReport> {
    let product = a.multiply(c)?;
    let ai = dual_inverse(kind, form, a, tol)?;
    let ci = dual_inverse(kind, form, c, tol)?;
    let pi = dual_inverse(kind, form, &product, tol)?;

    let (ar, b) = (a.real(), a.dual());
    let (cr, d) = (c.real(), c.dual());
    let mut report = LawReport::default();
    report.hypothesis("ac_commute", commutator_residual(ar, cr), tol);
    if kind.needs_transpose() {
        report.hypothesis(
            "at_c_commute",
            rel_distance(&(&ar.transpose() * cr), &(cr * &ar.transpose())),
            tol,
        );
    }
    report.hypothesis(
        "c_inverse_b_commute",
        commutator_residual(ci.real(), b),
        tol,
    );
    report.hypothesis(
        "a_inverse_d_commute",
        commutator_residual(ai.real(), d),
        tol,
    );

    let a_then_c = &ai * &ci;
    let c_then_a = &ci * &ai;
    report.conclusion("reverse", dual_distance(&pi, &c_then_a)?, tol);
    report.conclusion("forward", dual_distance(&pi, &a_then_c)?, tol);
    report.conclusion("swap", dual_distance(&a_then_c, &c_then_a)?, tol);
    Ok(report)
}

fn rank_gap(a: usize, b: usize, c: usize) -> f64 {
    (a.max(b).max(c) - a.min(b).min(c)) as f64
}

/// `Â^D (Â + Ĉ) Ĉ^D = Â^D + Ĉ^D` with particular-form DDGIs.
///
/// Hypothesis flags: `real_equals_dual` (`A` equal to the dual part of
/// `Ĉ`), `same_range` and `same_null`; the rank flags carry the spread of
/// the three ranks compared as their residual.
pub fn absorption_check(a: &DualMatrix, c: &DualMatrix, tol: &Tolerances) -> Result<LawReport> {
    let sum = a.add(c)?;
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "absorption_check",
            rows: a.shape().0,
            cols: a.shape().1,
        });
    }
    let ai = particular_form(LawKind::Drazin, a, tol)?;
    let ci = particular_form(LawKind::Drazin, c, tol)?;
    let (ar, cr) = (a.real(), c.real());
    let (ra, rc) = (numerical_rank(ar, tol), numerical_rank(cr, tol));

    let mut report = LawReport::default();
    report.hypothesis("real_equals_dual", rel_distance(ar, c.dual()), tol);
    report.hypothesis(
        "same_range",
        rank_gap(numerical_rank(&RealMatrix::hstack(ar, cr), tol), ra, rc),
        tol,
    );
    report.hypothesis(
        "same_null",
        rank_gap(numerical_rank(&RealMatrix::vstack(ar, cr), tol), ra, rc),
        tol,
    );
    let lhs = &(&ai * &sum) * &ci;
    let rhs = ai.add(&ci)?;
    report.conclusion("absorption", dual_distance(&lhs, &rhs)?, tol);
    Ok(report)
}

/// `X̂^c X̂ = X̂^c Ŷ` and `X̂ X̂^c = Ŷ X̂^c` given `X̂^c`.
fn one_sided_equalities(
    x: &DualMatrix,
    y: &DualMatrix,
    xi: &DualMatrix,
    tol: &Tolerances,
) -> Result<LawReport> {
    let mut report = LawReport::default();
    report.conclusion("left", dual_distance(&(xi * x), &(xi * y))?, tol);
    report.conclusion("right", dual_distance(&(x * xi), &(y * xi))?, tol);
    Ok(report)
}

/// Real-part order plus the dual parts of the two one-sided equalities,
/// `X^c X_0 + R X = X^c Y_0 + R Y` and `X R + X_0 X^c = Y R + Y_0 X^c`.
fn characterization(
    x: &DualMatrix,
    y: &DualMatrix,
    xc: &RealMatrix,
    r: &RealMatrix,
    tol: &Tolerances,
) -> LawReport {
    let (xr, x0) = (x.real(), x.dual());
    let (yr, y0) = (y.real(), y.dual());
    let mut report = LawReport::default();
    report.conclusion("real_left", rel_distance(&(xc * xr), &(xc * yr)), tol);
    report.conclusion("real_right", rel_distance(&(xr * xc), &(yr * xc)), tol);
    report.conclusion(
        "dual_left",
        rel_distance(&(&(xc * x0) + &(r * xr)), &(&(xc * y0) + &(r * yr))),
        tol,
    );
    report.conclusion(
        "dual_right",
        rel_distance(&(&(xr * r) + &(x0 * xc)), &(&(yr * r) + &(y0 * xc))),
        tol,
    );
    report
}

fn check_pair(x: &DualMatrix, y: &DualMatrix, op: &'static str) -> Result<()> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            op,
            rows: x.shape().0,
            cols: x.shape().1,
        });
    }
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch {
            op,
            left: x.shape(),
            right: y.shape(),
        });
    }
    Ok(())
}

/// D-group order by definition, with the general DGGI of `X̂`.
pub fn d_group_order(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<LawReport> {
    check_pair(x, y, "d_group_leq")?;
    let xi = general_form(LawKind::Group, x, tol)?;
    one_sided_equalities(x, y, &xi, tol)
}

pub fn d_group_leq(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(d_group_order(x, y, tol)?.conclusions_hold())
}

/// D-group order through real matrices: `X ≤^# Y` plus the dual-part
/// equalities, `R` the DGGI dual part formula.
pub fn d_group_order_char(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<LawReport> {
    check_pair(x, y, "d_group_leq_char")?;
    let g = group_inverse(x.real(), tol)?;
    let q = &RealMatrix::identity(x.shape().0) - &(x.real() * &g);
    let r = dggi_dual_part(&g, x.dual(), &q);
    Ok(characterization(x, y, &g, &r, tol))
}

pub fn d_group_leq_char(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(d_group_order_char(x, y, tol)?.conclusions_hold())
}

/// D-core order by definition, with the DCGI of `X̂`.
pub fn d_core_order(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<LawReport> {
    check_pair(x, y, "d_core_leq")?;
    let xi = general_form(LawKind::Core, x, tol)?;
    one_sided_equalities(x, y, &xi, tol)
}

pub fn d_core_leq(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(d_core_order(x, y, tol)?.conclusions_hold())
}

/// D-core order through real matrices: `X ≤^⊕ Y` plus the dual-part
/// equalities with the DCGI dual part.
pub fn d_core_order_char(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<LawReport> {
    check_pair(x, y, "d_core_leq_char")?;
    let xc = core_inverse(x.real(), tol)?;
    let r = dcgi_dual_part(x.real(), x.dual(), tol)?;
    Ok(characterization(x, y, &xc, &r, tol))
}

pub fn d_core_leq_char(x: &DualMatrix, y: &DualMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(d_core_order_char(x, y, tol)?.conclusions_hold())
}
