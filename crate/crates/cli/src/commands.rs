use std::path::Path;

use dualinv_core::fixtures::{
    gen_commuting_pair, gen_ddgi_invertible, gen_ddgi_violating, gen_group_invertible,
    gen_group_violating, gen_ordered_chain, gen_ordered_pair,
};
use dualinv_core::laws::{
    absorption_check, check_order_law, d_core_order, d_core_order_char, d_group_order,
    d_group_order_char, Flag,
};
use dualinv_core::realgi::{
    core_inverse, drazin_inverse, group_inverse, index, mp_inverse, numerical_rank,
};
use dualinv_core::{
    dcgi, ddgi, ddgi_exists_aux, ddgi_exists_rank, ddmpgi, dggi, dmpgi, mpdgi, verify_inverse,
    DualMatrix, DualSystem, FormChoice, InverseKind, InverseResult, LawKind, LawReport, Missing,
    RealMatrix, ResidualReport, Tolerances,
};
use serde_json::{json, Value};

use crate::args::{
    Cli, Command, Family, FormArg, GenArgs, Input, KindArg, LawArg, LawArgs, OrderArg, OrderArgs,
    SolveArgs, VerifyArgs,
};
use crate::io::{dual_json, read_matrix, read_vector, real_json, vector_json, Doc};
use crate::{Failure, Outcome, EXIT_ABSENT, EXIT_OK};

pub(crate) fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Rank(_) => "rank",
        Command::Index(_) => "index",
        Command::Pinv(_) => "pinv",
        Command::Ginv(_) => "ginv",
        Command::Dinv(_) => "dinv",
        Command::Coreinv(_) => "coreinv",
        Command::Mpdgi(_) => "mpdgi",
        Command::Dmpgi(_) => "dmpgi",
        Command::Dggi(_) => "dggi",
        Command::Dcgi(_) => "dcgi",
        Command::Ddgi(_) => "ddgi",
        Command::Ddmpgi(_) => "ddmpgi",
        Command::Solve(_) => "solve",
        Command::Verify(_) => "verify",
        Command::Law(_) => "law",
        Command::Order(_) => "order",
        Command::Gen(_) => "gen",
    }
}

fn input_of(cmd: &Command) -> Option<&Input> {
    match cmd {
        Command::Rank(i)
        | Command::Index(i)
        | Command::Pinv(i)
        | Command::Ginv(i)
        | Command::Dinv(i)
        | Command::Coreinv(i)
        | Command::Mpdgi(i)
        | Command::Dmpgi(i)
        | Command::Dggi(i)
        | Command::Dcgi(i)
        | Command::Ddgi(i)
        | Command::Ddmpgi(i) => Some(i),
        _ => None,
    }
}

pub(crate) fn single_input(cmd: &Command) -> bool {
    input_of(cmd).is_some()
}

fn input_path<'a>(input: &'a Input, batch: Option<&'a Path>) -> Result<&'a Path, Failure> {
    batch
        .or(input.input.as_deref())
        .ok_or_else(|| Failure::usage("missing --input"))
}

fn tolerances_json(tol: &Tolerances) -> Value {
    json!({"rank_rel": tol.rank_rel, "resid_rel": tol.resid_rel})
}

fn header(command: &str, tol: &Tolerances) -> Doc {
    let mut doc = Doc::new(command);
    doc.set("tolerances", tolerances_json(tol));
    doc
}

fn done(code: i32, doc: Doc) -> Result<Outcome, Failure> {
    Ok(Outcome {
        code,
        doc: doc.into_value(),
    })
}

fn residuals_json(report: &ResidualReport) -> Value {
    let map: serde_json::Map<String, Value> = report
        .residuals()
        .map(|(n, v)| (n.to_string(), json!(v)))
        .collect();
    Value::Object(map)
}

fn rank_checks_json(report: &ResidualReport) -> Value {
    report
        .ranks()
        .iter()
        .map(|r| json!({"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "holds": r.holds()}))
        .collect()
}

fn reason_json(reason: &Missing) -> Value {
    match reason {
        Missing::ConditionViolated {
            condition,
            residual,
        } => json!({"type": "condition_violated", "condition": condition, "residual": residual}),
        Missing::IndexTooHigh { index } => json!({"type": "index_too_high", "index": index}),
        Missing::VerificationFailed { equation, residual } => {
            json!({"type": "verification_failed", "equation": equation, "residual": residual})
        }
        Missing::FactorMissing(kind) => json!({"type": "factor_missing", "factor": kind.name()}),
    }
}

fn inverse_outcome(mut doc: Doc, res: &InverseResult) -> Result<Outcome, Failure> {
    doc.set("kind", res.kind.name())
        .set("exists", res.exists)
        .set("k", res.k)
        .set(
            "inverse",
            res.inverse.as_ref().map_or(Value::Null, dual_json),
        )
        .set(
            "reason",
            res.reason.as_ref().map_or(Value::Null, reason_json),
        )
        .set("residuals", residuals_json(&res.report))
        .set("rank_checks", rank_checks_json(&res.report));
    done(if res.exists { EXIT_OK } else { EXIT_ABSENT }, doc)
}

fn real_verify(
    kind: InverseKind,
    a: &RealMatrix,
    x: &RealMatrix,
    k: usize,
    tol: &Tolerances,
) -> Result<Value, Failure> {
    let report = verify_inverse(
        kind,
        &DualMatrix::from_real(a.clone()),
        &DualMatrix::from_real(x.clone()),
        k,
        tol,
    )?;
    let map: serde_json::Map<String, Value> = report
        .residuals()
        .filter(|(n, _)| !n.starts_with("dual_"))
        .map(|(n, v)| (n.to_string(), json!(v)))
        .collect();
    Ok(Value::Object(map))
}

fn real_command(
    cmd: &Command,
    a: &DualMatrix,
    tol: &Tolerances,
    mut doc: Doc,
) -> Result<Outcome, Failure> {
    let ar = a.real();
    match cmd {
        Command::Rank(_) => {
            doc.set("rank", numerical_rank(ar, tol));
        }
        Command::Index(_) => {
            doc.set("index", index(ar, tol)?);
        }
        Command::Pinv(_) => {
            let x = mp_inverse(ar, tol);
            doc.set("pinv", real_json(&x)).set(
                "residuals",
                real_verify(InverseKind::Dmpgi, ar, &x, 0, tol)?,
            );
        }
        Command::Dinv(_) => {
            let (x, k) = drazin_inverse(ar, tol)?;
            doc.set("index", k)
                .set("drazin", real_json(&x))
                .set("residuals", real_verify(InverseKind::Ddgi, ar, &x, k, tol)?);
        }
        Command::Ginv(_) | Command::Coreinv(_) => {
            let group = matches!(cmd, Command::Ginv(_));
            let (key, kind) = if group {
                ("group", InverseKind::Dggi)
            } else {
                ("core", InverseKind::Dcgi)
            };
            let found = if group {
                group_inverse(ar, tol)
            } else {
                core_inverse(ar, tol)
            };
            let k = index(ar, tol)?;
            doc.set("index", k);
            match found {
                Ok(x) => {
                    doc.set("exists", true)
                        .set(key, real_json(&x))
                        .set("residuals", real_verify(kind, ar, &x, 1, tol)?);
                }
                Err(e) => {
                    doc.set("exists", false)
                        .set(key, Value::Null)
                        .set("reason", e.to_string());
                    return done(EXIT_ABSENT, doc);
                }
            }
        }
        _ => unreachable!("not a real-kernel command"),
    }
    done(EXIT_OK, doc)
}

fn single(cmd: &Command, tol: &Tolerances, path: &Path) -> Result<Outcome, Failure> {
    let a = read_matrix(path)?;
    let mut doc = header(name(cmd), tol);
    doc.set("input", dual_json(&a));
    match cmd {
        Command::Mpdgi(_) => {
            let x = mpdgi(&a, tol);
            let report = verify_inverse(InverseKind::Mpdgi, &a, &x, 0, tol)?;
            doc.set("kind", "mpdgi")
                .set("inverse", dual_json(&x))
                .set("residuals", residuals_json(&report));
            done(EXIT_OK, doc)
        }
        Command::Dmpgi(_) => inverse_outcome(doc, &dmpgi(&a, tol)),
        Command::Dggi(_) => inverse_outcome(doc, &dggi(&a, tol)?),
        Command::Dcgi(_) => inverse_outcome(doc, &dcgi(&a, tol)?),
        Command::Ddgi(_) => {
            doc.set(
                "existence",
                json!({
                    "rank_test": ddgi_exists_rank(&a, tol)?,
                    "auxiliary_test": ddgi_exists_aux(&a, tol)?,
                }),
            );
            inverse_outcome(doc, &ddgi(&a, tol)?)
        }
        Command::Ddmpgi(_) => inverse_outcome(doc, &ddmpgi(&a, tol)?),
        _ => real_command(cmd, &a, tol, doc),
    }
}

fn solve(args: &SolveArgs, tol: &Tolerances) -> Result<Outcome, Failure> {
    let a = read_matrix(input_path(&args.input, None)?)?;
    let b = read_vector(&args.rhs)?;
    let z = args.z.as_deref().map(read_vector).transpose()?;
    let mut doc = header("solve", tol);
    doc.set("input", dual_json(&a)).set("rhs", vector_json(&b));
    if let Some(z) = &z {
        doc.set("z", vector_json(z));
    }
    let system = DualSystem::new(&a, tol)?;
    let residual = system.consistency_residual(&b)?;
    let consistent = system.is_consistent(&b, tol)?;
    doc.set("k", system.k())
        .set("drazin", dual_json(system.drazin()))
        .set("consistent", consistent)
        .set("consistency_residual", residual);
    if !consistent {
        doc.set("solution", Value::Null);
        return done(EXIT_ABSENT, doc);
    }
    let x = system.solve_unique(&b, tol)?;
    doc.set("solution", vector_json(&x))
        .set("residual", system.residual(&x, &b)?);
    if let Some(z) = &z {
        let g = system.general_solution(&b, z, tol)?;
        doc.set("general_solution", vector_json(&g))
            .set("general_residual", system.residual(&g, &b)?);
    }
    done(EXIT_OK, doc)
}

fn kind_of(arg: KindArg) -> InverseKind {
    match arg {
        KindArg::Mpdgi => InverseKind::Mpdgi,
        KindArg::Dmpgi => InverseKind::Dmpgi,
        KindArg::Dggi => InverseKind::Dggi,
        KindArg::Dcgi => InverseKind::Dcgi,
        KindArg::Ddgi => InverseKind::Ddgi,
        KindArg::Ddmpgi => InverseKind::Ddmpgi,
    }
}

fn verify(args: &VerifyArgs, tol: &Tolerances) -> Result<Outcome, Failure> {
    let kind = kind_of(args.kind);
    let a = read_matrix(input_path(&args.input, None)?)?;
    let x = read_matrix(&args.candidate)?;
    let k = match (args.k, kind) {
        (Some(k), _) => k,
        (None, InverseKind::Ddgi | InverseKind::Ddmpgi) => index(a.real(), tol)?,
        (None, InverseKind::Dggi | InverseKind::Dcgi) => 1,
        (None, _) => 0,
    };
    let report = verify_inverse(kind, &a, &x, k, tol)?;
    let passes = report.all_within(tol);
    let mut doc = header("verify", tol);
    doc.set("kind", kind.name())
        .set("k", k)
        .set("input", dual_json(&a))
        .set("candidate", dual_json(&x))
        .set("passes", passes)
        .set("max_residual", report.max())
        .set("residuals", residuals_json(&report));
    done(if passes { EXIT_OK } else { EXIT_ABSENT }, doc)
}

fn flags_json(flags: &[Flag]) -> Value {
    flags
        .iter()
        .map(|f| json!({"name": f.name, "residual": f.residual, "holds": f.holds}))
        .collect()
}

fn law_json(report: &LawReport) -> Value {
    json!({
        "hypotheses": flags_json(&report.hypotheses),
        "conclusions": flags_json(&report.conclusions),
        "hypotheses_hold": report.hypotheses_hold(),
        "conclusions_hold": report.conclusions_hold(),
    })
}

fn two(paths: &[std::path::PathBuf]) -> Result<(DualMatrix, DualMatrix), Failure> {
    match paths {
        [a, c] => Ok((read_matrix(a)?, read_matrix(c)?)),
        _ => Err(Failure::usage(format!(
            "expected exactly two --input files, got {}",
            paths.len()
        ))),
    }
}

fn law(args: &LawArgs, tol: &Tolerances) -> Result<Outcome, Failure> {
    let (a, c) = two(&args.inputs)?;
    let mut doc = header("law", tol);
    doc.set("inputs", json!([dual_json(&a), dual_json(&c)]));
    let kind = match args.kind {
        LawArg::Group => LawKind::Group,
        LawArg::Drazin => LawKind::Drazin,
        LawArg::Mp => LawKind::MoorePenrose,
        LawArg::Core => LawKind::Core,
        LawArg::Absorption => {
            let report = absorption_check(&a, &c, tol)?;
            doc.set("kind", "absorption")
                .set("report", law_json(&report));
            return done(EXIT_OK, doc);
        }
    };
    let form = match args.form {
        FormArg::Particular => FormChoice::Particular,
        FormArg::General => FormChoice::General,
    };
    let report = check_order_law(kind, &a, &c, form, tol)?;
    doc.set("kind", kind.name())
        .set(
            "form",
            match form {
                FormChoice::Particular => "particular",
                FormChoice::General => "general",
            },
        )
        .set("report", law_json(&report))
        .set("reverse_holds", report.reverse_holds())
        .set("forward_holds", report.forward_holds());
    done(EXIT_OK, doc)
}

fn order(args: &OrderArgs, tol: &Tolerances) -> Result<Outcome, Failure> {
    let (x, y) = two(&args.inputs)?;
    let (kind, def, chr) = match args.kind {
        OrderArg::Group => (
            "group",
            d_group_order(&x, &y, tol)?,
            d_group_order_char(&x, &y, tol)?,
        ),
        OrderArg::Core => (
            "core",
            d_core_order(&x, &y, tol)?,
            d_core_order_char(&x, &y, tol)?,
        ),
    };
    let leq = def.conclusions_hold();
    let mut doc = header("order", tol);
    doc.set("kind", kind)
        .set("inputs", json!([dual_json(&x), dual_json(&y)]))
        .set("leq", leq)
        .set("characterization_agrees", leq == chr.conclusions_hold())
        .set("definition", law_json(&def))
        .set("characterization", law_json(&chr));
    done(EXIT_OK, doc)
}

fn gen(args: &GenArgs, tol: &Tolerances, seed: u64) -> Result<Outcome, Failure> {
    let family = match args.family {
        Family::Ddgi => "ddgi",
        Family::Group => "group",
        Family::OrderedPair => "ordered-pair",
        Family::Chain => "chain",
        Family::Commuting => "commuting",
    };
    let mut doc = header("gen", tol);
    doc.set("family", family)
        .set("negative", args.negative)
        .set("seed", seed)
        .set("n", args.n)
        .set("r", args.r)
        .set("k", args.k);
    if args.negative && !matches!(args.family, Family::Ddgi | Family::Group) {
        return Err(Failure::usage(format!(
            "--negative is only available for ddgi and group, not {family}"
        )));
    }
    let single = |m: DualMatrix, mut doc: Doc| {
        doc.set("real", real_json(m.real()))
            .set("dual", real_json(m.dual()));
        done(EXIT_OK, doc)
    };
    let many = |ms: &[DualMatrix], mut doc: Doc| {
        doc.set("matrices", ms.iter().map(dual_json).collect::<Vec<_>>());
        done(EXIT_OK, doc)
    };
    let (n, r, k) = (args.n, args.r, args.k);
    match (args.family, args.negative) {
        (Family::Ddgi, false) => single(gen_ddgi_invertible(n, r, k, seed)?, doc),
        (Family::Ddgi, true) => single(gen_ddgi_violating(n, r, k, seed)?, doc),
        (Family::Group, false) => single(gen_group_invertible(n, r, seed)?, doc),
        (Family::Group, true) => single(gen_group_violating(n, r, seed)?, doc),
        (Family::OrderedPair, _) => {
            let (x, y) = gen_ordered_pair(n, r, seed)?;
            many(&[x, y], doc)
        }
        (Family::Chain, _) => {
            let r2 = args.r2.ok_or_else(|| Failure::usage("chain needs --r2"))?;
            doc.set("r2", r2);
            let (x, y, z) = gen_ordered_chain(n, r, r2, seed)?;
            many(&[x, y, z], doc)
        }
        (Family::Commuting, _) => {
            let kind = match args.kind {
                LawArg::Group => LawKind::Group,
                LawArg::Drazin => LawKind::Drazin,
                LawArg::Mp => LawKind::MoorePenrose,
                LawArg::Core => LawKind::Core,
                LawArg::Absorption => {
                    return Err(Failure::usage("commuting pairs need an order-law kind"))
                }
            };
            doc.set("kind", kind.name());
            let (a, c) = gen_commuting_pair(kind, n, seed)?;
            many(&[a, c], doc)
        }
    }
}

pub(crate) fn execute(
    cli: &Cli,
    tol: &Tolerances,
    batch: Option<&Path>,
) -> Result<Outcome, Failure> {
    if let Some(input) = input_of(&cli.command) {
        return single(&cli.command, tol, input_path(input, batch)?);
    }
    match &cli.command {
        Command::Solve(a) => solve(a, tol),
        Command::Verify(a) => verify(a, tol),
        Command::Law(a) => law(a, tol),
        Command::Order(a) => order(a, tol),
        Command::Gen(a) => gen(a, tol, cli.global.seed),
        _ => unreachable!("single-input commands handled above"),
    }
}
