//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::fs;
use std::path::Path;
use std::time::Instant;

use dualinv_core::dsolve::{in_range_power, DualSystem};
use dualinv_core::fixtures::{
    gen_commuting_pair, gen_ddgi_invertible, gen_ddgi_violating, gen_group_invertible,
    gen_ordered_chain, gen_ordered_pair, gen_ordered_pair_with, PairTail,
};
use dualinv_core::laws::{
    check_order_law, d_core_leq, d_core_leq_char, d_group_leq, d_group_leq_char,
};
use dualinv_core::realgi::{
    block_rank_terms, core_inverse, drazin_inverse, group_inverse, index, mp_inverse,
    numerical_rank,
};
use dualinv_core::{
    dcgi, ddgi, ddgi_absorbed, ddgi_exists_aux, ddgi_exists_rank, dggi, dmpgi, dual_distance,
    rel_distance, verify_inverse, DualMatrix, DualVector, FormChoice, LawKind, RealMatrix,
    Tolerances,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

type Check = Result<String, String>;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn rm(rows: &[&[f64]]) -> RealMatrix {
    RealMatrix::from_rows(rows).unwrap()
}

fn dm(real: &[&[f64]], dual: &[&[f64]]) -> DualMatrix {
    DualMatrix::new(rm(real), rm(dual)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn max_dev(a: &RealMatrix, b: &RealMatrix) -> f64 {
    (a - b).max_abs()
}

fn write_doc(dir: &Path, name: &str, m: &DualMatrix) -> String {
    let doc = serde_json::json!({"real": m.real().to_rows(), "dual": m.dual().to_rows()});
    let path = dir.join(name);
    fs::write(&path, doc.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let code = dualinv_cli::run(
        std::iter::once("dualinv").chain(args.iter().copied()),
        &mut out,
    );
    (code, serde_json::from_slice(&out).unwrap_or(Value::Null))
}

fn cli_matrix(v: &Value) -> RealMatrix {
    let rows: Vec<Vec<f64>> = serde_json::from_value(v.clone()).unwrap();
    RealMatrix::from_rows(&rows).unwrap()
}

fn index_two_example() -> DualMatrix {
    dm(
        &[&[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]],
        &[&[1.0, 2.0, 0.0], &[2.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
    )
}

fn criterion_1(dir: &Path) -> Check {
    let a = index_two_example();
    let path = write_doc(dir, "c1.json", &a);
    let (code, doc) = cli(&["ddgi", "--input", &path]);
    ensure(code == 0 && doc["exists"] == true, || {
        format!("exit {code}")
    })?;
    ensure(doc["k"] == 2, || format!("k = {}", doc["k"]))?;
    let real = cli_matrix(&doc["inverse"]["real"]);
    let dual = cli_matrix(&doc["inverse"]["dual"]);
    let want_real = rm(&[&[1.0, 1.0, 1.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]);
    let want_dual = rm(&[&[-5.0, -5.0, -7.0], &[2.0, 2.0, 2.0], &[0.0, 0.0, 0.0]]);
    let dev = max_dev(&real, &want_real).max(max_dev(&dual, &want_dual));
    ensure(dev <= 1e-9, || format!("entry deviation {dev:e}"))?;
    let x = DualMatrix::new(real, dual).unwrap();
    let worst = verify_inverse(dualinv_core::InverseKind::Ddgi, &a, &x, 2, &tol())
        .unwrap()
        .max();
    ensure(worst <= 1e-10, || format!("verify residual {worst:e}"))?;
    Ok(format!(
        "max entry deviation {dev:.1e}, max residual {worst:.1e}"
    ))
}

fn criterion_2(dir: &Path) -> Check {
    let a = dm(
        &[&[4.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 5.0]],
        &[&[1.0, 0.0, 4.0], &[1.0, 2.0, 0.0], &[0.0, 2.0, 0.0]],
    );
    let path = write_doc(dir, "c2.json", &a);
    let (code, doc) = cli(&["dggi", "--input", &path]);
    ensure(code == 2 && doc["exists"] == false, || {
        format!("exit {code}, {}", doc["exists"])
    })?;
    let g = group_inverse(a.real(), &tol()).map_err(|e| e.to_string())?;
    let dev = max_dev(&g, &RealMatrix::from_diagonal(&[0.25, 0.0, 0.2]));
    ensure(dev <= 1e-12, || format!("A^# deviation {dev:e}"))?;
    Ok(format!("exit 2, A^# deviation {dev:.1e}"))
}

fn criterion_3() -> Check {
    let a = dm(
        &[&[-1.0, -1.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 0.0, 0.0]],
        &[&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]],
    );
    let res = ddgi(&a, &tol()).map_err(|e| e.to_string())?;
    let x = res.inverse.ok_or("ddgi absent")?;
    let size = x.real().max_abs().max(x.dual().max_abs());
    ensure(size <= 1e-12, || format!("largest entry {size:e}"))?;
    let absorbed = ddgi_absorbed(&a, &tol()).map_err(|e| e.to_string())?;
    let y = absorbed.inverse.ok_or("absorbed form absent")?;
    let dist = dual_distance(&x, &y).unwrap();
    ensure(dist <= 1e-12, || {
        format!("absorbed form differs by {dist:e}")
    })?;
    Ok(format!("largest entry {size:.1e}"))
}

fn criterion_4() -> Check {
    let a = dm(
        &[&[2.0, 1.0, 3.0], &[0.0, 0.0, 0.0], &[1.0, 1.0, 2.0]],
        &[&[2.0, 2.0, 4.0], &[3.0, -1.0, 2.0], &[-4.0, -2.0, -6.0]],
    );
    let b = dm(
        &[&[1.0, -1.0, 0.0], &[0.0, 0.0, 0.0], &[1.0, -3.0, 3.0]],
        &[&[2.0, -4.0, 3.0], &[0.0, 0.0, 0.0], &[1.0, -5.0, 6.0]],
    );
    let t = tol();
    let inv = |m: &DualMatrix| dggi(m, &t).unwrap().inverse;
    let ag = inv(&a).ok_or("Â^# absent")?;
    let bg = inv(&b).ok_or("B̂^# absent")?;
    let pg = inv(&(&a * &b)).ok_or("(ÂB̂)^# absent")?;
    let want = rm(&[&[2.0, -5.0, -3.0], &[0.0, 0.0, 0.0], &[-1.0, 3.0, 2.0]]);
    let dev = max_dev(ag.real(), &want);
    ensure(dev <= 1e-9, || format!("real part of Â^# off by {dev:e}"))?;
    let ab = &ag * &bg;
    let ba = &bg * &ag;
    let d = [
        dual_distance(&pg, &ab).unwrap(),
        dual_distance(&pg, &ba).unwrap(),
        dual_distance(&ab, &ba).unwrap(),
    ];
    ensure(d.iter().all(|&x| x >= 0.1), || format!("distances {d:?}"))?;
    Ok(format!(
        "pairwise distances {:.3} {:.3} {:.3}",
        d[0], d[1], d[2]
    ))
}

/// `(n, r, k)` with `1 <= r < n <= 8`, `1 <= k <= min(3, n - r)`.
fn ddgi_params(rng: &mut ChaCha8Rng) -> (usize, usize, usize) {
    let n = rng.random_range(2..=8);
    let r = rng.random_range(1..n);
    let k = rng.random_range(1..=(n - r).min(3));
    (n, r, k)
}

fn positives() -> Vec<(DualMatrix, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..100)
        .map(|_| {
            let (n, r, k) = ddgi_params(&mut rng);
            (gen_ddgi_invertible(n, r, k, rng.random()).unwrap(), k)
        })
        .collect()
}

fn criterion_5(pos: &[(DualMatrix, usize)]) -> Check {
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut worst: f64 = 0.0;
    for (i, (a, k)) in pos.iter().enumerate() {
        let res = ddgi(a, &t).unwrap();
        let routes = [
            res.exists,
            ddgi_exists_rank(a, &t).unwrap(),
            ddgi_exists_aux(a, &t).unwrap(),
        ];
        ensure(routes == [true; 3], || {
            format!("positive {i}: routes {routes:?}")
        })?;
        ensure(res.k == *k, || format!("positive {i}: k {} vs {k}", res.k))?;
        let r = verify_inverse(res.kind, a, res.inverse.as_ref().unwrap(), res.k, &t)
            .unwrap()
            .max();
        ensure(r <= 1e-8, || format!("positive {i}: residual {r:e}"))?;
        worst = worst.max(r);
    }
    for i in 0..100 {
        let (n, r, k) = ddgi_params(&mut rng);
        let a = gen_ddgi_violating(n, r, k, rng.random()).unwrap();
        let routes = [
            ddgi(&a, &t).unwrap().exists,
            ddgi_exists_rank(&a, &t).unwrap(),
            ddgi_exists_aux(&a, &t).unwrap(),
        ];
        ensure(routes == [false; 3], || {
            format!("negative {i}: routes {routes:?}")
        })?;
    }
    Ok(format!(
        "200 instances agree, worst positive residual {worst:.1e}"
    ))
}

fn criterion_6() -> Check {
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut dmpgi_count = 0;
    for i in 0..100 {
        let n = rng.random_range(2..=8);
        let r = rng.random_range(1..=n);
        let a = gen_group_invertible(n, r, rng.random()).unwrap();
        let d = ddgi(&a, &t)
            .unwrap()
            .inverse
            .ok_or(format!("{i}: ddgi absent"))?;
        let g = dggi(&a, &t)
            .unwrap()
            .inverse
            .ok_or(format!("{i}: dggi absent"))?;
        let dist = dual_distance(&d, &g).unwrap();
        ensure(dist <= 1e-9, || format!("{i}: ddgi vs dggi {dist:e}"))?;
        worst = worst.max(dist);
        let block = RealMatrix::from_blocks(a.dual(), a.real(), a.real(), &RealMatrix::zeros(n, n));
        let rank_test = numerical_rank(&block, &t) == 2 * numerical_rank(a.real(), &t);
        let exists = dmpgi(&a, &t).exists;
        ensure(exists == rank_test, || {
            format!("{i}: dmpgi {exists}, rank test {rank_test}")
        })?;
        dmpgi_count += usize::from(exists);
    }
    Ok(format!(
        "worst distance {worst:.1e}, dmpgi present on {dmpgi_count}/100"
    ))
}

fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> DualVector {
    let mut draw = || {
        (0..n)
            .map(|_| rng.random_range(-3.0..3.0))
            .collect::<Vec<f64>>()
    };
    let real = draw();
    DualVector::new(real, draw()).unwrap()
}

fn criterion_7(pos: &[(DualMatrix, usize)], dir: &Path) -> Check {
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for (i, (a, k)) in pos.iter().enumerate() {
        let n = a.shape().0;
        let sys = DualSystem::new(a, &t).map_err(|e| format!("{i}: {e}"))?;
        let w = random_vector(n, &mut rng);
        let b = a.apply(&a.power(*k).unwrap().apply(&w).unwrap()).unwrap();
        let x = sys.solve_unique(&b, &t).map_err(|e| format!("{i}: {e}"))?;
        let r = sys.residual(&x, &b).unwrap();
        ensure(r <= 1e-8, || format!("{i}: residual {r:e}"))?;
        ensure(in_range_power(a, &x, &t).unwrap(), || {
            format!("{i}: x outside R(Â^k)")
        })?;
        worst = worst.max(r);
        for _ in 0..5 {
            let z = random_vector(n, &mut rng);
            let g = sys.general_solution(&b, &z, &t).unwrap();
            let r = sys.residual(&g, &b).unwrap();
            ensure(r <= 1e-8, || format!("{i}: general residual {r:e}"))?;
            worst = worst.max(r);
        }

        // (I - AA^†) u escapes R(A), so no real x solves the real part.
        let u = RealMatrix::column(random_vector(n, &mut rng).real()).unwrap();
        let ar = a.real();
        let escape = &u - &(&(ar * &mp_inverse(ar, &t)) * &u);
        let bad = DualMatrix::new(escape, RealMatrix::zeros(n, 1)).unwrap();
        let ap = write_doc(dir, &format!("c7_a{i}.json"), a);
        let bp = write_doc(dir, &format!("c7_b{i}.json"), &bad);
        let (code, _) = cli(&["solve", "--input", &ap, "--rhs", &bp]);
        ensure(code == 2, || {
            format!("{i}: inconsistent rhs gave exit {code}")
        })?;
    }
    Ok(format!(
        "100 systems, 600 solutions, worst residual {worst:.1e}, 100 rejections"
    ))
}

fn criterion_8() -> Check {
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for kind in LawKind::ALL {
        for i in 0..100 {
            let n = rng.random_range(1..=6);
            let seed: u64 = rng.random();
            let (a, c) = gen_commuting_pair(kind, n, seed).unwrap();
            let report = check_order_law(kind, &a, &c, FormChoice::Particular, &t)
                .map_err(|e| format!("{kind} {i}: {e}"))?;
            ensure(report.hypotheses_hold(), || {
                format!("{kind} {i}: {:?}", report.hypotheses)
            })?;
            for name in ["reverse", "forward"] {
                let d = report.distance(name).unwrap();
                ensure(d <= 1e-8, || format!("{kind} {i}: {name} {d:e}"))?;
                worst = worst.max(d);
            }
        }
    }
    Ok(format!("400 pairs, worst law distance {worst:.1e}"))
}

fn criterion_9() -> Check {
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut reflexive, mut core_checked) = (0, 0);
    for i in 0..100 {
        let n = rng.random_range(2..=8);
        let r = rng.random_range(1..n);
        let (x, y) = gen_ordered_pair(n, r, rng.random()).unwrap();
        let def = d_group_leq(&x, &y, &t).unwrap();
        let chr = d_group_leq_char(&x, &y, &t).unwrap();
        ensure(def && chr, || {
            format!("pair {i}: definition {def}, characterization {chr}")
        })?;
        for m in [&x, &y] {
            if dggi(m, &t).unwrap().exists {
                ensure(d_group_leq(m, m, &t).unwrap(), || {
                    format!("pair {i}: not reflexive")
                })?;
                reflexive += 1;
            }
        }
        if dcgi(&x, &t).unwrap().exists {
            let def = d_core_leq(&x, &y, &t).unwrap();
            let chr = d_core_leq_char(&x, &y, &t).unwrap();
            ensure(def == chr, || format!("pair {i}: D-core {def} vs {chr}"))?;
            ensure(d_core_leq(&x, &x, &t).unwrap(), || {
                format!("pair {i}: D-core not reflexive")
            })?;
            core_checked += 1;
        }
    }
    for i in 0..50 {
        let n = rng.random_range(3..=8);
        let r1 = rng.random_range(1..n - 1);
        let r2 = rng.random_range(r1 + 1..n);
        let (x, y, z) = gen_ordered_chain(n, r1, r2, rng.random()).unwrap();
        let links = [
            d_group_leq(&x, &y, &t).unwrap(),
            d_group_leq(&y, &z, &t).unwrap(),
            d_group_leq(&x, &z, &t).unwrap(),
        ];
        ensure(links == [true; 3], || format!("chain {i}: {links:?}"))?;
    }
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = rng.random_range(2..=8);
        let r = rng.random_range(1..n);
        let (x, y) = gen_ordered_pair_with(n, r, PairTail::Zero, rng.random()).unwrap();
        let both = d_group_leq(&x, &y, &t).unwrap() && d_group_leq(&y, &x, &t).unwrap();
        ensure(both, || {
            format!("symmetric pair {i}: not ordered both ways")
        })?;
        let d = dual_distance(&x, &y).unwrap();
        ensure(d <= 1e-8, || format!("symmetric pair {i}: distance {d:e}"))?;
        worst = worst.max(d);
    }
    Ok(format!(
        "100 pairs, {reflexive} reflexive checks, 50 chains, 50 antisymmetric pairs (worst {worst:.1e}), {core_checked} D-core cross-checks"
    ))
}

fn int_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    let v = (0..rows * cols)
        .map(|_| f64::from(rng.random_range(-3i32..=3)))
        .collect();
    RealMatrix::new(rows, cols, v).unwrap()
}

fn sample(n: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    if rng.random_bool(0.5) {
        int_matrix(n, n, rng)
    } else {
        let r = rng.random_range(1..=n);
        &int_matrix(n, r, rng) * &int_matrix(r, n, rng)
    }
}

fn criterion_10() -> Check {
    let t = tol();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..100 {
        let n = rng.random_range(1..=6);
        let a = int_matrix(n, n, &mut rng);
        let b = sample(n, &mut rng);
        let c = sample(n, &mut rng);
        let terms = block_rank_terms(&a, &b, &c, &t).map_err(|e| format!("{i}: {e}"))?;
        ensure(terms.identity_holds(), || format!("triple {i}: {terms:?}"))?;
    }
    let mut worst: f64 = 0.0;
    let mut deficient = 0;
    for i in 0..200 {
        let n = rng.random_range(1..=6);
        let a = sample(n, &mut rng);
        deficient += usize::from(numerical_rank(&a, &t) < n);
        let mut res = Vec::new();
        let p = mp_inverse(&a, &t);
        res.push(rel_distance(&(&(&a * &p) * &a), &a));
        res.push(rel_distance(&(&(&p * &a) * &p), &p));
        res.push(rel_distance(&(&a * &p), &(&a * &p).transpose()));
        res.push(rel_distance(&(&p * &a), &(&p * &a).transpose()));
        let (d, k) = drazin_inverse(&a, &t).map_err(|e| format!("{i}: {e}"))?;
        ensure(k == index(&a, &t).unwrap(), || {
            format!("{i}: index disagrees")
        })?;
        res.push(rel_distance(&(&a.pow(k + 1) * &d), &a.pow(k)));
        res.push(rel_distance(&(&(&d * &a) * &d), &d));
        res.push(rel_distance(&(&a * &d), &(&d * &a)));
        if k <= 1 {
            let g = group_inverse(&a, &t).unwrap();
            res.push(rel_distance(&(&(&a * &g) * &a), &a));
            res.push(rel_distance(&(&(&g * &a) * &g), &g));
            res.push(rel_distance(&(&a * &g), &(&g * &a)));
            let x = core_inverse(&a, &t).unwrap();
            res.push(rel_distance(&(&(&a * &x) * &a), &a));
            res.push(rel_distance(&(&(&a * &x) * &x), &x));
            res.push(rel_distance(&(&a * &x), &(&a * &x).transpose()));
        }
        let m = res.iter().copied().fold(0.0, f64::max);
        ensure(m <= 1e-8, || format!("matrix {i}: residual {m:e}"))?;
        worst = worst.max(m);
    }
    Ok(format!(
        "100 triples exact, 200 matrices ({deficient} rank-deficient), worst residual {worst:.1e}"
    ))
}

fn main() {
    let dir = TempDir::new().unwrap();
    let start = Instant::now();
    let pos = positives();
    let results: Vec<(&str, Check)> = vec![
        ("index-two example DDGI", criterion_1(dir.path())),
        ("diagonal example has no DGGI", criterion_2(dir.path())),
        ("nilpotent example DDGI is zero", criterion_3()),
        ("order laws fail on the 3x3 counterexample", criterion_4()),
        ("DDGI existence routes agree", criterion_5(&pos)),
        ("DDGI specializes to DGGI", criterion_6()),
        ("dual linear solver", criterion_7(&pos, dir.path())),
        ("order laws on commuting pairs", criterion_8()),
        ("D-group and D-core orders", criterion_9()),
        ("real kernels", criterion_10()),
    ];
    let mut failed = 0;
    for (i, (name, res)) in results.iter().enumerate() {
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
