//! Acceptance suite: one PASS/FAIL line per criterion, with timings
//! against the runtime budgets. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use novikov_cli::commands::{check_report, novikov_report, ss_report, BettiSource, RunConfig, StrategyKind};
use novikov_cli::corpus;
use novikov_cli::document::{ComplexDocument, Document};
use novikov_core::algebra::{rational, RankStrategy, Rational, RationalMatrix};
use novikov_core::hodge::{
    evaluate_at, ims_identity_residual, kernel_vs_exact, laplacian_spectrum, operator_norm, planted_instance,
    random_ims_instance, rank_perturbation_check, KernelStatus,
};
use novikov_core::morse_bott::{check_main_theorem, check_strong_inequalities, isolated_morse_polynomial, novikov_polynomial};
use novikov_core::spectral::{page, DeformationFamily};
use novikov_core::twisted::{alternating_sum, jump_scan, novikov_numbers, TwistedComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type Outcome = Result<String, String>;

fn is_zero(q: &Rational) -> bool {
    *q == rational(0)
}

fn complex_doc(name: &str) -> ComplexDocument {
    corpus::get(name).unwrap().into_complex().unwrap()
}

fn complex(name: &str) -> TwistedComplex {
    complex_doc(name).to_complex().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_cfg() -> RunConfig {
    RunConfig { strategy: StrategyKind::Exact, ..RunConfig::default() }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap()
}

fn criterion_1() -> Outcome {
    let mut out = Vec::new();
    for cfg in [RunConfig::default(), exact_cfg()] {
        let r = novikov_report(&complex_doc("circle_xi1"), &[], &cfg).map_err(|e| e.to_string())?;
        ensure(r.betti == [0, 0], || format!("circle_xi1 betti {:?}", r.betti))?;
        out.push(to_json(&r));
    }
    for doc in corpus::all() {
        let Document::Complex(cd) = doc else { continue };
        let c = cd.to_complex().unwrap();
        if !c.is_twisted() {
            continue;
        }
        for cfg in [RunConfig::default(), exact_cfg()] {
            let r = novikov_report(&cd, &[], &cfg).map_err(|e| e.to_string())?;
            ensure(r.betti[0] == 0, || format!("{}: beta_0 = {}", cd.name, r.betti[0]))?;
            out.push(to_json(&json!({"name": cd.name, "beta0": r.betti[0]})));
        }
    }
    Ok(out.join("\n"))
}

fn criterion_2() -> Outcome {
    let probes: Vec<Vec<Rational>> = [1, 2, 3, -1].iter().map(|&v| vec![rational(v)]).collect();
    let mut out = Vec::new();
    for strategy in [RankStrategy::default(), RankStrategy::Exact] {
        let scan = jump_scan(&complex("circle_xi1"), &probes, &strategy).map_err(|e| e.to_string())?;
        let flags: Vec<bool> = scan.probes.iter().map(|p| p.any_jump()).collect();
        ensure(flags == [true, false, false, false], || format!("jump flags {flags:?}"))?;
        ensure(scan.probes[0].dims == [1, 1] && scan.background == [0, 0], || {
            format!("dims {:?} vs background {:?}", scan.probes[0].dims, scan.background)
        })?;
        out.push(to_json(&scan));
    }
    Ok(out.join("\n"))
}

fn criterion_3() -> Outcome {
    let morse = corpus::get("torus_bott").unwrap().into_morse().unwrap();
    let mut out = Vec::new();
    for (complex_name, quotient) in [("torus_xi0", vec![]), ("torus_xi10", vec![1, 1])] {
        let doc = complex_doc(complex_name);
        let r = check_report(&morse, BettiSource::Complex(&doc), &exact_cfg()).map_err(|e| e.to_string())?;
        let q: Vec<String> = r.certificate.quotient.coeffs().iter().map(ToString::to_string).collect();
        let expected: Vec<String> = quotient.iter().map(ToString::to_string).collect();
        ensure(q == expected, || format!("{complex_name}: Q = {}", r.quotient))?;
        ensure(r.certificate.holds && r.certificate.quotient.all_nonnegative(), || {
            format!("{complex_name}: certificate fails")
        })?;
        out.push(to_json(&r));
    }
    Ok(out.join("\n"))
}

fn criterion_4() -> Outcome {
    let mut out = Vec::new();
    for (morse_name, complex_name) in corpus::PAIRS {
        let morse = corpus::get(morse_name).unwrap().into_morse().unwrap();
        let doc = complex_doc(complex_name);
        let r = check_report(&morse, BettiSource::Complex(&doc), &exact_cfg()).map_err(|e| e.to_string())?;
        let m = r.euler_poincare.morse_at_minus_one.to_string();
        let d_chi = r.euler_poincare.chi_times_d;
        ensure(m == d_chi.to_string() && r.novikov_at_minus_one == d_chi, || {
            format!("{morse_name}/{complex_name}: M(-1) = {m}, N(-1) = {}, d·χ = {d_chi}", r.novikov_at_minus_one)
        })?;
        ensure(r.euler_poincare.holds, || format!("{morse_name}: component sum disagrees"))?;
        out.push(to_json(&json!({"pair": [morse_name, complex_name], "value": d_chi})));
    }
    Ok(out.join("\n"))
}

fn sequences(max_len: usize, max_entry: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|s| {
                (0..=max_entry).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
        all.extend(frontier.iter().cloned());
    }
    all
}

fn criterion_5() -> Outcome {
    let seqs = sequences(5, 3);
    let sums: Vec<i64> = seqs.iter().map(|s| alternating_sum(s)).collect();
    let (mut pairs, mut holding) = (0usize, 0usize);
    for (m, am) in seqs.iter().zip(&sums) {
        for (b, ab) in seqs.iter().zip(&sums) {
            if am != ab {
                continue;
            }
            let main = check_main_theorem(&isolated_morse_polynomial(m, 1), &novikov_polynomial(b)).holds;
            let strong = check_strong_inequalities(m, b, 1).iter().all(|&h| h);
            ensure(main == strong, || format!("m = {m:?}, beta = {b:?}: main {main}, strong {strong}"))?;
            pairs += 1;
            holding += usize::from(main);
        }
    }
    Ok(to_json(&json!({"pairs": pairs, "holding": holding})))
}

/// `D_1 e - Σ d_1(e)_k e'_k ∈ im D_0` for every page-one representative.
fn d1_is_induced(f: &DeformationFamily) -> Result<(), String> {
    let pg = page(f, 1).map_err(|e| e.to_string())?;
    for p in 0..f.top_degree() {
        let d0 = f.base_coboundary(p);
        let d1 = f.term(p, 1);
        for (col, e) in pg.representatives[p].iter().enumerate() {
            let mut v = d1.mul_vec(e);
            for (k, target) in pg.representatives[p + 1].iter().enumerate() {
                let c = &pg.differentials[p][(k, col)];
                for (vi, ti) in v.iter_mut().zip(target) {
                    *vi -= c * ti;
                }
            }
            if v.iter().all(is_zero) {
                continue;
            }
            let mut cols: Vec<Vec<Rational>> = (0..d0.cols()).map(|j| d0.column(j)).collect();
            let before = RationalMatrix::from_columns(d0.rows(), &cols).rank();
            cols.push(v);
            ensure(RationalMatrix::from_columns(d0.rows(), &cols).rank() == before, || {
                format!("d_1 in degree {p} differs from the map induced by D_1")
            })?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let cfg = exact_cfg();
    let mut out = Vec::new();
    let circle = ss_report(&corpus::get("circle_linear_family").unwrap(), None, None, &cfg).map_err(|e| e.to_string())?;
    ensure(circle.pages[0].dims == [1, 1], || format!("page 1 dims {:?}", circle.pages[0].dims))?;
    ensure(circle.pages[1].dims == [0, 0], || format!("page 2 dims {:?}", circle.pages[1].dims))?;
    ensure(circle.stabilized, || "circle family did not stabilize".into())?;
    ensure(circle.pages[0].differentials[0] == RationalMatrix::from_i64(&[&[1]]), || {
        "d_1 is not multiplication by the class".into()
    })?;
    for (family, background) in [("circle_linear_family", "circle_xi1"), ("torus_linear_family", "torus_xi10")] {
        let doc = corpus::get(family).unwrap();
        let r = ss_report(&doc, None, None, &cfg).map_err(|e| e.to_string())?;
        let beta = novikov_numbers(&complex(background), &RankStrategy::Exact).unwrap().betti;
        ensure(r.stabilized && r.limit_dims == beta, || {
            format!("{family}: limit {:?} vs background {beta:?}", r.limit_dims)
        })?;
        let Document::Family(fd) = doc else { unreachable!() };
        d1_is_induced(&fd.to_family().unwrap())?;
        out.push(to_json(&r));
    }
    Ok(out.join("\n"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let s_values: Vec<f64> = (0..20).map(|_| rng.random_range(0.3..=3.0)).collect();
    let mut out = Vec::new();
    for name in ["circle_xi1", "torus_xi10", "klein_like"] {
        let table = kernel_vs_exact(&complex(name), &s_values, 1e-8, &RankStrategy::default()).map_err(|e| e.to_string())?;
        ensure(table.inconclusive() == 0, || format!("{name}: {} inconclusive cells", table.inconclusive()))?;
        if let Some(bad) = table.rows.iter().find(|r| r.status != KernelStatus::Match) {
            return Err(format!("{name}: s = {} degree {} is {:?}", bad.s, bad.degree, bad.status));
        }
        out.push(to_json(&table));
    }
    Ok(out.join("\n"))
}

fn three_cycle() -> TwistedComplex {
    let text = r#"{
        "kind": "complex", "name": "three_cycle", "fiber_dim": 1, "num_vars": 0, "cells": [3, 3],
        "incidences": [
            {"degree": 0, "cell": 0, "face": 0, "terms": [{"coeff": "-1", "word": ""}]},
            {"degree": 0, "cell": 0, "face": 1, "terms": [{"coeff": "1", "word": ""}]},
            {"degree": 0, "cell": 1, "face": 1, "terms": [{"coeff": "-1", "word": ""}]},
            {"degree": 0, "cell": 1, "face": 2, "terms": [{"coeff": "1", "word": ""}]},
            {"degree": 0, "cell": 2, "face": 2, "terms": [{"coeff": "-1", "word": ""}]},
            {"degree": 0, "cell": 2, "face": 0, "terms": [{"coeff": "1", "word": ""}]}
        ]
    }"#;
    Document::parse(text).unwrap().into_complex().unwrap().to_complex().unwrap()
}

fn criterion_8() -> Outcome {
    let circle = complex("circle_xi1");
    let mut out = Vec::new();
    for s in [0.5, 1.0, 2.0] {
        let nc = evaluate_at(&circle, s).map_err(|e| e.to_string())?;
        let lowest = laplacian_spectrum(&nc, 0).map_err(|e| e.to_string())?[0];
        let expected = ((-s).exp() - 1.0).powi(2);
        ensure((lowest - expected).abs() <= 1e-10, || format!("s = {s}: {lowest} vs {expected}"))?;
        out.push(format!("{s}:{lowest:.12e}"));
    }
    let nc = evaluate_at(&three_cycle(), 0.0).map_err(|e| e.to_string())?;
    let values = laplacian_spectrum(&nc, 0).map_err(|e| e.to_string())?;
    ensure(values.len() == 3, || format!("{} eigenvalues", values.len()))?;
    for (v, e) in values.iter().zip([0.0, 3.0, 3.0]) {
        ensure((v - e).abs() <= 1e-8, || format!("3-cycle spectrum {values:?}"))?;
    }
    out.push(format!("{:.9e} {:.9e} {:.9e}", values[0], values[1], values[2]));
    Ok(out.join("\n"))
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..100u64 {
        let n = 1 + (k as usize % 16);
        let (h, j) = random_ims_instance(k, n);
        let norm = operator_norm(&h);
        let residual = ims_identity_residual(&h, &j).map_err(|e| e.to_string())?;
        ensure(residual <= 1e-10 * norm, || format!("instance {k} ({n}x{n}): residual {residual:e}, ‖H‖ = {norm}"))?;
        worst = worst.max(residual / norm);
    }
    Ok(format!("100 instances, worst relative residual below 1e-10: {}", worst <= 1e-10))
}

fn criterion_10() -> Outcome {
    let mut out = Vec::new();
    for k in 0..100u64 {
        let n = 2 + (k as usize % 15);
        let rank = k as usize % (n + 1).min(5);
        let mu = 0.5 + (k % 7) as f64;
        let (a, b) = planted_instance(k, n, rank, mu, 0.25);
        let r = rank_perturbation_check(&a, &b, mu, 1e-6).map_err(|e| e.to_string())?;
        ensure(r.hypothesis_met && r.bound_holds, || format!("planted instance {k}: {r:?}"))?;
        out.push(format!("{}<={}", r.count, r.rank_b));
    }
    let mut violating = 0;
    for k in 0..20u64 {
        let (a, b) = planted_instance(1000 + k, 6, 2, 2.0, -0.5);
        let r = rank_perturbation_check(&a, &b, 2.0, 1e-6).map_err(|e| e.to_string())?;
        ensure(!r.hypothesis_met && !r.bound_holds, || format!("violating instance {k} reported as a pass"))?;
        violating += 1;
    }
    out.push(format!("hypothesis not met: {violating}"));
    Ok(out.join(" "))
}

fn criterion_11() -> Outcome {
    let cfg = exact_cfg();
    let companion = complex_doc("alexander_trefoil_companion");
    let r = novikov_report(&companion, &[vec![rational(1)]], &cfg).map_err(|e| e.to_string())?;
    let probe = &r.probes[0];
    ensure(probe.is_jump.iter().any(|&j| j), || "no jump at the companion substitution".into())?;
    ensure(probe.reduced_dims[1] == "1", || format!("H^1 dimension / 2 = {}", probe.reduced_dims[1]))?;
    let probes: Vec<Vec<Rational>> = [2, 3, -1].iter().map(|&v| vec![rational(v)]).collect();
    let plain = novikov_report(&complex_doc("alexander_trefoil"), &probes, &cfg).map_err(|e| e.to_string())?;
    ensure(plain.probes.iter().all(|p| p.is_jump.iter().all(|&j| !j)), || "alexander_trefoil jumps at a rational probe".into())?;
    Ok([to_json(&r), to_json(&plain)].join("\n"))
}

fn binary_outputs() -> Result<String, String> {
    let runs: [&[&str]; 4] = [
        &["--format", "json-like", "novikov", "torus_xi10", "--probes", "1;2"],
        &["--format", "json-like", "check", "torus_bott", "torus_xi10"],
        &["--format", "json-like", "ss", "torus_linear_family"],
        &["--format", "csv", "spectrum", "klein_like", "--s", "0.3,1,2.5"],
    ];
    let mut out = String::new();
    for args in runs {
        let o = Command::new(env!("CARGO_BIN_EXE_novikov"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), || format!("novikov {} exited with {}", args.join(" "), o.status))?;
        out.push_str(&String::from_utf8_lossy(&o.stdout));
    }
    Ok(out)
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "circle Novikov numbers; beta_0 = 0 when twisted", budget: secs(1), run: criterion_1 },
        Criterion { id: 2, title: "jump set of circle_xi1", budget: secs(1), run: criterion_2 },
        Criterion { id: 3, title: "main-theorem certificate on the torus", budget: secs(1), run: criterion_3 },
        Criterion { id: 4, title: "Euler-Poincare on bundled pairs", budget: secs(1), run: criterion_4 },
        Criterion { id: 5, title: "equivalence of inequality forms", budget: secs(30), run: criterion_5 },
        Criterion { id: 6, title: "spectral sequence of the linear families", budget: secs(5), run: criterion_6 },
        Criterion { id: 7, title: "Hodge kernel vs exact Betti numbers", budget: secs(10), run: criterion_7 },
        Criterion { id: 8, title: "closed-form spectra", budget: secs(1), run: criterion_8 },
        Criterion { id: 9, title: "IMS identity", budget: secs(2), run: criterion_9 },
        Criterion { id: 10, title: "rank-perturbation bound", budget: secs(2), run: criterion_10 },
        Criterion { id: 11, title: "Alexander example", budget: secs(1), run: criterion_11 },
    ];

    let mut failures = 0;
    let mut first = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed > c.budget => Err(format!("over budget: {elapsed:.2?} > {:?}", c.budget)),
            Ok(_) => Ok(()),
            Err(e) => Err(e.clone()),
        };
        match verdict {
            Ok(()) => println!("PASS {:>2}  {}  ({elapsed:.2?}, budget {:?})", c.id, c.title, c.budget),
            Err(reason) => {
                failures += 1;
                println!("FAIL {:>2}  {}  ({elapsed:.2?}, budget {:?}): {reason}", c.id, c.title, c.budget);
            }
        }
        first.push(result);
    }

    let start = Instant::now();
    let determinism = (|| {
        for (c, before) in criteria.iter().zip(&first) {
            let again = (c.run)();
            ensure(&again == before, || format!("criterion {} output differs between runs", c.id))?;
        }
        let a = binary_outputs()?;
        let b = binary_outputs()?;
        ensure(a == b, || "binary output differs between runs".into())
    })();
    let elapsed = start.elapsed();
    match determinism {
        Ok(()) => println!("PASS 12  byte-identical structured output across runs  ({elapsed:.2?})"),
        Err(reason) => {
            failures += 1;
            println!("FAIL 12  byte-identical structured output across runs  ({elapsed:.2?}): {reason}");
        }
    }

    println!("{} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
