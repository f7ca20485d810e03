//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line (visible with `--nocapture`) and fails
//! on any deviation. All comparisons are exact; runtime bounds are checked
//! as stated.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;
use starlab_core::algebra::build_scalar_algebra;
use starlab_core::classify::{implication_suite, Classifier, Property};
use starlab_core::corpus::{generate_corpus, Profile};
use starlab_core::dsl::parse_ring_expr;
use starlab_core::projection::Analysis;
use starlab_core::ring::{build_ring, characteristic};
use starlab_core::unitify::{build_quotient, verify_unitification, VerifyMode};
use starlab_core::{ActionSpec, Limits, ScalarAlgebra, StarRing};

fn starlab(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_starlab")).args(args).output().unwrap();
    (o.status.code(), String::from_utf8(o.stdout).unwrap())
}

fn ring(text: &str) -> StarRing {
    build_ring(&parse_ring_expr(text).unwrap(), &Limits::default()).unwrap()
}

fn algebra(r: &str, k: &str, limits: &Limits) -> Arc<ScalarAlgebra> {
    let r = build_ring(&parse_ring_expr(r).unwrap(), limits).unwrap();
    build_scalar_algebra(Arc::new(r), Arc::new(ring(k)), ActionSpec::Natural).unwrap()
}

/// Prints the criterion line, then fails the test if `problems` is nonempty
/// or the runtime bound was exceeded.
fn conclude(n: u32, what: &str, started: Instant, bound: Option<Duration>, mut problems: Vec<String>) {
    let elapsed = started.elapsed();
    if let Some(b) = bound {
        if elapsed > b {
            problems.push(format!("took {elapsed:?}, bound {b:?}"));
        }
    }
    let status = if problems.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {what} ({:.2}s)", elapsed.as_secs_f64());
    for p in &problems {
        println!("    {p}");
    }
    assert!(problems.is_empty(), "criterion {n} failed:\n{}", problems.join("\n"));
}

fn truth_set(rows: &Value, n: u64) -> Vec<u64> {
    rows.as_array()
        .unwrap()
        .iter()
        .filter(|r| r["n"] == n && r["brute"] == true)
        .map(|r| r["m"].as_u64().unwrap())
        .collect()
}

#[test]
fn criterion_1_matrix_baer_criterion_matches_brute_force() {
    let t = Instant::now();
    let mut problems = Vec::new();
    for (n, m_max, expected) in [("1", "12", vec![2, 3, 5, 6, 7, 10, 11]), ("2", "7", vec![3, 7])] {
        let (code, out) = starlab(&[
            "scan-cor", "--n-min", n, "--n-max", n, "--m-min", "2", "--m-max", m_max, "--format", "json",
        ]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        if code != Some(0) || v["disagreements"] != 0 {
            problems.push(format!("n = {n}: exit {code:?}, {} disagreements", v["disagreements"]));
        }
        if v["rows"].as_array().unwrap().iter().any(|r| r["brute"].is_null()) {
            problems.push(format!("n = {n}: a row was skipped"));
        }
        let got = truth_set(&v["rows"], n.parse().unwrap());
        if got != expected {
            problems.push(format!("n = {n}: true for {got:?}, expected {expected:?}"));
        }
    }
    conclude(1, "arithmetic and brute-force Baer* verdicts agree on M(n, Z(m))", t, Some(Duration::from_secs(120)), problems);
}

#[test]
fn criterion_2_rp_not_central_cover_in_m2z3() {
    let t = Instant::now();
    let r = ring("M(2, Z(3))");
    let c = Classifier::new(&r, Limits::default());
    let mut problems = Vec::new();
    match c.rp_not_cover().unwrap() {
        Some(x) => {
            let rp = c.analysis().rp(x).unwrap().elem;
            if r.elements().any(|y| c.analysis().central_cover(y).unwrap().elem == rp) {
                problems.push(format!("witness {} has RP equal to some cover", r.render(x)));
            }
        }
        None => problems.push("no witness found".into()),
    }
    for p in [Property::BaerStar, Property::RickartStar, Property::PqBaerStar] {
        if !c.holds(p).unwrap() {
            problems.push(format!("{p} is false"));
        }
    }
    conclude(2, "M(2, Z(3)) is Baer*, Rickart*, p.q.-Baer* with an RP that is no central cover", t, Some(Duration::from_secs(5)), problems);
}

#[test]
fn criterion_3_rickart_embedding_without_domain_or_torsion_freeness() {
    let t = Instant::now();
    let limits = Limits::default();
    let mut problems = Vec::new();
    for (r, k, rows) in [("Z(6)", "Z(6)", 6), ("M(2, Z(3))", "Z(6)", 81)] {
        let alg = algebra(r, k, &limits);
        match verify_unitification(&alg, Some(VerifyMode::Rickart), &limits) {
            Ok(rep) => {
                if !rep.verdict || rep.quotient_class != Some(true) {
                    problems.push(format!("{r} over {k}: verdict {}", rep.verdict));
                }
                if rep.preserved() != rows || rep.preservation.len() != rows {
                    problems.push(format!("{r} over {k}: {}/{} rows", rep.preserved(), rep.preservation.len()));
                }
                let outside = rep.flags.iter().any(|f| f == "K is not an integral domain" || f.starts_with("torsion present"));
                if !outside || rep.hypotheses.k_domain && rep.hypotheses.torsion_free {
                    problems.push(format!("{r} over {k}: not flagged as outside the classical hypotheses"));
                }
            }
            Err(e) => problems.push(format!("{r} over {k}: {e}")),
        }
    }
    conclude(3, "Rickart* unitification with RP preservation over non-domain / torsion scalars", t, Some(Duration::from_secs(60)), problems);
}

#[test]
fn criterion_4_pq_baer_embedding_preserves_central_covers() {
    let t = Instant::now();
    let limits = Limits::default();
    let mut problems = Vec::new();
    for (r, k, rows) in [("M(2, Z(3))", "Z(3)", 81), ("Z(6)", "Z(6)", 6)] {
        let alg = algebra(r, k, &limits);
        match verify_unitification(&alg, Some(VerifyMode::Pqbaer), &limits) {
            Ok(rep) => {
                if !rep.verdict || rep.quotient_class != Some(true) {
                    problems.push(format!("{r} over {k}: quotient not p.q.-Baer*"));
                }
                if rep.preserved() != rows {
                    problems.push(format!("{r} over {k}: {}/{rows} covers preserved", rep.preserved()));
                }
            }
            Err(e) => problems.push(format!("{r} over {k}: {e}")),
        }
    }
    conclude(4, "p.q.-Baer* unitification with central-cover preservation", t, Some(Duration::from_secs(60)), problems);
}

fn unital_with_trivial_left_annihilator(r: &StarRing) -> bool {
    r.unity().is_some() && r.elements().all(|a| a == 0 || r.elements().any(|x| r.mul(a, x) != 0))
}

// M(2, Z(7)) over Z(7) has 16,807 pairs, above the default cap.
fn wide_limits() -> Limits {
    Limits::default().with_max_order(20_000)
}

#[test]
fn criterion_5_unital_rings_collapse_onto_themselves() {
    let t = Instant::now();
    let limits = wide_limits();
    let mut problems = Vec::new();
    let mut checked = 0;
    for d in generate_corpus(Profile::Medium) {
        let r = build_ring(&d, &limits).unwrap();
        if !unital_with_trivial_left_annihilator(&r) {
            continue;
        }
        let k = format!("Z({})", characteristic(&r));
        let alg = build_scalar_algebra(Arc::new(r), Arc::new(ring(&k)), ActionSpec::Natural).unwrap();
        let u = match build_quotient(&alg, &limits) {
            Ok(u) => u,
            Err(e) => {
                problems.push(format!("{d} over {k}: {e}"));
                continue;
            }
        };
        if u.quotient().order() != alg.r().order() || !u.embed_is_bijective() {
            problems.push(format!("{d}: quotient order {} vs {}", u.quotient().order(), alg.r().order()));
        }
        if let Err(e) = u.check_homomorphism() {
            problems.push(format!("{d}: {e}"));
        }
        checked += 1;
    }
    if checked < 20 {
        problems.push(format!("only {checked} rings qualified"));
    }
    conclude(5, &format!("quotient is *-isomorphic to R on {checked} unital corpus rings"), t, None, problems);
}

#[test]
fn criterion_6_zero_multiplication_negative_controls() {
    let t = Instant::now();
    let r = ring("sub(Z(9); 3)");
    let c = Classifier::new(&r, Limits::default());
    let mut problems = Vec::new();
    for p in [Property::Proper, Property::SemiProper, Property::WeaklyRickartStar] {
        let rep = c.report(p).unwrap();
        if rep.verdict {
            problems.push(format!("{p} is true"));
        }
        if p == Property::WeaklyRickartStar && rep.witness != Some(vec!["3".to_string()]) {
            problems.push(format!("weakly-rickart witness {:?}", rep.witness));
        }
    }
    let alg = algebra("sub(Z(9); 3)", "Z(9)", &Limits::default());
    let rep = verify_unitification(&alg, None, &Limits::default()).unwrap();
    if (rep.kernel_order, rep.quotient_order, rep.injective) != (9, 3, false) {
        problems.push(format!(
            "|N| = {}, quotient order {}, injective {}",
            rep.kernel_order, rep.quotient_order, rep.injective
        ));
    }
    conclude(6, "sub(Z(9); 3) fails properness and weak Rickartness; |N| = 9, quotient order 3, embedding not injective", t, Some(Duration::from_secs(1)), problems);
}

#[test]
fn criterion_7_class_implications_hold_on_medium_corpus() {
    let t = Instant::now();
    let corpus = generate_corpus(Profile::Medium);
    let reports = implication_suite(&corpus, &Limits::default()).unwrap();
    let problems: Vec<String> = reports.iter().filter(|r| !r.verdict).map(|r| r.to_string()).collect();
    conclude(7, &format!("zero implication violations across {} rings", reports.len()), t, Some(Duration::from_secs(600)), problems);
}

#[test]
fn criterion_8_oracle_equivalences() {
    let t = Instant::now();
    let limits = wide_limits();
    let mut problems = Vec::new();
    let mut quotients = 0;
    for d in generate_corpus(Profile::Medium) {
        let r = build_ring(&d, &limits).unwrap();
        let c = Classifier::new(&r, limits);
        let an = c.analysis();
        let proper = c.holds(Property::Proper).unwrap();
        for x in r.elements() {
            if proper && an.rp(x) != an.rp_via_star(x) {
                problems.push(format!("{d}: RP({0}) differs from RP({0}*{0})", r.render(x)));
                break;
            }
            let dual = an.rp(r.star(x)).map(|e| r.star(e.elem));
            let lp = an.lp(x).map(|e| e.elem);
            if lp.is_ok() != dual.is_ok() || lp.is_ok() && lp != dual {
                problems.push(format!("{d}: LP({}) is not RP(x*)*", r.render(x)));
                break;
            }
        }
        if !c.holds(Property::WeaklyRickartStar).unwrap() {
            continue;
        }
        let k = format!("Z({})", characteristic(&r));
        let alg = build_scalar_algebra(Arc::new(build_ring(&d, &limits).unwrap()), Arc::new(ring(&k)), ActionSpec::Natural).unwrap();
        if !Analysis::new(alg.r()).condition3_witnesses(&alg).is_ok_and(|o| o.holds()) {
            continue;
        }
        match build_quotient(&alg, &limits).and_then(|u| u.analyses().check_rp_formula()) {
            Ok(_) => quotients += 1,
            Err(e) => problems.push(format!("{d} over {k}: {e}")),
        }
    }
    for (r, k) in [("Z(6)", "Z(6)"), ("M(2, Z(3))", "Z(6)"), ("M(2, Z(3))", "Z(3)"), ("Z(12)", "Z(12)")] {
        let alg = algebra(r, k, &limits);
        if !Analysis::new(alg.r()).condition3_witnesses(&alg).is_ok_and(|o| o.holds()) {
            continue;
        }
        match build_quotient(&alg, &limits).and_then(|u| u.analyses().check_rp_formula()) {
            Ok(_) => quotients += 1,
            Err(e) => problems.push(format!("{r} over {k}: {e}")),
        }
    }
    conclude(8, &format!("RP = RP(x*x), LP = RP(x*)*, and the [-g, 1] formula in {quotients} quotients"), t, None, problems);
}

#[test]
fn criterion_9_json_reports_do_not_depend_on_jobs() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let properties: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
    let runs: Vec<Vec<String>> = vec![
        [vec!["check", "M(2, Z(3))"], properties.clone()].concat().iter().map(|s| s.to_string()).collect(),
        [vec!["check", "prod(Z(2), M(2, Z(2)))"], properties[..12].to_vec()].concat().iter().map(|s| s.to_string()).collect(),
        ["unitify", "M(2, Z(3))", "--K", "Z(6)", "--verify", "rickart"].iter().map(|s| s.to_string()).collect(),
        ["corpus", "small", "--implications"].iter().map(|s| s.to_string()).collect(),
    ];
    for args in runs {
        let with = |jobs: &str| {
            let mut a: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
            a.extend(["--format", "json", "--stable", "--jobs", jobs]);
            starlab(&a)
        };
        let (one, eight) = (with("1"), with("8"));
        if one != eight || one.1.is_empty() {
            problems.push(format!("{} differs between --jobs 1 and --jobs 8", args.join(" ")));
        }
    }
    conclude(9, "byte-identical JSON for --jobs 1 and --jobs 8", t, None, problems);
}
