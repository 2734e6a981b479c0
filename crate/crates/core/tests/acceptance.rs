//! One pass/fail line per acceptance criterion, with pinned tolerances.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use suq2::verify::{
    boson_suite, crossmode_suite, haar_suite, hopf_suite, polar_suite, qtorus_suite, reps_suite, CheckOutcome,
    SuiteReport, TorusOptions, VerifyOptions,
};

struct Line {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn summarize(checks: &[&CheckOutcome]) -> (bool, String) {
    let cases: usize = checks.iter().map(|c| c.cases).sum();
    match checks.iter().find(|c| !c.pass()) {
        None => (true, format!("{} checks, {} cases", checks.len(), cases)),
        Some(c) => (false, format!("{} failed on {}", c.name, c.failure.as_deref().unwrap_or("?"))),
    }
}

fn from_suite(id: u32, title: &'static str, rep: &SuiteReport, elapsed: Duration, budget: Option<Duration>) -> Line {
    let all: Vec<&CheckOutcome> = rep.checks.iter().collect();
    let (mut pass, mut detail) = summarize(&all);
    detail = format!("{detail}, {:.1}s", elapsed.as_secs_f64());
    if let Some(b) = budget {
        if elapsed > b {
            pass = false;
            detail = format!("{detail} exceeds {}s", b.as_secs());
        }
    }
    Line { id, title, pass, detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let mut lines = Vec::new();

    let (hopf, t) = timed(|| hopf_suite(&opts));
    lines.push(from_suite(1, "Hopf identities", &hopf, t, Some(Duration::from_secs(60))));

    let (haar, t) = timed(|| haar_suite(&opts));
    lines.push(from_suite(2, "Haar state", &haar, t, None));

    let (polar, t) = timed(|| polar_suite(&opts));
    let is_witness = |c: &&CheckOutcome| c.name.contains("witness") || c.name.starts_with("Delta R(a)");
    let decomposition: Vec<&CheckOutcome> = polar.checks.iter().filter(|c| !is_witness(c)).collect();
    let witness: Vec<&CheckOutcome> = polar.checks.iter().filter(is_witness).collect();
    let (pass, detail) = summarize(&decomposition);
    lines.push(Line { id: 3, title: "Polar decomposition", pass, detail: format!("{detail}, {:.1}s", t.as_secs_f64()) });
    let (pass, detail) = summarize(&witness);
    lines.push(Line { id: 4, title: "Failure witness", pass: pass && witness.len() == 2, detail });

    let (reps, t) = timed(|| reps_suite(&opts));
    lines.push(from_suite(5, "Representations", &reps, t, None));

    let (boson, t) = timed(|| boson_suite(&opts));
    lines.push(from_suite(6, "Bosonization", &boson, t, None));

    let (torus, t) = timed(|| qtorus_suite(&TorusOptions::default()));
    lines.push(from_suite(7, "Quantum-torus numerics", &torus, t, Some(Duration::from_secs(120))));

    let (cross, t) = timed(|| crossmode_suite(Complex64::new(0.3, 0.4), 100, opts.seed));
    lines.push(from_suite(8, "Cross-mode consistency", &cross, t, None));

    for l in &lines {
        println!("criterion {} {:<24} {}  ({})", l.id, l.title, if l.pass { "PASS" } else { "FAIL" }, l.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
