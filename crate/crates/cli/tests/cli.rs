//! Round trips of the expression language and end-to-end runs of the binary.

use std::process::{Command, Output};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use suq2::boson::{BElement, BMono};
use suq2::braided::Braided;
use suq2::lin::Lin;
use suq2::{Coeff, Element, ExactField, Field, Mono, NumericField, Scalar, Suq2};
use suq2_cli::{Context, Evaluator, Literal, Value};

fn random_poly<F: Field>(f: &F, rng: &mut ChaCha8Rng, terms: usize) -> F::C {
    (0..terms).fold(F::C::zero(), |acc, _| {
        let c = rng.gen_range(-4..=4i64);
        acc.plus(&f.rv(if c == 0 { 1 } else { c }, rng.gen_range(-2..=3), rng.gen_range(-3..=3)))
    })
}

fn random_coeff<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> F::C {
    let k = 1 + rng.gen_range(0..3);
    let num = random_poly(f, rng, k);
    match rng.gen_range(0..3) {
        0 => {
            let den = random_poly(f, rng, 2).plus(&F::C::from_int(5));
            num.times(&den.recip().unwrap_or_else(|_| F::C::one()))
        }
        _ => num,
    }
}

fn random_mono(rng: &mut ChaCha8Rng) -> Mono {
    Mono::new(rng.gen_range(-3..=3), rng.gen_range(0..=3), rng.gen_range(0..=3))
}

fn random_element<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Element<F::C> {
    let n = rng.gen_range(1..=4);
    let terms: Vec<(Mono, F::C)> = (0..n).map(|_| (random_mono(rng), random_coeff(f, rng))).collect();
    Element::from_terms(terms)
}

fn random_braided<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> Braided<F::C> {
    let order = rng.gen_range(2..=3);
    let mut t = Braided::zero(order);
    for _ in 0..rng.gen_range(1..=3) {
        let key: Vec<Mono> = (0..order).map(|_| random_mono(rng)).collect();
        t.add_term(key, random_coeff(f, rng));
    }
    t
}

fn random_boson<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> BElement<F::C> {
    let mut x = Lin::zero();
    for _ in 0..rng.gen_range(1..=3) {
        x.add_term(BMono::from_mono(random_mono(rng), rng.gen_range(-3..=3)), random_coeff(f, rng));
    }
    x
}

/// `render(parse(render(x))) = render(x)`, and the parse recovers `x` itself.
fn check_round_trip<F: Field>(alg: &Suq2<F>, x: &Value<F::C>, ctx: Context)
where
    F::C: Literal,
{
    let s = alg.sigma();
    let text = x.render(s);
    let back = Evaluator::new(alg, ctx).eval_str(&text).unwrap_or_else(|e| panic!("'{text}': {e}"));
    assert_eq!(back.render(s), text);
    assert_eq!(back.terms, x.terms, "{text}");
}

fn round_trips<F: Field>(alg: &Suq2<F>, seed: u64, count: usize)
where
    F::C: Literal,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let f = alg.field();
        match i % 3 {
            0 => check_round_trip(alg, &Value::from_element(&random_element(f, &mut rng)), Context::Pol),
            1 => check_round_trip(alg, &Value::from_braided(&random_braided(f, &mut rng)), Context::Pol),
            _ => check_round_trip(alg, &Value::from_belement(&random_boson(f, &mut rng)), Context::Boson),
        }
    }
}

#[test]
fn exact_rendering_round_trips_for_both_signs() {
    for (sigma, seed) in [(1, 11), (-1, 12)] {
        round_trips(&Suq2::new(ExactField::new(sigma).unwrap()), seed, 500);
    }
}

#[test]
fn numeric_rendering_round_trips() {
    for (q0, seed) in [(Complex64::new(0.3, 0.4), 21), (Complex64::new(-0.6, -0.1), 22)] {
        round_trips(&Suq2::new(NumericField::new(q0).unwrap()), seed, 500);
    }
}

#[test]
fn computed_results_round_trip() {
    let alg = Suq2::new(ExactField::new(1).unwrap());
    for recipe in suq2::verify::random_recipes(5, 100, 3, 2) {
        let x = recipe.build(alg.field());
        let h = alg.haar(&alg.mul(&alg.star(&x), &x));
        let y = alg.antipode(&x).scale(&h);
        check_round_trip(&alg, &Value::from_element(&y), Context::Pol);
        check_round_trip(&alg, &Value::from_braided(&alg.delta(&x)), Context::Pol);
        check_round_trip(&alg, &Value::from_bpair(&alg.delta_b(&alg.kappa(&x))), Context::Boson);
    }
    check_round_trip(&alg, &Value::scalar(Scalar::zero()), Context::Pol);
}

fn suq2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suq2")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn antipode_of_gamma() {
    let o = suq2(&["S", "g"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-qb g");
}

#[test]
fn haar_at_rational_r() {
    let o = suq2(&["haar", "g g*", "--r", "1/2", "--sigma", "+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4/5");
}

#[test]
fn relation_normalises_to_zero() {
    assert_eq!(stdout(&suq2(&["nf", "a g - qb g a"])), "0");
}

#[test]
fn coproduct_of_alpha_from_text() {
    let typed = stdout(&suq2(&["nf", "(a (x) a) - q (g* (x) g)"]));
    let computed = stdout(&suq2(&["delta", "a"]));
    assert_eq!(typed, computed);
}

#[test]
fn monomial_from_text() {
    let o = suq2(&["nf", "g^2 g*", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["terms"][0]["key"][0], serde_json::json!([0, 2, 1]));
    assert_eq!(j["text"], "g^2 g*");
}

#[test]
fn hopf_suite_passes() {
    let o = suq2(&["verify", "hopf", "--max-degree", "2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("suite hopf PASS"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["S", "g", "--q", "0.3,0.4"][..],
        &["S", "g", "--mode", "numeric"],
        &["S", "g", "--mode", "numeric", "--q", "0.3,0.4", "--r", "1/2"],
        &["nf", "a + b"],
        &["nf", "a + z"],
        &["haar", "a (x) a"],
        &["tau", "g", "--imag", "1/3"],
        &["verify", "hopf", "--mode", "numeric", "--q", "0.5"],
        &["verify", "nope"],
        &["frobnicate"],
    ] {
        let o = suq2(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = suq2(&["nf", "a + b"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 5"));
}

#[test]
fn failing_checks_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("suq2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    let rep = serde_json::json!({ "dim": 2, "weights": [0, 1], "entries": [["a", "q g*"], ["g", "a*"]] });
    std::fs::write(&bad, rep.to_string()).unwrap();
    let o = suq2(&["validate-rep", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn representation_json_is_reingestable() {
    let dir = std::env::temp_dir().join(format!("suq2-rep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("uu.json");
    let o = suq2(&["tensor-rep", "u", "u", "--format", "json", "--sigma", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, &o.stdout).unwrap();
    let v = suq2(&["validate-rep", path.to_str().unwrap(), "--sigma", "-1"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let again = suq2(&["tensor-rep", path.to_str().unwrap(), "u", "--sigma", "-1"]);
    assert!(stdout(&again).starts_with("dim 8 weights [0, 1, 1, 2, 1, 2, 2, 3]"));
}

#[test]
fn numeric_mode_matches_exact_mode() {
    let o = suq2(&["haar", "g g*", "--mode", "numeric", "--q", "-0.5,0"]);
    assert_eq!(stdout(&o), "0.8");
    let o = suq2(&["S", "g", "--mode", "numeric", "--q", "0.3,0.4"]);
    assert_eq!(stdout(&o), "(-0.3 + 0.4i) g");
}

#[test]
fn torus_reports_follow_the_schema() {
    let o = suq2(&["qtorus", "flip", "--d", "3", "--trials", "5", "--grid", "16", "--random", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for k in ["experiment", "params", "max_ratio", "bound", "pass"] {
        assert!(j.get(k).is_some(), "missing {k}");
    }
    assert_eq!(j["bound"], 9.0);
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_suq2")).args(["S", "g"]).env("SUQ2_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_suq2")).args(["S", "g"]).env("SUQ2_THREADS", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}
