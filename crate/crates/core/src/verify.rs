//! Identity suites over the exact engine, plus the numeric torus suite and
//! the exact/numeric cross-check.
//!
//! Each suite returns a [`SuiteReport`] listing its checks, the number of
//! cases tried and the first counterexample of every failing check.

use std::fmt::Display;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boson::{BElement, BMono};
use crate::braided::{Braided, Functional, LegMap};
use crate::coeff::{Coeff, ExactField, Field, NumericField, Time};
use crate::error::Result;
use crate::lin::Lin;
use crate::polsuq2::{Element, Mono, Suq2};
use crate::qtorus;
use crate::scalar::Scalar;

pub type Exact = Suq2<ExactField>;
pub type Numeric = Suq2<NumericField>;

/// Outcome of one named identity.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(CheckOutcome::pass)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.pass())
    }

    /// Runs `f` on every case and records the first (in input order) failing case.
    fn run<T, F>(&mut self, name: &str, cases: &[T], f: F)
    where
        T: Display + Sync,
        F: Fn(&T) -> Result<bool> + Sync,
    {
        let failure = cases
            .par_iter()
            .map(|c| match f(c) {
                Ok(true) => None,
                Ok(false) => Some(format!("{c}")),
                Err(e) => Some(format!("{c}: {e}")),
            })
            .find_first(Option::is_some)
            .flatten();
        self.checks.push(CheckOutcome { name: name.into(), cases: cases.len(), failure });
    }

    fn single(&mut self, name: &str, ok: Result<bool>, detail: impl FnOnce() -> String) {
        let failure = match ok {
            Ok(true) => None,
            Ok(false) => Some(detail()),
            Err(e) => Some(format!("{}: {e}", detail())),
        };
        self.checks.push(CheckOutcome { name: name.into(), cases: 1, failure });
    }
}

/// Knobs shared by the suites. `max_degree = None` picks each suite's default.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_degree: Option<u32>,
    pub seed: u64,
    pub random_elements: usize,
    pub sigma: i8,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_degree: None, seed: 7, random_elements: 200, sigma: 1 }
    }
}

/// Field-independent description of a random element: terms
/// `c r^a v^b (monomial)`, built identically in every mode.
#[derive(Clone, Debug)]
pub struct Recipe(pub Vec<(Mono, i64, i64, i64)>);

impl Recipe {
    pub fn random(rng: &mut ChaCha8Rng, max_terms: usize, bound: u32) -> Self {
        let k = rng.gen_range(1..=max_terms.max(1));
        let b = bound as i32;
        Recipe(
            (0..k)
                .map(|_| {
                    let m = Mono::new(rng.gen_range(-b..=b), rng.gen_range(0..=bound), rng.gen_range(0..=bound));
                    let mut c = rng.gen_range(-3..=3i64);
                    if c == 0 {
                        c = 1;
                    }
                    (m, c, rng.gen_range(0..=2i64), rng.gen_range(-2..=2i64))
                })
                .collect(),
        )
    }

    pub fn build<F: Field>(&self, field: &F) -> Element<F::C> {
        Element::from_terms(self.0.iter().map(|&(m, c, a, b)| (m, field.rv(c, a, b))))
    }
}

pub fn random_recipes(seed: u64, count: usize, max_terms: usize, bound: u32) -> Vec<Recipe> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Recipe::random(&mut rng, max_terms, bound)).collect()
}

fn exact(sigma: i8) -> Exact {
    Suq2::new(ExactField::new(sigma).expect("sigma is +1 or -1"))
}

fn monomials(bound: u32) -> Vec<Element<Scalar>> {
    Mono::all_up_to(bound).into_iter().map(Element::mono).collect()
}

fn cases(alg: &Exact, bound: u32, opts: &VerifyOptions) -> Vec<Element<Scalar>> {
    let mut out = monomials(bound);
    out.extend(random_recipes(opts.seed, opts.random_elements, 3, bound).iter().map(|r| r.build(alg.field())));
    out
}

/// Counit, antipode, coassociativity, `Delta S = (S (x) S) chi Delta` and `*S*S = id`.
pub fn hopf_suite(opts: &VerifyOptions) -> SuiteReport {
    let alg = exact(opts.sigma);
    let xs = cases(&alg, opts.max_degree.unwrap_or(2), opts);
    let mut rep = SuiteReport::new("hopf");
    rep.run("counit law (eps (x) id) Delta = id", &xs, |x| Ok(alg.slice(&alg.delta(x), 0, Functional::Counit)? == *x));
    rep.run("counit law (id (x) eps) Delta = id", &xs, |x| Ok(alg.slice(&alg.delta(x), 1, Functional::Counit)? == *x));
    rep.run("antipode law mu (S (x) id) Delta = eps 1", &xs, |x| {
        let lhs = alg.mu(&alg.map_leg(&alg.delta(x), 0, LegMap::S)?)?;
        Ok(lhs == Element::scalar(alg.counit(x)))
    });
    rep.run("antipode law mu (id (x) S) Delta = eps 1", &xs, |x| {
        let lhs = alg.mu(&alg.map_leg(&alg.delta(x), 1, LegMap::S)?)?;
        Ok(lhs == Element::scalar(alg.counit(x)))
    });
    rep.run("coassociativity", &xs, |x| {
        let d = alg.delta(x);
        Ok(alg.delta_leg(&d, 0)? == alg.delta_leg(&d, 1)?)
    });
    rep.run("Delta S = (S (x) S) chi Delta", &xs, |x| {
        let rhs = alg.map_legs(&alg.flip(&alg.delta(x), false)?, &[LegMap::S, LegMap::S])?;
        Ok(alg.delta(&alg.antipode(x)) == rhs)
    });
    rep.run("* S * S = id", &xs, |x| Ok(alg.star(&alg.antipode(&alg.star(&alg.antipode(x)))) == *x));
    rep
}

/// Haar weights, bi-invariance and invariance under `S`, `R`, `theta`, `tau`, `sigma`.
pub fn haar_suite(opts: &VerifyOptions) -> SuiteReport {
    let alg = exact(opts.sigma);
    let bound = opts.max_degree.unwrap_or(3);
    let xs = monomials(bound);
    let mut rep = SuiteReport::new("haar");
    let ms: Vec<u32> = (0..=6).collect();
    let r2 = Scalar::r_pow(2);
    let one = Scalar::one();
    rep.run("h(g^m g*^m) = (1-r^2)/(1-r^(2m+2))", &ms, |&m| {
        let want = one.sub_ref(&r2).div(&one.sub_ref(&Scalar::r_pow(2 * m as i32 + 2)))?;
        Ok(alg.haar(&Element::mono(Mono::new(0, m, m))) == want)
    });
    rep.run("left invariance (id (x) h) Delta = h 1", &xs, |x| {
        Ok(alg.slice(&alg.delta(x), 1, Functional::Haar)? == Element::scalar(alg.haar(x)))
    });
    rep.run("right invariance (h (x) id) Delta = h 1", &xs, |x| {
        Ok(alg.slice(&alg.delta(x), 0, Functional::Haar)? == Element::scalar(alg.haar(x)))
    });
    let maps: [(&str, LegMap); 8] = [
        ("h S = h", LegMap::S),
        ("h R = h", LegMap::R),
        ("h theta = h", LegMap::Theta),
        ("h theta^-1 = h", LegMap::ThetaInv),
        ("h tau_(i/2) = h", LegMap::Tau(Time::imag_half(1))),
        ("h tau_(-i) = h", LegMap::Tau(Time::imag_half(-2))),
        ("h sigma_(i/2) = h", LegMap::Sigma(Time::imag_half(1))),
        ("h sigma_(-i) = h", LegMap::Sigma(Time::imag_half(-2))),
    ];
    for (name, f) in maps {
        rep.run(name, &xs, |x| Ok(alg.haar(&alg.apply_map(f, x)?) == alg.haar(x)));
    }
    let pairs = key_pairs(opts.max_degree.unwrap_or(2));
    rep.run("(h (x) id) chi^-1 = (id (x) h)", &pairs, |p| {
        let x = p.braided();
        Ok(alg.slice(&alg.flip(&x, true)?, 0, Functional::Haar)? == alg.slice(&x, 1, Functional::Haar)?)
    });
    rep
}

/// Basis tensor `a (x) b`, printable.
#[derive(Clone, Copy, Debug)]
struct KeyPair(Mono, Mono);

impl KeyPair {
    fn braided(&self) -> Braided<Scalar> {
        Braided::basis(vec![self.0, self.1])
    }
}

impl Display for KeyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (x) {}", self.0, self.1)
    }
}

fn key_pairs(bound: u32) -> Vec<KeyPair> {
    let ms = Mono::all_up_to(bound);
    ms.iter().flat_map(|&a| ms.iter().map(move |&b| KeyPair(a, b))).collect()
}

/// `S = R tau_(-i/2) theta^-1`, properties of `R` and the braided failure witness.
pub fn polar_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("polar");
    let bound = opts.max_degree.unwrap_or(3);
    let xs = monomials(bound);
    for sigma in [1i8, -1] {
        let alg = exact(sigma);
        let tag = if sigma > 0 { "+" } else { "-" };
        rep.run(&format!("S = R tau_(-i/2) theta^-1 (sigma {tag}1)"), &xs, |x| {
            let y = alg.residual(x, true);
            let y = alg.tau(&y, Time::imag_half(-1))?;
            Ok(alg.unitary_antipode(&y) == alg.antipode(x))
        });
        let g = Element::mono(Mono::GAMMA);
        let want = g.scale(&Scalar::from_int(-(sigma as i64)));
        rep.single(&format!("R(g) = -sigma g (sigma {tag}1)"), Ok(alg.unitary_antipode(&g) == want), || {
            format!("R(g) = {}", alg.unitary_antipode(&g))
        });
    }
    let alg = exact(opts.sigma);
    rep.run("R R = id", &xs, |x| Ok(alg.unitary_antipode(&alg.unitary_antipode(x)) == *x));
    rep.run("R * = * R", &xs, |x| Ok(alg.unitary_antipode(&alg.star(x)) == alg.star(&alg.unitary_antipode(x))));
    let small = monomials(bound.min(2));
    let pairs: Vec<ElemPair> = small
        .iter()
        .step_by(3)
        .flat_map(|a| small.iter().step_by(2).map(move |b| ElemPair(a.clone(), b.clone())))
        .collect();
    rep.run("R(xy) = R(y) R(x)", &pairs, |p| {
        let lhs = alg.unitary_antipode(&alg.mul(&p.0, &p.1));
        Ok(lhs == alg.mul(&alg.unitary_antipode(&p.1), &alg.unitary_antipode(&p.0)))
    });
    let (w, want) = witness(&alg);
    rep.single("Delta R(a) - (R (x) R) chi Delta(a) = q (zeta - 1) g (x) g*", Ok(w == want && !w.is_zero()), || {
        format!("{:?}", w.terms())
    });
    let q0s = [Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0), Complex64::new(0.3, 0.4), Complex64::new(0.0, 0.5)];
    rep.run("witness vanishes iff v^2 = 1", &q0s.map(Q0), |q0| {
        let num = Suq2::new(NumericField::new(q0.0)?);
        let (w, _) = witness(&num);
        let size: f64 = w.terms().iter().map(|(_, c)| c.norm()).sum();
        let v2_is_one = (num.field().v() * num.field().v() - 1.0).norm() < 1e-12;
        Ok((size < 1e-12) == v2_is_one)
    });
    rep
}

#[derive(Clone, Copy, Debug)]
struct Q0(Complex64);

impl Display for Q0 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "q0 = {}", self.0)
    }
}

#[derive(Clone, Debug)]
struct ElemPair(Element<Scalar>, Element<Scalar>);

impl Display for ElemPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x = {}, y = {}", self.0, self.1)
    }
}

/// `Delta(R(a)) - (R (x) R) chi Delta(a)` and the expected `q (zeta - 1) g (x) g*`.
pub fn witness<F: Field>(alg: &Suq2<F>) -> (Braided<F::C>, Braided<F::C>) {
    let a = Element::mono(Mono::ALPHA);
    let lhs = alg.delta(&alg.unitary_antipode(&a));
    let rhs = alg
        .map_legs(&alg.flip(&alg.delta(&a), false).expect("order 2"), &[LegMap::R, LegMap::R])
        .expect("order 2");
    let w = lhs.sub(&rhs).expect("order 2");
    let c = alg.q().times(&alg.zeta_pow(1).minus(&F::C::one()));
    (w, Braided::term(vec![Mono::GAMMA, Mono::GAMMA_STAR], c))
}

#[derive(Clone, Copy, Debug)]
struct Named(&'static str);

impl Display for Named {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.0)
    }
}

/// Validation of `u`, `u T u`, `u T u T u`, span check and the lift to the bosonization.
pub fn reps_suite(opts: &VerifyOptions) -> SuiteReport {
    let alg = exact(opts.sigma);
    let u = alg.fundamental();
    let uu = alg.tensor_rep(&u, &u);
    let uuu = alg.tensor_rep(&uu, &u);
    let mut rep = SuiteReport::new("reps");
    let reps = [(Named("u"), &u), (Named("u T u"), &uu), (Named("u T u T u"), &uuu)];
    let fail = |r: crate::reps::RepReport| -> Result<bool> { Ok(r.pass()) };
    let names2 = [Named("u"), Named("u T u")];
    rep.run("unitarity, invariance and corep", &names2, |n| {
        let x = reps.iter().find(|(m, _)| m.0 == n.0).unwrap().1;
        fail(alg.validate(x))
    });
    let names3 = [Named("u"), Named("u T u"), Named("u T u T u")];
    rep.run("S(u_np) = (u_pn)*", &names3, |n| {
        let x = reps.iter().find(|(m, _)| m.0 == n.0).unwrap().1;
        fail(alg.antipode_coeff_check(x))
    });
    rep.run("(eps (x) id) u = identity", &names3, |n| {
        let x = reps.iter().find(|(m, _)| m.0 == n.0).unwrap().1;
        fail(alg.counit_rep_check(x))
    });
    let span = alg.coeff_span_check(2);
    rep.single("coefficients of u^(T 4) span the monomials of bidegree <= 2", Ok(span.pass()), || {
        let missing: Vec<String> =
            span.certificates.iter().filter(|(_, c)| c.is_none()).map(|(m, _)| m.to_string()).collect();
        format!("not reached: {}", missing.join(", "))
    });
    let lift = alg.lift_check(&u);
    rep.single("lift of u is a corepresentation of the bosonization", Ok(lift.pass()), || {
        format!("{:?}", lift.failures)
    });
    rep
}

/// Bosonization: `psi`, `Delta_B`, `h_B` and the routes through `A (x) C(T)`.
pub fn boson_suite(opts: &VerifyOptions) -> SuiteReport {
    let alg = exact(opts.sigma);
    let bound = opts.max_degree.unwrap_or(2);
    let xs = monomials(bound);
    let mut rep = SuiteReport::new("boson");
    rep.run("psi Delta = Delta_B kappa", &xs, |x| Ok(alg.psi(&alg.delta(x))? == alg.delta_b(&alg.kappa(x))));
    rep.run("(id (x) h_B) psi Delta = h 1", &xs, |x| {
        Ok(alg.pair_id_haar(&alg.psi(&alg.delta(x))?) == BElement::scalar_b(alg.haar(x)))
    });
    let pairs = key_pairs(bound.min(1));
    rep.run("(id (x) h_B) psi = kappa (id (x) h)", &pairs, |p| {
        let x = p.braided();
        Ok(alg.pair_id_haar(&alg.psi(&x)?) == alg.kappa(&alg.slice(&x, 1, Functional::Haar)?))
    });
    let bs: Vec<BMono> = BMono::all_up_to(bound.min(1), 2);
    rep.run("Delta_B coassociative", &bs, |b| {
        let d = alg.delta_b_mono(*b);
        Ok(alg.pair_delta_left(&d) == alg.pair_delta_right(&d))
    });
    rep.run("h_B bi-invariant", &bs, |b| {
        let d = alg.delta_b_mono(*b);
        let h = BElement::scalar_b(alg.haar_b_mono(*b));
        Ok(alg.pair_id_haar(&d) == h && alg.pair_haar_id(&d) == h)
    });
    let all_b: Vec<BMono> = BMono::all_up_to(bound, 2);
    rep.run("Psi (Delta (x) id) = Delta_B", &all_b, |b| {
        let x = BElement::basis(*b);
        Ok(alg.delta_b_tilde(&x) == alg.delta_b(&x))
    });
    rep.run("(id (x) h_T pi) Delta_B~ fixes x iff l = 0", &all_b, |b| {
        let x = BElement::basis(*b);
        Ok((alg.pair_id_haar_torus(&alg.delta_b_tilde(&x)) == x) == (b.l == 0))
    });
    let gens = [Mono::ALPHA, Mono::ALPHA_STAR, Mono::GAMMA, Mono::GAMMA_STAR];
    rep.run("(id (x) pi) Delta_B~ kappa(a) = kappa(a) (x) 1", &gens, |&g| {
        let x = alg.kappa(&Element::mono(g));
        let want = Lin::basis((BMono::from_mono(g, 0), 0));
        Ok(alg.pair_id_pi(&alg.delta_b_tilde(&x)) == want)
    });
    let homog: Vec<Mono> = Mono::all_up_to(bound);
    rep.run("(pi (x) id) Delta_B~ kappa(a) = t^deg(a) (x) kappa(a)", &homog, |&m| {
        let x = alg.kappa(&Element::mono(m));
        let want = Lin::basis((m.deg() as i32, BMono::from_mono(m, 0)));
        Ok(alg.pair_pi_id(&alg.delta_b_tilde(&x)) == want)
    });
    rep
}

trait ScalarB {
    fn scalar_b(c: Scalar) -> Self;
}

impl ScalarB for BElement<Scalar> {
    fn scalar_b(c: Scalar) -> Self {
        Lin::term(BMono::ONE, c)
    }
}

/// Sizes of the torus experiments.
#[derive(Clone, Copy, Debug)]
pub struct TorusOptions {
    pub trials: usize,
    pub star_depth: usize,
    pub star_limit: u64,
    pub seed: u64,
    pub norm: qtorus::NormConfig,
}

impl Default for TorusOptions {
    fn default() -> Self {
        TorusOptions { trials: 100, star_depth: 6, star_limit: 1 << 40, seed: 7, norm: qtorus::NormConfig::default() }
    }
}

/// The numeric torus experiments with their pinned tolerances.
pub fn qtorus_suite(opts: &TorusOptions) -> SuiteReport {
    let mut rep = SuiteReport::new("qtorus");
    let ds = [2usize, 3, 5, 7];
    rep.run("phi0(U0^n V0^m) = U0^m V0^n to 1e-12", &ds, |&d| {
        let b = qtorus::boca(d, 1)?;
        let mut worst: f64 = 0.0;
        for n in 0..d as i64 {
            for m in 0..d as i64 {
                worst = worst.max((b.phi0(&b.word(n, m)) - b.word(m, n)).norm());
            }
        }
        Ok(worst <= 1e-12)
    });
    rep.run("rho pairs to zeta^(nm) and has total variation d, to 1e-9", &ds[..3], |&d| {
        let (err, tv) = qtorus::rho_checks(d, 1)?;
        Ok(err <= 1e-9 && (tv - d as f64).abs() <= 1e-9)
    });
    let all_d: Vec<usize> = (1..=16).collect();
    rep.run("U0 V0 = zeta V0 U0 to 1e-12", &all_d, |&d| {
        let mut worst: f64 = 0.0;
        for n in 1..=d as i64 {
            if num_integer::gcd(n, d as i64) == 1 {
                worst = worst.max(qtorus::boca(d, n)?.commutation_residual());
            }
        }
        Ok(worst <= 1e-12)
    });
    rep.single(
        "truncated torus commutation to 1e-10",
        Ok(qtorus::torus_commutation_residual(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 0.618), 8) <= 1e-10),
        || "residual too large".into(),
    );
    rep.run("||flip(a)|| <= d^2 ||a||", &ds[..3], |&d| {
        Ok(qtorus::flip_bound_check(d, 1, opts.trials, opts.seed, &opts.norm)?.pass)
    });
    let star = qtorus::star_sequence(qtorus::Phase::golden(), opts.star_depth, opts.star_limit);
    let star_ok = star.as_ref().map(|s| s.pass() && s.ns.len() == opts.star_depth).map_err(|e| e.clone());
    rep.single(&format!("star sequence to depth {} within 1/R", opts.star_depth), star_ok, || format!("{star:?}"));
    let sb = qtorus::spectrum_eval_bound(Complex64::new(0.5, 0.0), 5, 4, 50, opts.seed, &opts.norm);
    let bound_ok = sb.as_ref().map(|r| r.pass && r.bound == 9.0).map_err(|e| e.clone());
    rep.single("spectrum evaluation bound 9 at |q| = 1/2", bound_ok, || format!("{sb:?}"));
    rep
}

/// Largest coefficient deviation relative to the largest reference coefficient.
pub fn relative_error(exact: &Element<Scalar>, numeric: &Element<Complex64>, q0: Complex64) -> Result<f64> {
    let mut keys: Vec<Mono> = exact.keys().copied().collect();
    keys.extend(numeric.keys().copied());
    let mut diff: f64 = 0.0;
    let mut size: f64 = 0.0;
    for k in keys {
        let a = exact.coeff(&k).eval_at(q0)?;
        let b = numeric.coeff(&k);
        diff = diff.max((a - b).norm());
        size = size.max(b.norm());
    }
    Ok(if size > 0.0 { diff / size } else { diff })
}

fn scalar_error(a: &Scalar, b: Complex64, q0: Complex64) -> Result<f64> {
    let a = a.eval_at(q0)?;
    let d = (a - b).norm();
    Ok(if b.norm() > 0.0 { d / b.norm() } else { d })
}

/// Worst relative error between evaluated exact results and numeric-mode
/// results of `mul`, `S`, `h`, `R` on random elements.
pub fn cross_mode(q0: Complex64, count: usize, seed: u64) -> Result<f64> {
    let nf = NumericField::new(q0)?;
    let num = Suq2::new(nf.clone());
    let ex = exact(nf.sigma());
    let recipes = random_recipes(seed, 2 * count, 3, 2);
    let errs: Vec<Result<f64>> = recipes
        .par_chunks(2)
        .map(|pair| {
            let (xe, ye) = (pair[0].build(ex.field()), pair[1].build(ex.field()));
            let (xn, yn) = (pair[0].build(num.field()), pair[1].build(num.field()));
            let mut worst = relative_error(&ex.mul(&xe, &ye), &num.mul(&xn, &yn), q0)?;
            worst = worst.max(relative_error(&ex.antipode(&xe), &num.antipode(&xn), q0)?);
            worst = worst.max(relative_error(&ex.unitary_antipode(&xe), &num.unitary_antipode(&xn), q0)?);
            worst = worst.max(scalar_error(&ex.haar(&xe), num.haar(&xn), q0)?);
            Ok(worst)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for e in errs {
        worst = worst.max(e?);
    }
    Ok(worst)
}

/// Cross-mode consistency at `q0` within `1e-10` relative error.
pub fn crossmode_suite(q0: Complex64, count: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("crossmode");
    let res = cross_mode(q0, count, seed);
    let shown = format!("{res:?}");
    rep.single("exact then evaluate = numeric, within 1e-10", res.map(|e| e <= 1e-10), || {
        format!("worst relative error {shown}")
    });
    rep
}

pub const SUITES: [&str; 6] = ["hopf", "haar", "polar", "reps", "boson", "qtorus"];

/// Runs a suite by name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Option<SuiteReport> {
    Some(match name {
        "hopf" => hopf_suite(opts),
        "haar" => haar_suite(opts),
        "polar" => polar_suite(opts),
        "reps" => reps_suite(opts),
        "boson" => boson_suite(opts),
        "qtorus" => qtorus_suite(&TorusOptions { seed: opts.seed, ..TorusOptions::default() }),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_are_deterministic() {
        let a = random_recipes(3, 5, 3, 2);
        let b = random_recipes(3, 5, 3, 2);
        let f = ExactField::new(1).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.build(&f), y.build(&f));
        }
    }

    #[test]
    fn witness_coefficient() {
        let (w, want) = witness(&exact(1));
        assert_eq!(w, want);
    }

    #[test]
    fn small_hopf_run_passes() {
        let opts = VerifyOptions { max_degree: Some(1), random_elements: 5, ..VerifyOptions::default() };
        let r = hopf_suite(&opts);
        assert!(r.pass(), "{:?}", r.first_failure());
    }

    #[test]
    fn failing_check_reports_first_case() {
        let mut rep = SuiteReport::new("t");
        let xs = [Named("a"), Named("b"), Named("c")];
        rep.run("only a", &xs, |n| Ok(n.0 == "a"));
        assert_eq!(rep.checks[0].failure.as_deref(), Some("b"));
        assert!(!rep.pass());
    }
}
