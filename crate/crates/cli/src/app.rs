//! Command definitions and their execution.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};
use suq2::braided::{Braided, LegMap};
use suq2::qtorus::{self, NormConfig, Phase, QReport};
use suq2::reps::{RepReport, Representation};
use suq2::scalar::{parse_rat, Rat};
use suq2::verify::{self, SuiteReport, VerifyOptions};
use suq2::{ExactField, Field, NumericField, Suq2, Time};

use crate::io::{rep_from_json, rep_json, rep_text, value_json};
use crate::render::Literal;
use crate::value::{Context, Evaluator, Value};

#[derive(Parser, Debug)]
#[command(name = "suq2", version, about = "Exact and numeric computations in braided SU_q(2)")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Coefficients in Q(r, v) or complex numbers at a fixed q.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Rational value put in for r = |q| in exact results, e.g. 1/2.
    #[arg(long, global = true)]
    pub r: Option<String>,
    /// Sign in q = sigma r v, +1 or -1 (exact mode).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// The deformation parameter as re,im (numeric mode).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Seed of the random elements and sample points
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest degree of the random elements in verify suites
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<u32>,
    /// Output as plain text or JSON
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExprArg {
    /// Expression, e.g. "a g^2 - q g* (x) a".
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
}

#[derive(Args, Debug)]
pub struct TimeArg {
    /// Imaginary time t = i s with s a half-integer, e.g. -1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub imag: Option<String>,
    /// Real time (numeric mode).
    #[arg(long, allow_hyphen_values = true)]
    pub real: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form.
    Nf(ExprArg),
    /// Involution; legwise braided star on tensors.
    Star(ExprArg),
    /// Degree of a homogeneous element, or its homogeneous parts.
    Deg(ExprArg),
    /// Counit.
    Eps(ExprArg),
    /// Haar state.
    Haar(ExprArg),
    /// Antipode, applied to every leg of a tensor.
    #[command(name = "S")]
    S(ExprArg),
    /// Unitary antipode, applied to every leg of a tensor.
    #[command(name = "R")]
    R(ExprArg),
    /// The degree automorphism theta.
    Theta {
        #[command(flatten)]
        x: ExprArg,
        #[arg(long)]
        inverse: bool,
    },
    /// Scaling group tau_t.
    Tau {
        #[command(flatten)]
        x: ExprArg,
        #[command(flatten)]
        t: TimeArg,
    },
    /// Modular group sigma_t of the Haar state.
    Sigma {
        #[command(flatten)]
        x: ExprArg,
        #[command(flatten)]
        t: TimeArg,
    },
    /// Comultiplication; on tensors it acts on the leg given by --leg.
    Delta {
        #[command(flatten)]
        x: ExprArg,
        #[arg(long)]
        leg: Option<usize>,
    },
    /// Braiding of a two-leg tensor.
    Flip {
        #[command(flatten)]
        x: ExprArg,
        #[arg(long)]
        inverse: bool,
    },
    /// Multiplication of a two-leg tensor.
    Mu(ExprArg),
    /// Embedding into the bosonization.
    Kappa(ExprArg),
    /// Comultiplication of the bosonization.
    #[command(name = "deltaB")]
    DeltaB(ExprArg),
    /// Haar state of the bosonization.
    #[command(name = "haarB")]
    HaarB(ExprArg),
    /// Braided tensor square into the tensor square of the bosonization.
    Psi(ExprArg),
    /// Restriction of a bosonization element to the torus.
    Pi(ExprArg),
    /// Lift of a representation to the bosonization.
    Lift(RepArg),
    /// Unitarity, invariance and corepresentation checks.
    ValidateRep(RepArg),
    /// Twisted tensor product of two representations.
    TensorRep {
        /// Left factor: `u` for the fundamental representation or a JSON file.
        left: String,
        /// Right factor, as for the left one.
        right: String,
    },
    /// Runs an identity suite: hopf, haar, polar, reps, boson, qtorus or crossmode.
    Verify {
        suite: String,
        /// Number of random elements in the exact suites.
        #[arg(long)]
        elements: Option<usize>,
    },
    /// Numeric quantum torus experiments.
    Qtorus(TorusArgs),
}

#[derive(Args, Debug)]
pub struct RepArg {
    /// `u` for the fundamental representation or a JSON file.
    pub rep: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Phi0,
    Rho,
    Boca,
    Flip,
    Star,
    Spectrum,
    Growth,
}

#[derive(Args, Debug)]
pub struct TorusArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// Matrix size of the finite model.
    #[arg(long, default_value_t = 5)]
    pub d: usize,
    /// zeta = exp(2 pi i n / d).
    #[arg(long, default_value_t = 1)]
    pub n: i64,
    /// Random elements per experiment
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Torus grid side for norm evaluation.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// Extra random torus points for norm evaluation.
    #[arg(long, default_value_t = 100)]
    pub random: usize,
    /// Depth of the star sequence.
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    /// Search bound of the star sequence.
    #[arg(long, default_value_t = 1 << 40)]
    pub limit: u64,
    /// Rotation angle in turns for the star sequence; golden by default.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Spectrum points per trial.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Last Fibonacci index of the growth series.
    #[arg(long, default_value_t = 10)]
    pub max_index: usize,
    /// Writes the growth series as CSV to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Failure kinds with their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable input or malformed expressions; exit code 2.
    Usage(String),
    /// A computation that could not be carried out; exit code 1.
    Math(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Math(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Math(m) => m,
        }
    }
}

/// What a command printed and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Json,
    pub pass: bool,
}

impl Outcome {
    fn ok(text: String, json: Json) -> Self {
        Outcome { text, json, pass: true }
    }

    pub fn output(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.trim_end().to_string(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn math(e: impl std::fmt::Display) -> Failure {
    Failure::Math(e.to_string())
}

pub fn parse_q(s: &str) -> Run<Complex64> {
    let bad = || usage(format!("--q expects re,im, got '{s}'"));
    let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn parse_sigma(s: &str) -> Run<i8> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(usage(format!("--sigma expects +1 or -1, got '{s}'"))),
    }
}

fn parse_time(t: &TimeArg, mode: Mode) -> Run<Time> {
    match (&t.imag, t.real) {
        (Some(s), None) => {
            let s = parse_rat(s).map_err(|e| usage(format!("--imag: {e}")))?;
            let twice = s * Rat::from_integer(2.into());
            if !twice.is_integer() {
                return Err(usage("--imag must be a multiple of 1/2"));
            }
            let twice: i64 = twice.to_integer().try_into().map_err(|_| usage("--imag is too large"))?;
            Ok(Time::imag_half(twice))
        }
        (None, Some(x)) if mode == Mode::Numeric => Ok(Time::Real(x)),
        (None, Some(_)) => Err(usage("--real needs --mode numeric")),
        _ => Err(usage("give exactly one of --imag or --real")),
    }
}

/// Rejects flag combinations that do not fit the command.
fn check_flags(cli: &Cli) -> Run<()> {
    let o = &cli.opts;
    let torus = matches!(cli.command, Command::Qtorus(_));
    match o.mode {
        Mode::Exact => {
            if o.q.is_some() {
                return Err(usage("--q needs --mode numeric"));
            }
        }
        Mode::Numeric => {
            if o.r.is_some() {
                return Err(usage("--r applies to exact mode only"));
            }
            if o.sigma.is_some() {
                return Err(usage("--sigma applies to exact mode only; numeric mode reads it off --q"));
            }
            if o.q.is_none() && !torus {
                return Err(usage("--mode numeric needs --q re,im"));
            }
        }
    }
    if let Command::Verify { suite, .. } = &cli.command {
        match (suite.as_str(), o.mode) {
            ("crossmode", Mode::Exact) => return Err(usage("verify crossmode needs --mode numeric --q re,im")),
            ("crossmode", Mode::Numeric) => {}
            (_, Mode::Numeric) => return Err(usage("verify suites other than crossmode run in exact mode")),
            _ => {}
        }
    }
    Ok(())
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Run<Outcome> {
    check_flags(cli)?;
    let o = &cli.opts;
    match &cli.command {
        Command::Verify { suite, elements } => return run_verify(o, suite, *elements),
        Command::Qtorus(t) => return run_qtorus(o, t),
        _ => {}
    }
    match o.mode {
        Mode::Exact => {
            let sigma = o.sigma.as_deref().map(parse_sigma).transpose()?.unwrap_or(1);
            let r = o.r.as_deref().map(parse_rat).transpose().map_err(|e| usage(format!("--r: {e}")))?;
            if let Some(r) = &r {
                if !(r > &Rat::zero() && r < &Rat::one()) {
                    return Err(usage(format!("--r must lie in (0, 1), got {r}")));
                }
            }
            let alg = Suq2::new(ExactField::new(sigma).map_err(math)?);
            Session { alg: &alg, r, mode: o.mode }.command(&cli.command)
        }
        Mode::Numeric => {
            let q0 = parse_q(o.q.as_deref().expect("checked"))?;
            let alg = Suq2::new(NumericField::new(q0).map_err(|e| usage(e.to_string()))?);
            Session { alg: &alg, r: None, mode: o.mode }.command(&cli.command)
        }
    }
}

struct Session<'a, F: Field> {
    alg: &'a Suq2<F>,
    r: Option<Rat>,
    mode: Mode,
}

impl<'a, F: Field> Session<'a, F>
where
    F::C: Literal,
{
    fn sigma(&self) -> i8 {
        self.alg.sigma()
    }

    fn read(&self, text: &str, ctx: Context) -> Run<Value<F::C>> {
        Evaluator::new(self.alg, ctx)
            .eval_str(text)
            .map_err(|e| usage(format!("in '{text}' at {e}")))
    }

    fn coeff(&self, c: &F::C) -> Run<F::C> {
        match &self.r {
            Some(r) => c.at_r(r).map_err(math),
            None => Ok(c.clone()),
        }
    }

    fn value_out(&self, v: Value<F::C>) -> Run<Outcome> {
        let terms = v.terms.try_convert(|c| self.coeff(c))?;
        let v = Value { order: v.order, terms };
        Ok(Outcome::ok(v.render(self.sigma()), value_json(&v, self.sigma())))
    }

    fn scalar_out(&self, c: &F::C) -> Run<Outcome> {
        let c = self.coeff(c)?;
        let text = c.render(self.sigma());
        Ok(Outcome::ok(text.clone(), json!({ "text": text, "value": c.to_json() })))
    }

    fn element(&self, x: &ExprArg) -> Run<suq2::Element<F::C>> {
        let v = self.read(&x.expr, Context::Pol)?;
        v.to_element().ok_or_else(|| usage(format!("expected a single-leg element, got a tensor of order {}", v.order)))
    }

    fn braided(&self, x: &ExprArg, order: Option<usize>) -> Run<Braided<F::C>> {
        let v = self.read(&x.expr, Context::Pol)?;
        if let Some(n) = order {
            if v.order != n {
                return Err(usage(format!("expected a tensor of order {n}, got order {}", v.order)));
            }
        }
        Ok(v.to_braided().expect("z is rejected in algebra expressions"))
    }

    fn boson(&self, x: &ExprArg) -> Run<suq2::boson::BElement<F::C>> {
        let v = self.read(&x.expr, Context::Boson)?;
        v.to_belement().ok_or_else(|| usage(format!("expected a single-leg element, got a tensor of order {}", v.order)))
    }

    fn leg_map(&self, x: &ExprArg, f: LegMap) -> Run<Outcome> {
        let t = self.braided(x, None)?;
        let fs = vec![f; t.order()];
        let y = self.alg.map_legs(&t, &fs).map_err(math)?;
        self.value_out(Value::from_braided(&y))
    }

    fn rep(&self, src: &str) -> Run<Representation<F::C>> {
        if src == "u" {
            return Ok(self.alg.fundamental());
        }
        let text = fs::read_to_string(src).map_err(|e| usage(format!("{src}: {e}")))?;
        let j: Json = serde_json::from_str(&text).map_err(|e| usage(format!("{src}: {e}")))?;
        rep_from_json(&j, &Evaluator::new(self.alg, Context::Pol)).map_err(|e| usage(format!("{src}: {e}")))
    }

    fn rep_out(&self, u: &Representation<F::C>) -> Run<Outcome> {
        let entries = u
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x.try_convert(|c| self.coeff(c))).collect::<Run<Vec<_>>>())
            .collect::<Run<Vec<_>>>()?;
        let u = Representation { weights: u.weights.clone(), entries };
        Ok(Outcome::ok(rep_text(&u, self.sigma()), rep_json(&u, self.sigma())))
    }

    fn command(&self, cmd: &Command) -> Run<Outcome> {
        let alg = self.alg;
        match cmd {
            Command::Nf(x) => self.value_out(self.read(&x.expr, Context::Pol)?),
            Command::Star(x) => {
                let t = self.braided(x, None)?;
                self.value_out(Value::from_braided(&alg.btp_star(&t)))
            }
            Command::Deg(x) => {
                let e = self.element(x)?;
                if let Some(d) = e.homogeneous_degree() {
                    return Ok(Outcome::ok(d.to_string(), json!({ "degree": d })));
                }
                let mut text = String::new();
                let mut parts = serde_json::Map::new();
                for (d, part) in e.degree_split() {
                    let shown = Value::from_element(&part).render(self.sigma());
                    text.push_str(&format!("{d}: {shown}\n"));
                    parts.insert(d.to_string(), json!(shown));
                }
                Ok(Outcome::ok(text, json!({ "degree": null, "parts": parts })))
            }
            Command::Eps(x) => self.scalar_out(&alg.counit(&self.element(x)?)),
            Command::Haar(x) => self.scalar_out(&alg.haar(&self.element(x)?)),
            Command::S(x) => self.leg_map(x, LegMap::S),
            Command::R(x) => self.leg_map(x, LegMap::R),
            Command::Theta { x, inverse } => self.leg_map(x, if *inverse { LegMap::ThetaInv } else { LegMap::Theta }),
            Command::Tau { x, t } => self.leg_map(x, LegMap::Tau(parse_time(t, self.mode)?)),
            Command::Sigma { x, t } => self.leg_map(x, LegMap::Sigma(parse_time(t, self.mode)?)),
            Command::Delta { x, leg } => {
                let t = self.braided(x, None)?;
                let out = match (t.order(), leg) {
                    (1, None | Some(0)) => alg.delta(&t.to_element().map_err(math)?),
                    (_, Some(l)) => alg.delta_leg(&t, *l).map_err(|e| usage(e.to_string()))?,
                    (n, None) => return Err(usage(format!("a tensor of order {n} needs --leg"))),
                };
                self.value_out(Value::from_braided(&out))
            }
            Command::Flip { x, inverse } => {
                let t = self.braided(x, Some(2))?;
                self.value_out(Value::from_braided(&alg.flip(&t, *inverse).map_err(math)?))
            }
            Command::Mu(x) => {
                let t = self.braided(x, Some(2))?;
                self.value_out(Value::from_element(&alg.mu(&t).map_err(math)?))
            }
            Command::Kappa(x) => self.value_out(Value::from_belement(&alg.kappa(&self.element(x)?))),
            Command::DeltaB(x) => self.value_out(Value::from_bpair(&alg.delta_b(&self.boson(x)?))),
            Command::HaarB(x) => self.scalar_out(&alg.haar_b(&self.boson(x)?)),
            Command::Psi(x) => {
                let t = self.braided(x, Some(2))?;
                self.value_out(Value::from_bpair(&alg.psi(&t).map_err(math)?))
            }
            Command::Pi(x) => {
                let p = alg.pi_char(&self.boson(x)?).try_convert(|c| self.coeff(c))?;
                let text = crate::value::render_torus(&p, self.sigma());
                let terms: Vec<Json> = p.iter().map(|(l, c)| json!({ "l": l, "coeff": c.to_json() })).collect();
                Ok(Outcome::ok(text.clone(), json!({ "text": text, "terms": terms })))
            }
            Command::Lift(src) => {
                let u = self.rep(&src.rep)?;
                let lifted = alg.boson_lift(&u);
                let mut text = String::new();
                let mut rows = Vec::new();
                for (i, row) in lifted.iter().enumerate() {
                    let mut out = Vec::new();
                    for (j, x) in row.iter().enumerate() {
                        let v = Value::from_belement(&x.try_convert(|c| self.coeff(c))?);
                        text.push_str(&format!("U[{i}][{j}] = {}\n", v.render(self.sigma())));
                        out.push(value_json(&v, self.sigma()));
                    }
                    rows.push(out);
                }
                Ok(Outcome::ok(text, json!({ "dim": u.dim(), "weights": u.weights, "entries": rows })))
            }
            Command::ValidateRep(src) => {
                let u = self.rep(&src.rep)?;
                Ok(rep_report(&alg.validate(&u)))
            }
            Command::TensorRep { left, right } => {
                let (u, v) = (self.rep(left)?, self.rep(right)?);
                self.rep_out(&alg.tensor_rep(&u, &v))
            }
            Command::Verify { .. } | Command::Qtorus(_) => unreachable!("handled before mode dispatch"),
        }
    }
}

fn rep_report(r: &RepReport) -> Outcome {
    let failures: Vec<Json> = r
        .failures
        .iter()
        .map(|f| json!({ "check": format!("{:?}", f.check), "row": f.row, "col": f.col }))
        .collect();
    let text = if r.pass() {
        "PASS unitary, invariant corepresentation".to_string()
    } else {
        let mut t = String::from("FAIL\n");
        for f in &r.failures {
            t.push_str(&format!("{:?} at ({}, {})\n", f.check, f.row, f.col));
        }
        t
    };
    Outcome { text, json: json!({ "pass": r.pass(), "failures": failures }), pass: r.pass() }
}

fn suite_outcome(rep: &SuiteReport) -> Outcome {
    let mut text = String::new();
    for c in &rep.checks {
        match &c.failure {
            None => text.push_str(&format!("PASS {} ({} cases)\n", c.name, c.cases)),
            Some(f) => text.push_str(&format!("FAIL {} ({} cases); first counterexample: {f}\n", c.name, c.cases)),
        }
    }
    let verdict = if rep.pass() { "PASS" } else { "FAIL" };
    text.push_str(&format!("suite {} {verdict}", rep.suite));
    let mut json = serde_json::to_value(rep).expect("serializable");
    json["pass"] = json!(rep.pass());
    Outcome { text, json, pass: rep.pass() }
}

fn run_verify(o: &GlobalOpts, suite: &str, elements: Option<usize>) -> Run<Outcome> {
    let seed = o.seed.unwrap_or(7);
    if suite == "crossmode" {
        let q0 = parse_q(o.q.as_deref().expect("checked"))?;
        let count = elements.unwrap_or(200);
        return Ok(suite_outcome(&verify::crossmode_suite(q0, count, seed)));
    }
    let sigma = o.sigma.as_deref().map(parse_sigma).transpose()?.unwrap_or(1);
    let mut opts = VerifyOptions { max_degree: o.max_degree, seed, sigma, ..VerifyOptions::default() };
    if let Some(n) = elements {
        opts.random_elements = n;
    }
    match verify::run_suite(suite, &opts) {
        Some(rep) => Ok(suite_outcome(&rep)),
        None => Err(usage(format!("unknown suite '{suite}'; expected one of {:?} or crossmode", verify::SUITES))),
    }
}

fn report_outcome(r: &QReport) -> Outcome {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    let text = format!(
        "{} max_ratio {:.6e} bound {:.6e} {verdict}\nparams {}",
        r.experiment, r.max_ratio, r.bound, r.params
    );
    Outcome { text, json: serde_json::to_value(r).expect("serializable"), pass: r.pass }
}

fn run_qtorus(o: &GlobalOpts, t: &TorusArgs) -> Run<Outcome> {
    let cfg = NormConfig { grid: t.grid, random: t.random, seed: o.seed.unwrap_or(7) };
    let seed = o.seed.unwrap_or(7);
    let report = match t.experiment {
        Experiment::Phi0 => {
            let b = qtorus::boca(t.d, t.n).map_err(|e| usage(e.to_string()))?;
            let mut worst: f64 = 0.0;
            for n in 0..t.d as i64 {
                for m in 0..t.d as i64 {
                    worst = worst.max((b.phi0(&b.word(n, m)) - b.word(m, n)).norm());
                }
            }
            QReport {
                experiment: "phi0".into(),
                params: json!({ "d": t.d, "n": t.n }),
                max_ratio: worst,
                bound: 1e-12,
                pass: worst <= 1e-12,
            }
        }
        Experiment::Rho => {
            let (err, tv) = qtorus::rho_checks(t.d, t.n).map_err(|e| usage(e.to_string()))?;
            QReport {
                experiment: "rho".into(),
                params: json!({ "d": t.d, "n": t.n, "total_variation": tv }),
                max_ratio: err,
                bound: 1e-9,
                pass: err <= 1e-9 && (tv - t.d as f64).abs() <= 1e-9,
            }
        }
        Experiment::Boca => {
            let res = qtorus::boca(t.d, t.n).map_err(|e| usage(e.to_string()))?.commutation_residual();
            QReport {
                experiment: "boca".into(),
                params: json!({ "d": t.d, "n": t.n }),
                max_ratio: res,
                bound: 1e-12,
                pass: res <= 1e-12,
            }
        }
        Experiment::Flip => {
            qtorus::flip_bound_check(t.d, t.n, t.trials, seed, &cfg).map_err(|e| usage(e.to_string()))?
        }
        Experiment::Spectrum => {
            let q0 = match &o.q {
                Some(s) => parse_q(s)?,
                None => Complex64::new(0.5, 0.0),
            };
            qtorus::spectrum_eval_bound(q0, t.d, t.trials, t.samples, seed, &cfg)
                .map_err(|e| usage(e.to_string()))?
        }
        Experiment::Star => {
            let zeta = t.theta.map_or_else(Phase::golden, Phase::from_turns);
            let s = qtorus::star_sequence(zeta, t.depth, t.limit).map_err(math)?;
            let worst = s
                .residuals
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| a.max(b) * (i + 1) as f64)
                .fold(0.0, f64::max);
            QReport {
                experiment: "star".into(),
                params: json!({ "theta": zeta.turns(), "depth": t.depth, "limit": t.limit, "ns": s.ns, "ms": s.ms }),
                max_ratio: worst,
                bound: 1.0,
                pass: s.pass(),
            }
        }
        Experiment::Growth => {
            let series = qtorus::flip_growth_series(t.max_index, &cfg).map_err(math)?;
            if let Some(path) = &t.csv {
                let mut csv = String::from("d,ratio\n");
                for (d, ratio) in &series {
                    csv.push_str(&format!("{d},{ratio}\n"));
                }
                fs::write(path, csv).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            let (d_max, last) = series.last().copied().unwrap_or((1, 0.0));
            let bound = (d_max * d_max) as f64;
            QReport {
                experiment: "growth".into(),
                params: json!({ "max_index": t.max_index, "series": series }),
                max_ratio: last,
                bound,
                pass: series.iter().all(|&(d, r)| r <= (d * d) as f64),
            }
        }
    };
    Ok(report_outcome(&report))
}
