//! Numeric laboratory for the noncommutative torus `C(T^2_zeta)`.
//!
//! Elements are finite sums `sum a_{nm} U^n V^m` with `UV = zeta VU`. At a
//! root of unity `zeta = e^{2 pi i n/d}` the torus is realised by the
//! matrices `z1 U0, z2 V0` over the classical torus, which gives operator
//! norms by sampling. Every assertion here is a one-sided norm inequality.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

fn cis(turns: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * turns)
}

/// Finite sum `sum a_{nm} U^n V^m`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TorusElement {
    terms: BTreeMap<(i64, i64), C64>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(n: i64, m: i64, c: C64) -> Self {
        let mut out = Self::zero();
        out.add_term(n, m, c);
        out
    }

    pub fn u() -> Self {
        Self::monomial(1, 0, C64::new(1.0, 0.0))
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, C64::new(1.0, 0.0))
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), C64)>>(it: I) -> Self {
        let mut out = Self::zero();
        for ((n, m), c) in it {
            out.add_term(n, m, c);
        }
        out
    }

    pub fn add_term(&mut self, n: i64, m: i64, c: C64) {
        let e = self.terms.entry((n, m)).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&(n, m));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &C64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, n: i64, m: i64) -> C64 {
        self.terms.get(&(n, m)).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(n, m), &c) in &o.terms {
            out.add_term(n, m, c);
        }
        out
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, &x)| (k, x * c)))
    }

    /// Product using `(U^a V^b)(U^c V^e) = zeta^{-bc} U^{a+c} V^{b+e}`.
    pub fn mul(&self, o: &Self, zeta: C64) -> Self {
        let mut out = Self::zero();
        for (&(a, b), &x) in &self.terms {
            for (&(c, e), &y) in &o.terms {
                out.add_term(a + c, b + e, x * y * zeta_pow(zeta, -b * c));
            }
        }
        out
    }

    /// Adjoint using `(U^n V^m)* = zeta^{-nm} U^{-n} V^{-m}`.
    pub fn adjoint(&self, zeta: C64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(n, m), &c)| ((-n, -m), c.conj() * zeta_pow(zeta, -n * m))),
        )
    }

    /// Multiplies each coefficient by `f(n) g(m)`.
    pub fn multiply_coefficients<F: Fn(i64) -> C64, G: Fn(i64) -> C64>(&self, f: F, g: G) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(n, m), &c)| ((n, m), c * f(n) * g(m))))
    }
}

fn zeta_pow(zeta: C64, k: i64) -> C64 {
    let arg = zeta.arg() * k as f64;
    C64::from_polar(zeta.norm().powf(k as f64), arg)
}

/// The `d x d` realisation of the torus at `zeta = e^{2 pi i n/d}`.
#[derive(Clone, Debug)]
pub struct BocaRep {
    pub d: usize,
    pub n: i64,
    pub u0: CMatrix,
    pub v0: CMatrix,
}

/// Builds `U0` (cyclic shift `e_j -> e_{j-1}`) and `V0 = diag(zeta^j)`.
pub fn boca(d: usize, n: i64) -> Result<BocaRep> {
    if d == 0 || (d as i64).gcd(&n) != 1 {
        return Err(Error::NotCoprime { n, d: d as i64 });
    }
    let mut u0 = CMatrix::zeros(d, d);
    let mut v0 = CMatrix::zeros(d, d);
    for j in 0..d {
        u0[(j, (j + 1) % d)] = C64::new(1.0, 0.0);
    }
    let rep = BocaRep { d, n, u0, v0: v0.clone() };
    for j in 0..d {
        v0[(j, j)] = rep.zeta_pow(j as i64);
    }
    Ok(BocaRep { v0, ..rep })
}

impl BocaRep {
    /// `zeta^k`, reduced exactly modulo `d`.
    pub fn zeta_pow(&self, k: i64) -> C64 {
        let d = self.d as i64;
        let e = (self.n.rem_euclid(d) * k.rem_euclid(d)).rem_euclid(d);
        cis(e as f64 / d as f64)
    }

    pub fn zeta(&self) -> C64 {
        self.zeta_pow(1)
    }

    /// `U0^n V0^m`, which sends `e_j` to `zeta^{mj} e_{j-n}`.
    pub fn word(&self, n: i64, m: i64) -> CMatrix {
        let d = self.d as i64;
        let mut out = CMatrix::zeros(self.d, self.d);
        for j in 0..d {
            out[((j - n).rem_euclid(d) as usize, j as usize)] = self.zeta_pow(m * j);
        }
        out
    }

    /// Spectral norm of `U0 V0 - zeta V0 U0`.
    pub fn commutation_residual(&self) -> f64 {
        let lhs = &self.u0 * &self.v0;
        let rhs = (&self.v0 * &self.u0) * self.zeta();
        spectral_norm(&(lhs - rhs))
    }

    /// `sum a_{nm} z1^n z2^m U0^n V0^m`.
    pub fn matrix_at(&self, x: &TorusElement, z1: C64, z2: C64) -> CMatrix {
        let mut out = CMatrix::zeros(self.d, self.d);
        for (&(n, m), &c) in x.terms() {
            let w = c * z1.powi(n as i32) * z2.powi(m as i32);
            out += self.word(n, m) * w;
        }
        out
    }

    /// The operator `phi0(x) = Ot (O x O*)^T Ot*`.
    pub fn phi0(&self, x: &CMatrix) -> CMatrix {
        let d = self.d;
        let s = 1.0 / (d as f64).sqrt();
        let o = CMatrix::from_fn(d, d, |l, k| self.zeta_pow((k * l) as i64) * s);
        let ot = CMatrix::from_fn(d, d, |i, k| {
            if i == (d - k) % d {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let inner = (&o * x * o.adjoint()).transpose();
        &ot * inner * ot.adjoint()
    }

    /// Coefficient relabelling `a_{nm} U^n V^m -> a_{nm} V^n U^m = a_{nm} zeta^{-nm} U^m V^n`.
    pub fn flip_map(&self, x: &TorusElement) -> TorusElement {
        TorusElement::from_terms(x.terms().map(|(&(n, m), &c)| ((m, n), c * self.zeta_pow(-n * m))))
    }
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.singular_values().max()
}

/// Sampling of the classical torus used for operator norms.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NormConfig {
    pub grid: usize,
    pub random: usize,
    pub seed: u64,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig { grid: 64, random: 100, seed: 7 }
    }
}

impl NormConfig {
    pub fn points(&self) -> Vec<(C64, C64)> {
        let g = self.grid.max(1);
        let mut pts = Vec::with_capacity(g * g + self.random);
        for a in 0..g {
            for b in 0..g {
                pts.push((cis(a as f64 / g as f64), cis(b as f64 / g as f64)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.random {
            pts.push((cis(rng.gen::<f64>()), cis(rng.gen::<f64>())));
        }
        pts
    }
}

/// Max over sampled `(z1, z2)` of the spectral norm of the realised element.
pub fn torus_norm(x: &TorusElement, rep: &BocaRep, cfg: &NormConfig) -> f64 {
    torus_norm_at(x, rep, &cfg.points())
}

fn torus_norm_at(x: &TorusElement, rep: &BocaRep, pts: &[(C64, C64)]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let words: Vec<(i64, i64, C64, CMatrix)> =
        x.terms().map(|(&(n, m), &c)| (n, m, c, rep.word(n, m))).collect();
    pts.par_iter()
        .map(|&(z1, z2)| {
            let mut acc = CMatrix::zeros(rep.d, rep.d);
            for (n, m, c, w) in &words {
                acc += w * (c * z1.powi(*n as i32) * z2.powi(*m as i32));
            }
            spectral_norm(&acc)
        })
        .reduce(|| 0.0, f64::max)
}

/// Outcome of a norm experiment.
#[derive(Clone, Debug, Serialize)]
pub struct QReport {
    pub experiment: String,
    pub params: Value,
    pub max_ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Random element with `terms` monomials, exponents in `[-radius, radius]`.
pub fn random_element(rng: &mut ChaCha8Rng, terms: usize, radius: i64) -> TorusElement {
    let mut out = TorusElement::zero();
    while out.len() < terms {
        let n = rng.gen_range(-radius..=radius);
        let m = rng.gen_range(-radius..=radius);
        let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        out.add_term(n, m, c);
    }
    out
}

/// Checks `||flip(a)|| <= d^2 ||a||` for random `a`.
pub fn flip_bound_check(d: usize, n: i64, trials: usize, seed: u64, cfg: &NormConfig) -> Result<QReport> {
    let rep = boca(d, n)?;
    let pts = cfg.points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = 2 * d as i64;
    let samples: Vec<TorusElement> = (0..trials)
        .map(|_| {
            let k = rng.gen_range(1..=8);
            random_element(&mut rng, k, radius)
        })
        .collect();
    let max_ratio = samples
        .iter()
        .map(|a| torus_norm_at(&rep.flip_map(a), &rep, &pts) / torus_norm_at(a, &rep, &pts))
        .fold(0.0, f64::max);
    let bound = (d * d) as f64;
    Ok(QReport {
        experiment: "flip".into(),
        params: json!({"d": d, "n": n, "trials": trials, "seed": seed, "grid": cfg.grid, "random_points": cfg.random}),
        max_ratio,
        bound,
        pass: max_ratio <= bound,
    })
}

/// Ratio `||flip(a)|| / ||a||` for `a = sum_{j<d} zeta^{j(j+1)/2} U^j V^j` along
/// Fibonacci approximants `F_{k-1}/F_k` of the golden rotation.
pub fn flip_growth_series(max_index: usize, cfg: &NormConfig) -> Result<Vec<(usize, f64)>> {
    let mut fib = vec![1usize, 1];
    while fib.len() <= max_index {
        let l = fib.len();
        fib.push(fib[l - 1] + fib[l - 2]);
    }
    let pts = cfg.points();
    let mut out = Vec::new();
    for k in 3..=max_index {
        let d = fib[k];
        let rep = boca(d, fib[k - 1] as i64)?;
        let a = TorusElement::from_terms((0..d as i64).map(|j| ((j, j), rep.zeta_pow(j * (j + 1) / 2))));
        let ratio = torus_norm_at(&rep.flip_map(&a), &rep, &pts) / torus_norm_at(&a, &rep, &pts);
        out.push((d, ratio));
    }
    Ok(out)
}

/// `g_z` on `|n| <= truncation` together with its multiplier bound.
#[derive(Clone, Debug)]
pub struct Multiplier {
    pub values: Vec<(i64, C64)>,
    pub bound: f64,
}

pub fn gz(z: C64, n: i64) -> C64 {
    if n >= 0 {
        z.powi(n as i32)
    } else {
        z.conj().powi((-n) as i32)
    }
}

pub fn multiplier_gz(z: C64, truncation: i64) -> Multiplier {
    let values = (-truncation..=truncation).map(|n| (n, gz(z, n))).collect();
    let a = z.norm();
    let bound = if a < 1.0 { (1.0 + a) / (1.0 - a) } else { 1.0 };
    Multiplier { values, bound }
}

/// Atom of the measure `rho`.
#[derive(Clone, Copy, Debug)]
pub struct Atom {
    pub z1: C64,
    pub z2: C64,
    pub mass: C64,
}

/// The `d^2` atoms `(zeta^k, zeta^l)` with mass `zeta^{-kl}/d`.
pub fn rho_measure(d: usize, n: i64) -> Result<Vec<Atom>> {
    let rep = boca(d, n)?;
    let mut out = Vec::with_capacity(d * d);
    for k in 0..d as i64 {
        for l in 0..d as i64 {
            out.push(Atom { z1: rep.zeta_pow(k), z2: rep.zeta_pow(l), mass: rep.zeta_pow(-k * l) / d as f64 });
        }
    }
    Ok(out)
}

/// Largest deviation of `rho(z1^{-a} z2^{-b})` from `zeta^{ab}` over
/// `|a|, |b| <= 2d`, and the total variation of `rho`.
pub fn rho_checks(d: usize, n: i64) -> Result<(f64, f64)> {
    let rep = boca(d, n)?;
    let atoms = rho_measure(d, n)?;
    let r = 2 * d as i64;
    let mut err: f64 = 0.0;
    for a in -r..=r {
        for b in -r..=r {
            let val: C64 = atoms.iter().map(|t| t.mass * gz(t.z1, -a) * gz(t.z2, -b)).sum();
            err = err.max((val - rep.zeta_pow(a * b)).norm());
        }
    }
    let tv = atoms.iter().map(|t| t.mass.norm()).sum();
    Ok((err, tv))
}

/// A rotation `zeta = e^{2 pi i theta}` with `theta` held as an exact
/// fraction `theta = turns / 2^64`, so `zeta^k` is computed without
/// rounding for every integer `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phase(pub u64);

impl Phase {
    pub fn from_turns(theta: f64) -> Self {
        let f = theta.rem_euclid(1.0);
        Phase((f * 2f64.powi(64)) as u64)
    }

    pub fn from_zeta(zeta: C64) -> Self {
        Self::from_turns(zeta.arg() / (2.0 * PI))
    }

    /// `(sqrt 5 - 1)/2`, correctly rounded down to 64 bits.
    pub fn golden() -> Self {
        let five: BigUint = BigUint::from(5u32) << 126usize;
        let s = five.sqrt() - (BigUint::from(1u32) << 63usize);
        Phase(s.to_u64().expect("golden phase fits in 64 bits"))
    }

    pub fn turns(&self) -> f64 {
        self.0 as f64 / 2f64.powi(64)
    }

    /// Phase of `zeta^k`.
    pub fn pow(&self, k: i64) -> u64 {
        self.0.wrapping_mul(k as u64)
    }

    pub fn zeta_pow(&self, k: i64) -> C64 {
        cis(self.pow(k) as f64 / 2f64.powi(64))
    }
}

/// Circular distance of a phase from 0, in units of `2^-64` turns.
fn circ(x: u64) -> u64 {
    x.min(x.wrapping_neg())
}

/// `|e^{2 pi i x} - 1|` for a phase `x`.
fn chord(x: u64) -> f64 {
    2.0 * (PI * circ(x) as f64 / 2f64.powi(64)).sin()
}

/// Largest circular distance `delta` with `|e^{2 pi i delta} - 1| <= tol`.
fn chord_threshold(tol: f64) -> u64 {
    if tol >= 2.0 {
        return u64::MAX;
    }
    let turns = (tol / 2.0).asin() / PI;
    (turns * 2f64.powi(64)).floor() as u64
}

const HALF_TURN: u64 = 1 << 63;

/// The pair of sequences with `zeta^{n_s m_R} -> 1` and `zeta^{n_R m_t} -> -1`.
#[derive(Clone, Debug, Serialize)]
pub struct StarSequence {
    pub ns: Vec<u64>,
    pub ms: Vec<u64>,
    /// Per depth `R'`: `max_{s<R'} |zeta^{n_s m_R'} - 1|` and `max_{t<=R'} |zeta^{n_R' m_t} + 1|`.
    pub residuals: Vec<(f64, f64)>,
}

impl StarSequence {
    /// Every depth `R'` has both residuals at most `1/R'`.
    pub fn pass(&self) -> bool {
        self.residuals
            .iter()
            .enumerate()
            .all(|(i, &(a, b))| a <= 1.0 / (i + 1) as f64 && b <= 1.0 / (i + 1) as f64)
    }
}

/// First `k` in `start..=limit` whose phase `start_phase + (k - start) step`
/// lies within circular distance `thr` of `target`.
///
/// Candidates are visited in blocks of `BLOCK` consecutive `k`. Inside a
/// block the offsets `j step` are kept sorted by phase, so the hits of a
/// block form at most two intervals of that order, and a range-minimum
/// table returns the smallest hitting offset.
fn scan(start: u64, limit: u64, start_phase: u64, step: u64, target: u64, thr: u64) -> Option<u64> {
    if start > limit {
        return None;
    }
    if thr >= HALF_TURN {
        return Some(start);
    }
    let span = limit - start + 1;
    if span <= 4 * BLOCK as u64 {
        return scan_naive(start, limit, start_phase, step, target, thr);
    }
    let table = OffsetTable::new(step);
    let block_step = step.wrapping_mul(BLOCK as u64);
    let mut base = start;
    let mut ph = start_phase.wrapping_sub(target);
    loop {
        if let Some(j) = table.first_hit(ph, thr) {
            let k = base + j as u64;
            return (k <= limit).then_some(k);
        }
        base = base.checked_add(BLOCK as u64)?;
        if base > limit {
            return None;
        }
        ph = ph.wrapping_add(block_step);
    }
}

fn scan_naive(start: u64, limit: u64, start_phase: u64, step: u64, target: u64, thr: u64) -> Option<u64> {
    let mut ph = start_phase.wrapping_sub(target);
    let mut k = start;
    while k <= limit {
        if circ(ph) <= thr {
            return Some(k);
        }
        ph = ph.wrapping_add(step);
        k += 1;
    }
    None
}

const BLOCK: usize = 1 << 16;

/// Offsets `j < BLOCK` sorted by the phase `j step`, with a sparse table
/// answering minimum-offset queries over ranges of that order.
struct OffsetTable {
    phases: Vec<u64>,
    levels: Vec<Vec<u32>>,
}

impl OffsetTable {
    fn new(step: u64) -> Self {
        let mut pairs: Vec<(u64, u32)> = (0..BLOCK as u32).map(|j| (step.wrapping_mul(j as u64), j)).collect();
        pairs.sort_unstable();
        let phases = pairs.iter().map(|p| p.0).collect();
        let mut levels = vec![pairs.iter().map(|p| p.1).collect::<Vec<u32>>()];
        let mut w = 1;
        while 2 * w <= BLOCK {
            let prev = levels.last().unwrap();
            let next = (0..=BLOCK - 2 * w).map(|i| prev[i].min(prev[i + w])).collect();
            levels.push(next);
            w *= 2;
        }
        OffsetTable { phases, levels }
    }

    /// Minimum offset among sorted positions `lo..hi`.
    fn range_min(&self, lo: usize, hi: usize) -> Option<u32> {
        if lo >= hi {
            return None;
        }
        let lvl = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let w = 1 << lvl;
        Some(self.levels[lvl][lo].min(self.levels[lvl][hi - w]))
    }

    /// Positions whose phase lies in `[a, b]`, with `a <= b`.
    fn positions(&self, a: u64, b: u64) -> (usize, usize) {
        (self.phases.partition_point(|&x| x < a), self.phases.partition_point(|&x| x <= b))
    }

    /// Smallest `j` with `circ(ph + j step) <= thr`.
    fn first_hit(&self, ph: u64, thr: u64) -> Option<u32> {
        let lo = ph.wrapping_neg().wrapping_sub(thr);
        let hi = lo.wrapping_add(2 * thr);
        let (x, y) = if lo <= hi {
            let (i, j) = self.positions(lo, hi);
            (self.range_min(i, j), None)
        } else {
            let (i, j) = self.positions(lo, u64::MAX);
            let (k, l) = self.positions(0, hi);
            (self.range_min(i, j), self.range_min(k, l))
        };
        match (x, y) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Constructs `(n_1..n_R, m_1..m_R)` by linear scans bounded by `search_limit`.
pub fn star_sequence(zeta: Phase, r: usize, search_limit: u64) -> Result<StarSequence> {
    // zeta has exact order 2^(64 - tz); small orders make the scans hopeless.
    let tz = zeta.0.trailing_zeros().min(64);
    if zeta.0 == 0 || (64 - tz < 64 && (1u64 << (64 - tz)) <= search_limit) {
        return Err(Error::Unsupported("zeta is a root of unity of small order".into()));
    }
    let mut ns: Vec<u64> = Vec::new();
    let mut ms: Vec<u64> = vec![1];
    let n1 = scan(1, search_limit, zeta.0, zeta.0, HALF_TURN, chord_threshold(1.0))
        .ok_or(Error::SearchExhausted(search_limit))?;
    ns.push(n1);
    for stage in 2..=r {
        let max_n = *ns.iter().max().unwrap() as f64;
        let thr = chord_threshold(1.0 / (stage as f64 * max_n));
        let p0 = (ms.last().unwrap() + 1) / 2;
        let target = zeta.pow(-1);
        let p = scan(p0, search_limit, zeta.pow(2 * p0 as i64), zeta.0.wrapping_mul(2), target, thr)
            .ok_or(Error::SearchExhausted(search_limit))?;
        ms.push(2 * p + 1);
        let max_m = *ms.iter().max().unwrap() as f64;
        let thr = chord_threshold(1.0 / (stage as f64 * max_m));
        let n0 = ns.last().unwrap() + 1;
        let n = scan(n0, search_limit, zeta.pow(n0 as i64), zeta.0, HALF_TURN, thr)
            .ok_or(Error::SearchExhausted(search_limit))?;
        ns.push(n);
    }
    let residuals = (0..r)
        .map(|i| {
            let to_one = (0..i)
                .map(|s| chord(zeta.0.wrapping_mul(ns[s].wrapping_mul(ms[i]))))
                .fold(0.0, f64::max);
            let to_minus_one = (0..=i)
                .map(|t| chord(zeta.0.wrapping_mul(ns[i].wrapping_mul(ms[t])).wrapping_sub(HALF_TURN)))
                .fold(0.0, f64::max);
            (to_one, to_minus_one)
        })
        .collect();
    Ok(StarSequence { ns, ms: ms[..r].to_vec(), residuals })
}

/// Spectrum points `0` and `lambda |q0|^k` for random `lambda` and `k < depth`.
fn spectrum_points(rng: &mut ChaCha8Rng, q_abs: f64, depth: i32, count: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0)];
    while out.len() < count {
        let k = rng.gen_range(0..depth);
        out.push(cis(rng.gen::<f64>()) * q_abs.powi(k));
    }
    out
}

/// Checks `||b|| <= ((1+|q0|)/(1-|q0|))^2` where `b` multiplies the
/// coefficients of a unit-norm `a` by `g_{z1}(n) g_{z2}(m)` at sampled
/// points of the spectrum of `gamma`.
pub fn spectrum_eval_bound(
    q0: C64,
    d: usize,
    trials: usize,
    samples: usize,
    seed: u64,
    cfg: &NormConfig,
) -> Result<QReport> {
    let q_abs = q0.norm();
    if !(q_abs > 0.0 && q_abs < 1.0) {
        return Err(Error::InvalidQ(format!("|q0| = {q_abs} is not in (0, 1)")));
    }
    let rep = boca(d, 1)?;
    let pts = cfg.points();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = ((1.0 + q_abs) / (1.0 - q_abs)).powi(2);
    let mut max_ratio: f64 = 0.0;
    for _ in 0..trials {
        let k = rng.gen_range(1..=6);
        let raw = random_element(&mut rng, k, d as i64);
        let a = raw.scale(C64::new(1.0 / torus_norm_at(&raw, &rep, &pts), 0.0));
        let zs = spectrum_points(&mut rng, q_abs, 8, samples);
        let ws = spectrum_points(&mut rng, q_abs, 8, samples);
        for (&z1, &z2) in zs.iter().zip(ws.iter()) {
            let b = a.multiply_coefficients(|n| gz(z1, n), |m| gz(z2, m));
            max_ratio = max_ratio.max(torus_norm_at(&b, &rep, &pts));
        }
    }
    Ok(QReport {
        experiment: "spectrum".into(),
        params: json!({"q0": [q0.re, q0.im], "d": d, "trials": trials, "samples": samples, "seed": seed}),
        max_ratio,
        bound,
        pass: max_ratio <= bound,
    })
}

/// Realises `iota1 = shift (x) diag(zeta^n)` and `iota2 = 1 (x) shift` on
/// `l^2({-w..w})^{(x)2}` and returns `||(iota1 iota2 - zeta iota2 iota1) e||`
/// maximised over basis vectors `e` away from the truncation boundary.
pub fn torus_commutation_residual(zeta: C64, w: i64) -> f64 {
    let side = (2 * w + 1) as usize;
    let dim = side * side;
    let idx = |a: i64, b: i64| ((a + w) as usize) * side + (b + w) as usize;
    let mut shift = CMatrix::zeros(side, side);
    for a in -w..w {
        shift[((a + 1 + w) as usize, (a + w) as usize)] = C64::new(1.0, 0.0);
    }
    let diag = CMatrix::from_fn(side, side, |i, j| if i == j { zeta_pow(zeta, i as i64 - w) } else { C64::new(0.0, 0.0) });
    let id = CMatrix::identity(side, side);
    let iota1 = shift.kronecker(&diag);
    let iota2 = id.kronecker(&shift);
    let res = &iota1 * &iota2 - (&iota2 * &iota1) * zeta;
    debug_assert_eq!(res.nrows(), dim);
    let mut worst: f64 = 0.0;
    for a in -w + 1..w - 1 {
        for b in -w + 1..w - 1 {
            worst = worst.max(res.column(idx(a, b)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn boca_d2_matrices() {
        let rep = boca(2, 1).unwrap();
        let u = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let v = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        assert!(close(&rep.u0, &u, 1e-15));
        assert!(close(&rep.v0, &v, 1e-15));
        assert!(close(&(&rep.u0 * &rep.v0), &(-(&rep.v0 * &rep.u0)), 1e-15));
    }

    #[test]
    fn boca_rejects_non_coprime() {
        assert!(matches!(boca(4, 2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn boca_residuals_small() {
        for d in 1..=16 {
            for n in 1..d as i64 {
                if (d as i64).gcd(&n) == 1 {
                    assert!(boca(d, n).unwrap().commutation_residual() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn words_match_matrix_powers() {
        let rep = boca(5, 2).unwrap();
        for n in -3..=3i64 {
            for m in -3..=3i64 {
                let un = if n >= 0 { rep.u0.pow(n as u32) } else { rep.u0.adjoint().pow((-n) as u32) };
                let vm = if m >= 0 { rep.v0.pow(m as u32) } else { rep.v0.adjoint().pow((-m) as u32) };
                assert!(close(&rep.word(n, m), &(un * vm), 1e-12));
            }
        }
    }

    #[test]
    fn realisation_is_a_star_homomorphism() {
        let rep = boca(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (z1, z2) = (cis(0.13), cis(0.71));
        for _ in 0..20 {
            let x = random_element(&mut rng, 4, 3);
            let y = random_element(&mut rng, 4, 3);
            let xy = rep.matrix_at(&x.mul(&y, rep.zeta()), z1, z2);
            let prod = rep.matrix_at(&x, z1, z2) * rep.matrix_at(&y, z1, z2);
            assert!(close(&xy, &prod, 1e-10));
            let adj = rep.matrix_at(&x.adjoint(rep.zeta()), z1, z2);
            assert!(close(&adj, &rep.matrix_at(&x, z1, z2).adjoint(), 1e-10));
        }
    }

    #[test]
    fn torus_norm_of_unitary_is_one() {
        let rep = boca(3, 1).unwrap();
        let n = torus_norm(&TorusElement::u(), &rep, &NormConfig { grid: 8, random: 4, seed: 1 });
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn torus_norm_u_plus_v_matches_eigenvalue_oracle() {
        let rep = boca(2, 1).unwrap();
        let cfg = NormConfig { grid: 64, random: 0, seed: 0 };
        let x = TorusElement::u().add(&TorusElement::v());
        // z1 U0 + z2 V0 = [[z2, z1], [z1, -z2]] has Gram eigenvalues 2 +- |a - conj(a)|
        // with a = z1 conj(z2).
        let mut best: f64 = 0.0;
        for (z1, z2) in cfg.points() {
            let a = z1 * z2.conj();
            let off = a - a.conj();
            let lam = 2.0 + off.norm();
            best = best.max(lam.sqrt());
        }
        assert!((torus_norm(&x, &rep, &cfg) - best).abs() < 1e-10);
    }

    #[test]
    fn phi0_swaps_exponents() {
        for d in [2usize, 3, 5, 7] {
            let rep = boca(d, 1).unwrap();
            for n in 0..d as i64 {
                for m in 0..d as i64 {
                    let lhs = rep.phi0(&rep.word(n, m));
                    assert!(close(&lhs, &rep.word(m, n), 1e-12), "d={d} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn phi0_small_cases() {
        let rep = boca(2, 1).unwrap();
        assert!(close(&rep.phi0(&rep.u0), &rep.v0, 1e-14));
        let id = CMatrix::identity(3, 3);
        let rep3 = boca(3, 1).unwrap();
        assert!(close(&rep3.phi0(&id), &id, 1e-14));
    }

    #[test]
    fn flip_on_generators() {
        let rep = boca(3, 1).unwrap();
        assert_eq!(rep.flip_map(&TorusElement::u()), TorusElement::v());
        let uv = TorusElement::monomial(1, 1, c(1.0, 0.0));
        let vu = TorusElement::v().mul(&TorusElement::u(), rep.zeta());
        let f = rep.flip_map(&uv);
        assert!((f.coeff(1, 1) - vu.coeff(1, 1)).norm() < 1e-14);
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn flip_realises_reversed_words() {
        let rep = boca(5, 2).unwrap();
        let one = c(1.0, 0.0);
        for n in -3..=3i64 {
            for m in -3..=3i64 {
                let f = rep.flip_map(&TorusElement::monomial(n, m, one));
                let lhs = rep.matrix_at(&f, one, one);
                let rhs = rep.word(0, n) * rep.word(m, 0);
                assert!(close(&lhs, &rhs, 1e-12), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn flip_bound_small_run() {
        let cfg = NormConfig { grid: 16, random: 10, seed: 2 };
        let rep = flip_bound_check(3, 1, 10, 5, &cfg).unwrap();
        assert!(rep.pass);
        assert!(rep.max_ratio >= 1.0 - 1e-9);
    }

    #[test]
    fn gz_examples() {
        let g = multiplier_gz(c(0.5, 0.0), 200);
        let s: f64 = g.values.iter().map(|(_, v)| v.norm()).sum();
        assert!((s - 3.0).abs() < 1e-12);
        assert!((g.bound - 3.0).abs() < 1e-15);
        assert_eq!(multiplier_gz(cis(0.3), 3).bound, 1.0);
        let z0 = multiplier_gz(c(0.0, 0.0), 3);
        for (n, v) in z0.values {
            assert_eq!(v, if n == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        }
    }

    #[test]
    fn rho_examples() {
        for d in [1usize, 2, 3, 5] {
            let (err, tv) = rho_checks(d, 1).unwrap();
            assert!(err <= 1e-9, "d={d}");
            assert!((tv - d as f64).abs() <= 1e-9);
        }
        let atoms = rho_measure(2, 1).unwrap();
        let val: C64 = atoms.iter().map(|t| t.mass * gz(t.z1, -1) * gz(t.z2, -1)).sum();
        assert!((val - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn golden_phase_value() {
        let g = Phase::golden();
        assert_eq!(g.0, 0x9E37_79B9_7F4A_7C15);
        assert!((g.turns() - 0.618_033_988_749_894_8).abs() < 1e-15);
    }

    #[test]
    fn star_sequence_depth_three() {
        let s = star_sequence(Phase::golden(), 3, 1 << 40).unwrap();
        assert_eq!(s.ms[0], 1);
        assert!(s.pass(), "{s:?}");
        assert!(s.residuals[0].1 <= 1.0);
    }

    #[test]
    fn blocked_scan_matches_naive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let step: u64 = rng.gen();
            let target: u64 = rng.gen();
            let start = rng.gen_range(0..1000u64);
            let phase = step.wrapping_mul(start);
            let thr = rng.gen_range(0..(u64::MAX >> 14));
            let limit = start + 2_000_000;
            assert_eq!(
                scan(start, limit, phase, step, target, thr),
                scan_naive(start, limit, phase, step, target, thr)
            );
        }
    }

    #[test]
    fn star_sequence_rejects_roots_of_unity() {
        assert!(star_sequence(Phase(1 << 62), 3, 1000).is_err());
        assert!(matches!(star_sequence(Phase::from_turns(0.5), 3, 1000), Err(_)));
    }

    #[test]
    fn spectrum_bound_small_run() {
        let cfg = NormConfig { grid: 16, random: 5, seed: 1 };
        let rep = spectrum_eval_bound(c(0.5, 0.0), 3, 2, 5, 11, &cfg).unwrap();
        assert_eq!(rep.bound, 9.0);
        assert!(rep.pass);
    }

    #[test]
    fn zero_spectrum_point_keeps_constant_term() {
        let x = TorusElement::from_terms([((0, 0), c(0.5, 0.0)), ((1, 2), c(1.0, 0.0))]);
        let b = x.multiply_coefficients(|n| gz(c(0.0, 0.0), n), |m| gz(c(0.0, 0.0), m));
        assert_eq!(b, TorusElement::monomial(0, 0, c(0.5, 0.0)));
    }

    #[test]
    fn truncated_torus_commutation() {
        assert!(torus_commutation_residual(cis(0.618), 6) <= 1e-10);
    }
}
