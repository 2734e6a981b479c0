//! The *-algebra Pol(SU_q(2)) in the normal form `a^n g^m g*^k`.
//!
//! `n < 0` stands for `a*^{|n|}`. The product of two basis words has a
//! closed form: commuting `a^{n2}` to the left past `g^{m1} g*^{k1}` costs
//! `qb^{-n2 m1} q^{-n2 k1}`, and a mixed product `a^a a*^b` (or `a*^b a^a`)
//! collapses to `a^{a-b}` times a polynomial in `x = g g*`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Field, Time};
use crate::error::Result;
use crate::lin::Lin;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mono {
    pub n: i32,
    pub m: u32,
    pub k: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { n: 0, m: 0, k: 0 };
    pub const ALPHA: Mono = Mono { n: 1, m: 0, k: 0 };
    pub const ALPHA_STAR: Mono = Mono { n: -1, m: 0, k: 0 };
    pub const GAMMA: Mono = Mono { n: 0, m: 1, k: 0 };
    pub const GAMMA_STAR: Mono = Mono { n: 0, m: 0, k: 1 };

    pub fn new(n: i32, m: u32, k: u32) -> Self {
        Mono { n, m, k }
    }

    pub fn deg(&self) -> i64 {
        self.m as i64 - self.k as i64
    }

    /// The generator word spelling this basis element.
    pub fn word(&self) -> Vec<Gen> {
        let a = if self.n >= 0 { Gen::A } else { Gen::As };
        let mut w = vec![a; self.n.unsigned_abs() as usize];
        w.extend(std::iter::repeat(Gen::G).take(self.m as usize));
        w.extend(std::iter::repeat(Gen::Gs).take(self.k as usize));
        w
    }

    /// All basis elements with `|n|, m, k <= bound`.
    pub fn all_up_to(bound: u32) -> Vec<Mono> {
        let b = bound as i32;
        let mut out = Vec::new();
        for n in -b..=b {
            for m in 0..=bound {
                for k in 0..=bound {
                    out.push(Mono::new(n, m, k));
                }
            }
        }
        out
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pw = |name: &str, e: u32| if e == 1 { name.to_string() } else { format!("{name}^{e}") };
        if self.n > 0 {
            parts.push(pw("a", self.n as u32));
        } else if self.n < 0 {
            parts.push(pw("a*", self.n.unsigned_abs()));
        }
        if self.m > 0 {
            parts.push(pw("g", self.m));
        }
        if self.k > 0 {
            parts.push(pw("g*", self.k));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Generators `a`, `a*`, `g`, `g*`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    As,
    G,
    Gs,
}

impl Gen {
    pub fn deg(self) -> i64 {
        match self {
            Gen::A | Gen::As => 0,
            Gen::G => 1,
            Gen::Gs => -1,
        }
    }

    pub fn mono(self) -> Mono {
        match self {
            Gen::A => Mono::ALPHA,
            Gen::As => Mono::ALPHA_STAR,
            Gen::G => Mono::GAMMA,
            Gen::Gs => Mono::GAMMA_STAR,
        }
    }
}

pub type Element<C> = Lin<Mono, C>;

impl<C: Coeff> Element<C> {
    pub fn one() -> Self {
        Self::basis(Mono::ONE)
    }

    pub fn scalar(c: C) -> Self {
        Self::term(Mono::ONE, c)
    }

    pub fn mono(m: Mono) -> Self {
        Self::basis(m)
    }

    /// Homogeneous components indexed by degree.
    pub fn degree_split(&self) -> BTreeMap<i64, Element<C>> {
        let mut out: BTreeMap<i64, Element<C>> = BTreeMap::new();
        for (m, c) in self.iter() {
            out.entry(m.deg()).or_default().add_term(*m, c.clone());
        }
        out
    }

    /// The degree, if the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.keys().map(|m| m.deg());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

/// The algebra with its parameters and memo tables.
pub struct Suq2<F: Field> {
    field: F,
    pub(crate) alpha_poly: Mutex<HashMap<(i32, i32), Vec<F::C>>>,
    pub(crate) delta_pow: Mutex<HashMap<(Gen, u32), crate::braided::Braided<F::C>>>,
    pub(crate) delta_b_pow: Mutex<HashMap<(crate::boson::BGen, u32), crate::boson::BPair<F::C>>>,
}

impl<F: Field> Suq2<F> {
    pub fn new(field: F) -> Self {
        Suq2 {
            field,
            alpha_poly: Mutex::new(HashMap::new()),
            delta_pow: Mutex::new(HashMap::new()),
            delta_b_pow: Mutex::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn sigma(&self) -> i8 {
        self.field.sigma()
    }

    pub fn q(&self) -> F::C {
        self.field.q()
    }

    pub fn qb(&self) -> F::C {
        self.field.qb()
    }

    pub fn zeta_pow(&self, k: i64) -> F::C {
        self.field.zeta_pow(k)
    }

    pub fn gen(&self, g: Gen) -> Element<F::C> {
        Element::mono(g.mono())
    }

    /// `a^{n1} a^{n2} = a^{n1+n2} * sum_j p_j x^j` with `x = g g*`; returns `p`.
    fn alpha_product(&self, n1: i32, n2: i32) -> Vec<F::C> {
        if n1 >= 0 && n2 >= 0 || n1 <= 0 && n2 <= 0 {
            return vec![F::C::one()];
        }
        if let Some(p) = self.alpha_poly.lock().unwrap().get(&(n1, n2)) {
            return p.clone();
        }
        let steps = n1.abs().min(n2.abs()) as i64;
        let mut p = vec![F::C::one()];
        for j in 0..steps {
            // factor 1 - r^e x
            let e = if n1 > 0 {
                2 * (-(n2 as i64) - j)
            } else {
                -2 * (n2 as i64 - 1 - j)
            };
            let c = self.field.r_pow(e);
            let mut next = p.clone();
            next.push(F::C::zero());
            for (i, pi) in p.iter().enumerate() {
                next[i + 1] = next[i + 1].minus(&pi.times(&c));
            }
            p = next;
        }
        self.alpha_poly.lock().unwrap().insert((n1, n2), p.clone());
        p
    }

    pub fn mono_mul(&self, a: Mono, b: Mono) -> Element<F::C> {
        let n2 = b.n as i64;
        let c = self.field.q_qb(-n2 * a.k as i64, -n2 * a.m as i64);
        let p = self.alpha_product(a.n, b.n);
        let n = a.n + b.n;
        let (m, k) = (a.m + b.m, a.k + b.k);
        let mut out = Element::zero();
        for (j, pj) in p.iter().enumerate() {
            let j = j as u32;
            out.add_term(Mono::new(n, m + j, k + j), c.times(pj));
        }
        out
    }

    pub fn mul(&self, x: &Element<F::C>, y: &Element<F::C>) -> Element<F::C> {
        let mut out = Element::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                out.add_scaled(&self.mono_mul(*a, *b), &ca.times(cb));
            }
        }
        out
    }

    pub fn pow(&self, x: &Element<F::C>, e: u32) -> Element<F::C> {
        let mut acc = Element::one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `(a^n g^m g*^k)^* = g^k g*^m a^{-n}`, reordered.
    pub fn star_mono(&self, a: Mono) -> (Mono, F::C) {
        let n = a.n as i64;
        let c = self.field.q_qb(n * a.m as i64, n * a.k as i64);
        (Mono::new(-a.n, a.k, a.m), c)
    }

    pub fn star(&self, x: &Element<F::C>) -> Element<F::C> {
        let mut out = Element::zero();
        for (a, c) in x {
            let (b, s) = self.star_mono(*a);
            out.add_term(b, c.conj().times(&s));
        }
        out
    }

    pub fn counit_mono(&self, a: Mono) -> F::C {
        if a.m == 0 && a.k == 0 {
            F::C::one()
        } else {
            F::C::zero()
        }
    }

    pub fn counit(&self, x: &Element<F::C>) -> F::C {
        x.pair(|a| self.counit_mono(*a))
    }

    /// `h(g^m g*^m) = (1 - r^2) / (1 - r^{2(m+1)})`.
    pub fn haar_weight(&self, m: u32) -> F::C {
        let one = F::C::one();
        let num = one.minus(&self.field.r_pow(2));
        let den = one.minus(&self.field.r_pow(2 * (m as i64 + 1)));
        num.times(&den.recip().expect("1 - r^{2(m+1)} is nonzero"))
    }

    pub fn haar_mono(&self, a: Mono) -> F::C {
        if a.n == 0 && a.m == a.k {
            self.haar_weight(a.m)
        } else {
            F::C::zero()
        }
    }

    pub fn haar(&self, x: &Element<F::C>) -> F::C {
        x.pair(|a| self.haar_mono(*a))
    }

    fn antipode_gen(&self, g: Gen) -> Element<F::C> {
        match g {
            Gen::A => Element::mono(Mono::ALPHA_STAR),
            Gen::As => Element::mono(Mono::ALPHA),
            Gen::G => Element::term(Mono::GAMMA, self.field.qb().negated()),
            Gen::Gs => Element::term(Mono::GAMMA_STAR, self.field.q_qb(-1, 0).negated()),
        }
    }

    /// Folds `S(u g) = zeta^{-deg(u) deg(g)} S(g) S(u)` over the generator word.
    pub fn antipode_mono(&self, a: Mono) -> Element<F::C> {
        let mut acc = Element::one();
        let mut d = 0i64;
        for g in a.word() {
            let s = self.mul(&self.antipode_gen(g), &acc);
            acc = s.scale(&self.field.zeta_pow(-d * g.deg()));
            d += g.deg();
        }
        acc
    }

    pub fn antipode(&self, x: &Element<F::C>) -> Element<F::C> {
        x.map_linear(|a| self.antipode_mono(*a))
    }

    /// Scaling group: a degree-`d` word picks up `|q|^{2 i t d}`.
    pub fn tau(&self, x: &Element<F::C>, t: Time) -> Result<Element<F::C>> {
        let mut out = Element::zero();
        for (a, c) in x {
            out.add_term(*a, c.times(&self.field.abs_q_it(t, a.deg())?));
        }
        Ok(out)
    }

    /// Modular group of `h`: `a^n` picks up `|q|^{-2 i t n}`.
    pub fn sigma_h(&self, x: &Element<F::C>, t: Time) -> Result<Element<F::C>> {
        let mut out = Element::zero();
        for (a, c) in x {
            out.add_term(*a, c.times(&self.field.abs_q_it(t, -(a.n as i64))?));
        }
        Ok(out)
    }

    /// Degree-`d` component times `v^{d^2}`, or `v^{-d^2}` for the inverse.
    pub fn residual(&self, x: &Element<F::C>, inverse: bool) -> Element<F::C> {
        let sign = if inverse { -1 } else { 1 };
        let mut out = Element::zero();
        for (a, c) in x {
            let d = a.deg();
            out.add_term(*a, c.times(&self.field.v_pow(sign * d * d)));
        }
        out
    }

    /// `R = S o tau_{i/2} o theta`.
    pub fn unitary_antipode(&self, x: &Element<F::C>) -> Element<F::C> {
        let y = self.residual(x, false);
        let y = self.tau(&y, Time::imag_half(1)).expect("imaginary time");
        self.antipode(&y)
    }
}
