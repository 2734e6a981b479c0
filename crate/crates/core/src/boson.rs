//! The bosonization: Pol(SU_q(2)) with an adjoined unitary `z`,
//! `z a = a z`, `z g = zeta^{-1} g z`, and its ordinary (unbraided)
//! comultiplication. Basis words are `a^n g^m g*^k z^l`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braided::Braided;
use crate::coeff::{Coeff, Field, Time};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::polsuq2::{Element, Mono, Suq2};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BMono {
    pub n: i32,
    pub m: u32,
    pub k: u32,
    pub l: i32,
}

impl BMono {
    pub const ONE: BMono = BMono { n: 0, m: 0, k: 0, l: 0 };

    pub fn new(n: i32, m: u32, k: u32, l: i32) -> Self {
        BMono { n, m, k, l }
    }

    pub fn from_mono(a: Mono, l: i32) -> Self {
        BMono { n: a.n, m: a.m, k: a.k, l }
    }

    pub fn z(l: i32) -> Self {
        BMono { n: 0, m: 0, k: 0, l }
    }

    pub fn a_part(&self) -> Mono {
        Mono::new(self.n, self.m, self.k)
    }

    /// Degree under the circle action: `m - k + l`.
    pub fn deg(&self) -> i64 {
        self.m as i64 - self.k as i64 + self.l as i64
    }

    pub fn all_up_to(bound: u32, lbound: u32) -> Vec<BMono> {
        let lb = lbound as i32;
        let mut out = Vec::new();
        for a in Mono::all_up_to(bound) {
            for l in -lb..=lb {
                out.push(BMono::from_mono(a, l));
            }
        }
        out
    }
}

impl fmt::Display for BMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.a_part();
        match (a == Mono::ONE, self.l) {
            (_, 0) => write!(f, "{a}"),
            (true, 1) => write!(f, "z"),
            (true, l) => write!(f, "z^{l}"),
            (false, 1) => write!(f, "{a} z"),
            (false, l) => write!(f, "{a} z^{l}"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BGen {
    A,
    As,
    G,
    Gs,
    Z,
    Zi,
}

pub type BElement<C> = Lin<BMono, C>;
/// Ordinary tensor square of the bosonization.
pub type BPair<C> = Lin<(BMono, BMono), C>;
/// Ordinary tensor cube of the bosonization.
pub type BTriple<C> = Lin<(BMono, BMono, BMono), C>;
/// Laurent polynomials in the circle coordinate `t`.
pub type TorusPoly<C> = Lin<i32, C>;
/// Braided triple `A (x) A (x) C(T)` with keys `(a, b, t-exponent)`.
pub type ATorus<C> = Lin<(Mono, Mono, i32), C>;

impl<F: Field> Suq2<F> {
    pub fn b_mono_mul(&self, a: BMono, b: BMono) -> BElement<F::C> {
        let tw = self.zeta_pow(-(a.l as i64) * b.a_part().deg());
        let l = a.l + b.l;
        let mut out = BElement::zero();
        for (m, c) in &self.mono_mul(a.a_part(), b.a_part()) {
            out.add_term(BMono::from_mono(*m, l), c.times(&tw));
        }
        out
    }

    pub fn b_mul(&self, x: &BElement<F::C>, y: &BElement<F::C>) -> BElement<F::C> {
        let mut out = BElement::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                out.add_scaled(&self.b_mono_mul(*a, *b), &ca.times(cb));
            }
        }
        out
    }

    /// `(x z^l)^* = z^{-l} x^*`, reordered.
    pub fn b_star(&self, x: &BElement<F::C>) -> BElement<F::C> {
        let mut out = BElement::zero();
        for (b, c) in x {
            let (s, sc) = self.star_mono(b.a_part());
            let y = self.b_mono_mul(BMono::z(-b.l), BMono::from_mono(s, 0));
            out.add_scaled(&y, &c.conj().times(&sc));
        }
        out
    }

    pub fn kappa(&self, x: &Element<F::C>) -> BElement<F::C> {
        Lin::from_terms(x.iter().map(|(m, c)| (BMono::from_mono(*m, 0), c.clone())))
    }

    /// Ordinary tensor product of two elements.
    pub fn b_tensor(&self, x: &BElement<F::C>, y: &BElement<F::C>) -> BPair<F::C> {
        let mut out = BPair::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                out.add_term((*a, *b), ca.times(cb));
            }
        }
        out
    }

    /// Legwise product in the ordinary tensor square.
    pub fn pair_mul(&self, x: &BPair<F::C>, y: &BPair<F::C>) -> BPair<F::C> {
        let mut out = BPair::zero();
        for ((a1, a2), ca) in x {
            for ((b1, b2), cb) in y {
                let l = self.b_mono_mul(*a1, *b1);
                let r = self.b_mono_mul(*a2, *b2);
                let c = ca.times(cb);
                for (x1, c1) in &l {
                    let c1 = c1.times(&c);
                    for (x2, c2) in &r {
                        out.add_term((*x1, *x2), c1.times(c2));
                    }
                }
            }
        }
        out
    }

    pub fn pair_star(&self, x: &BPair<F::C>) -> BPair<F::C> {
        let mut out = BPair::zero();
        for ((a, b), c) in x {
            let sa = self.b_star(&BElement::basis(*a));
            let sb = self.b_star(&BElement::basis(*b));
            out.add_scaled(&self.b_tensor(&sa, &sb), &c.conj());
        }
        out
    }

    fn delta_b_gen(&self, g: BGen) -> BPair<F::C> {
        let b = |n, m, k, l| BElement::<F::C>::basis(BMono::new(n, m, k, l));
        let t = |x: &BElement<F::C>, y: &BElement<F::C>| self.b_tensor(x, y);
        match g {
            BGen::A => t(&b(1, 0, 0, 0), &b(1, 0, 0, 0))
                .sub(&t(&b(0, 0, 1, 1), &b(0, 1, 0, 0)).scale(&self.q())),
            BGen::G => t(&b(0, 1, 0, 0), &b(1, 0, 0, 0)).add(&t(&b(-1, 0, 0, 1), &b(0, 1, 0, 0))),
            BGen::Z => t(&b(0, 0, 0, 1), &b(0, 0, 0, 1)),
            BGen::As => self.pair_star(&self.delta_b_gen(BGen::A)),
            BGen::Gs => self.pair_star(&self.delta_b_gen(BGen::G)),
            BGen::Zi => t(&b(0, 0, 0, -1), &b(0, 0, 0, -1)),
        }
    }

    fn delta_b_pow(&self, g: BGen, e: u32) -> BPair<F::C> {
        if e == 0 {
            return BPair::basis((BMono::ONE, BMono::ONE));
        }
        if let Some(v) = self.delta_b_pow.lock().unwrap().get(&(g, e)) {
            return v.clone();
        }
        let v = self.pair_mul(&self.delta_b_pow(g, e - 1), &self.delta_b_gen(g));
        self.delta_b_pow.lock().unwrap().insert((g, e), v.clone());
        v
    }

    pub fn delta_b_mono(&self, b: BMono) -> BPair<F::C> {
        let ga = if b.n >= 0 { BGen::A } else { BGen::As };
        let gz = if b.l >= 0 { BGen::Z } else { BGen::Zi };
        let mut acc = self.delta_b_pow(ga, b.n.unsigned_abs());
        acc = self.pair_mul(&acc, &self.delta_b_pow(BGen::G, b.m));
        acc = self.pair_mul(&acc, &self.delta_b_pow(BGen::Gs, b.k));
        self.pair_mul(&acc, &self.delta_b_pow(gz, b.l.unsigned_abs()))
    }

    /// Comultiplication of the bosonization, into the ordinary tensor square.
    pub fn delta_b(&self, x: &BElement<F::C>) -> BPair<F::C> {
        x.map_linear(|b| self.delta_b_mono(*b))
    }

    /// `h_B(a z^l) = delta_{l,0} h(a)`.
    pub fn haar_b_mono(&self, b: BMono) -> F::C {
        if b.l == 0 {
            self.haar_mono(b.a_part())
        } else {
            F::C::zero()
        }
    }

    pub fn haar_b(&self, x: &BElement<F::C>) -> F::C {
        x.pair(|b| self.haar_b_mono(*b))
    }

    pub fn counit_b_mono(&self, b: BMono) -> F::C {
        self.counit_mono(b.a_part())
    }

    /// Modular group of `h_B`; `a^n` picks up `|q|^{-2 i t n}`, `g` and `z` are fixed.
    pub fn sigma_hb(&self, x: &BElement<F::C>, t: Time) -> Result<BElement<F::C>> {
        let mut out = BElement::zero();
        for (b, c) in x {
            out.add_term(*b, c.times(&self.field().abs_q_it(t, -(b.n as i64))?));
        }
        Ok(out)
    }

    /// `a (x) b -> kappa(a) z^{deg b} (x) kappa(b)`.
    pub fn psi(&self, x: &Braided<F::C>) -> Result<BPair<F::C>> {
        if x.order() != 2 {
            return Err(Error::WrongOrder { expected: 2, got: x.order() });
        }
        let mut out = BPair::zero();
        for (k, c) in x.terms() {
            let d = k[1].deg() as i32;
            out.add_term((BMono::from_mono(k[0], d), BMono::from_mono(k[1], 0)), c.clone());
        }
        Ok(out)
    }

    /// `a (x) b (x) t^l -> kappa(a) z^{deg b + l} (x) kappa(b) z^l`.
    pub fn psi_triple(&self, x: &ATorus<F::C>) -> BPair<F::C> {
        let mut out = BPair::zero();
        for ((a, b, l), c) in x {
            let d = b.deg() as i32;
            out.add_term((BMono::from_mono(*a, d + l), BMono::from_mono(*b, *l)), c.clone());
        }
        out
    }

    /// Comultiplication routed through `A (x) C(T)`: `kappa(a) z^l -> Psi(Delta(a) (x) t^l)`.
    pub fn delta_b_tilde(&self, x: &BElement<F::C>) -> BPair<F::C> {
        let mut out = BPair::zero();
        for (b, c) in x {
            let d = self.delta_mono(b.a_part());
            let t: ATorus<F::C> = Lin::from_terms(d.terms().iter().map(|(k, v)| ((k[0], k[1], b.l), v.clone())));
            out.add_scaled(&self.psi_triple(&t), c);
        }
        out
    }

    /// The character `a z^l -> eps(a) t^l`.
    pub fn pi_char(&self, x: &BElement<F::C>) -> TorusPoly<F::C> {
        let mut out = TorusPoly::zero();
        for (b, c) in x {
            if b.m == 0 && b.k == 0 {
                out.add_term(b.l, c.clone());
            }
        }
        out
    }

    /// `(id (x) h_B)`.
    pub fn pair_id_haar(&self, x: &BPair<F::C>) -> BElement<F::C> {
        let mut out = BElement::zero();
        for ((a, b), c) in x {
            let h = self.haar_b_mono(*b);
            if !h.is_zero() {
                out.add_term(*a, c.times(&h));
            }
        }
        out
    }

    /// `(h_B (x) id)`.
    pub fn pair_haar_id(&self, x: &BPair<F::C>) -> BElement<F::C> {
        let mut out = BElement::zero();
        for ((a, b), c) in x {
            let h = self.haar_b_mono(*a);
            if !h.is_zero() {
                out.add_term(*b, c.times(&h));
            }
        }
        out
    }

    /// `(id (x) pi)`, keys `(b, t-exponent)`.
    pub fn pair_id_pi(&self, x: &BPair<F::C>) -> Lin<(BMono, i32), F::C> {
        let mut out = Lin::zero();
        for ((a, b), c) in x {
            if b.m == 0 && b.k == 0 {
                out.add_term((*a, b.l), c.clone());
            }
        }
        out
    }

    /// `(pi (x) id)`, keys `(t-exponent, b)`.
    pub fn pair_pi_id(&self, x: &BPair<F::C>) -> Lin<(i32, BMono), F::C> {
        let mut out = Lin::zero();
        for ((a, b), c) in x {
            if a.m == 0 && a.k == 0 {
                out.add_term((a.l, *b), c.clone());
            }
        }
        out
    }

    /// `(id (x) (h_T o pi))`: keeps the `t^0` part of `pi` on the second leg.
    pub fn pair_id_haar_torus(&self, x: &BPair<F::C>) -> BElement<F::C> {
        let mut out = BElement::zero();
        for ((a, _), c) in self.pair_id_pi(x).iter().filter(|((_, l), _)| *l == 0) {
            out.add_term(*a, c.clone());
        }
        out
    }

    /// `(Delta_B (x) id)` on the ordinary tensor square.
    pub fn pair_delta_left(&self, x: &BPair<F::C>) -> BTriple<F::C> {
        let mut out = BTriple::zero();
        for ((a, b), c) in x {
            for ((a1, a2), d) in &self.delta_b_mono(*a) {
                out.add_term((*a1, *a2, *b), c.times(d));
            }
        }
        out
    }

    /// `(id (x) Delta_B)` on the ordinary tensor square.
    pub fn pair_delta_right(&self, x: &BPair<F::C>) -> BTriple<F::C> {
        let mut out = BTriple::zero();
        for ((a, b), c) in x {
            for ((b1, b2), d) in &self.delta_b_mono(*b) {
                out.add_term((*a, *b1, *b2), c.times(d));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ExactField;
    use crate::scalar::Scalar;

    fn alg() -> Suq2<ExactField> {
        Suq2::new(ExactField::new(1).unwrap())
    }

    fn b(n: i32, m: u32, k: u32, l: i32) -> BElement<Scalar> {
        BElement::basis(BMono::new(n, m, k, l))
    }

    #[test]
    fn z_commutation() {
        let a = alg();
        let zi = Scalar::zeta().inv().unwrap();
        assert_eq!(a.b_mul(&b(0, 0, 0, 1), &b(0, 1, 0, 0)), b(0, 1, 0, 1).scale(&zi));
        assert_eq!(a.b_mul(&b(0, 0, 0, 1), &b(1, 0, 0, 0)), b(1, 0, 0, 1));
        assert_eq!(a.b_star(&b(0, 0, 0, 1)), b(0, 0, 0, -1));
    }

    #[test]
    fn kappa_examples() {
        let a = alg();
        assert_eq!(a.kappa(&Element::mono(Mono::ALPHA)), b(1, 0, 0, 0));
        assert_eq!(a.kappa(&Element::mono(Mono::new(0, 1, 1))), b(0, 1, 1, 0));
        let (g, al) = (Element::mono(Mono::GAMMA), Element::mono(Mono::ALPHA));
        assert_eq!(a.b_mul(&a.kappa(&g), &a.kappa(&al)), a.kappa(&a.mul(&g, &al)));
    }

    #[test]
    fn delta_b_examples() {
        let a = alg();
        assert_eq!(a.delta_b(&b(0, 0, 0, 1)), a.b_tensor(&b(0, 0, 0, 1), &b(0, 0, 0, 1)));
        let want = a.b_tensor(&b(0, 1, 0, 0), &b(1, 0, 0, 0)).add(&a.b_tensor(&b(-1, 0, 0, 1), &b(0, 1, 0, 0)));
        assert_eq!(a.delta_b(&b(0, 1, 0, 0)), want);
        assert_eq!(a.delta_b(&b(0, 0, 0, 0)), a.b_tensor(&b(0, 0, 0, 0), &b(0, 0, 0, 0)));
    }

    #[test]
    fn haar_b_examples() {
        let a = alg();
        assert!(a.haar_b(&b(0, 0, 0, 1)).is_zero());
        let h = a.haar_b(&a.kappa(&Element::mono(Mono::new(0, 1, 1))));
        assert_eq!(h, Scalar::one().add_ref(&Scalar::r_pow(2)).inv().unwrap());
        assert!(a.haar_b(&b(0, 1, 1, 2)).is_zero());
    }

    #[test]
    fn sigma_hb_examples() {
        let a = alg();
        let t = Time::imag_half(2);
        assert_eq!(a.sigma_hb(&b(1, 0, 0, 0), t).unwrap(), b(1, 0, 0, 0).scale(&Scalar::r_pow(2)));
        assert_eq!(a.sigma_hb(&b(0, 1, 0, 0), t).unwrap(), b(0, 1, 0, 0));
        assert_eq!(a.sigma_hb(&b(0, 0, 0, 1), t).unwrap(), b(0, 0, 0, 1));
    }

    #[test]
    fn psi_examples() {
        let a = alg();
        let da = a.delta(&Element::mono(Mono::ALPHA));
        assert_eq!(a.psi(&da).unwrap(), a.delta_b(&b(1, 0, 0, 0)));
        let one_g = Braided::basis(vec![Mono::ONE, Mono::GAMMA]);
        assert_eq!(a.psi(&one_g).unwrap(), a.b_tensor(&b(0, 0, 0, 1), &b(0, 1, 0, 0)));
        let g_one = Braided::basis(vec![Mono::GAMMA, Mono::ONE]);
        assert_eq!(a.psi(&g_one).unwrap(), a.b_tensor(&b(0, 1, 0, 0), &b(0, 0, 0, 0)));
    }

    #[test]
    fn psi_triple_examples() {
        let a = alg();
        let t = |x: Mono, y: Mono, l: i32| ATorus::<Scalar>::basis((x, y, l));
        assert_eq!(a.psi_triple(&t(Mono::ONE, Mono::ONE, 1)), a.b_tensor(&b(0, 0, 0, 1), &b(0, 0, 0, 1)));
        assert_eq!(a.psi_triple(&t(Mono::ALPHA, Mono::ONE, 0)), a.b_tensor(&b(1, 0, 0, 0), &b(0, 0, 0, 0)));
        assert_eq!(a.psi_triple(&t(Mono::ONE, Mono::GAMMA, 0)), a.b_tensor(&b(0, 0, 0, 1), &b(0, 1, 0, 0)));
    }

    #[test]
    fn pi_examples() {
        let a = alg();
        let a2 = a.kappa(&Element::mono(Mono::new(2, 0, 0)));
        assert_eq!(a.pi_char(&a2), TorusPoly::basis(0));
        assert_eq!(a.pi_char(&b(0, 0, 0, 3)), TorusPoly::basis(3));
        assert!(a.pi_char(&b(0, 1, 0, 1)).is_zero());
    }
}
