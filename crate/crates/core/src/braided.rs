//! Braided tensor powers of Pol(SU_q(2)).
//!
//! An element of the `n`-fold braided power is a combination of key
//! tuples `(a_1, ..., a_n)`, read as `i_1(a_1) ... i_n(a_n)`. Bringing a
//! product of two such words back to leg order costs
//! `prod_{i>j} zeta^{-deg(b_i) deg(c_j)}`.

use crate::coeff::{Coeff, Field, Time};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::polsuq2::{Element, Gen, Mono, Suq2};

#[derive(Clone, PartialEq, Debug)]
pub struct Braided<C: Coeff> {
    order: usize,
    terms: Lin<Vec<Mono>, C>,
}

/// Degree-preserving maps that can act on a single leg.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LegMap {
    S,
    R,
    Theta,
    ThetaInv,
    Tau(Time),
    Sigma(Time),
}

/// Functionals that contract a leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functional {
    Counit,
    Haar,
}

impl<C: Coeff> Braided<C> {
    pub fn zero(order: usize) -> Self {
        Braided { order, terms: Lin::zero() }
    }

    pub fn from_lin(order: usize, terms: Lin<Vec<Mono>, C>) -> Self {
        debug_assert!(terms.keys().all(|k| k.len() == order));
        Braided { order, terms }
    }

    pub fn term(key: Vec<Mono>, c: C) -> Self {
        Braided { order: key.len(), terms: Lin::term(key, c) }
    }

    pub fn basis(key: Vec<Mono>) -> Self {
        Self::term(key, C::one())
    }

    /// The pure tensor `x_1 (x) ... (x) x_n`.
    pub fn tensor(legs: &[&Element<C>]) -> Self {
        let mut acc: Lin<Vec<Mono>, C> = Lin::basis(Vec::new());
        for leg in legs {
            let mut next = Lin::zero();
            for (k, c) in &acc {
                for (m, d) in leg.iter() {
                    let mut key = k.clone();
                    key.push(*m);
                    next.add_term(key, c.times(d));
                }
            }
            acc = next;
        }
        Braided { order: legs.len(), terms: acc }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &Lin<Vec<Mono>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        Ok(Braided { order: self.order, terms: self.terms.add(&o.terms) })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        Ok(Braided { order: self.order, terms: self.terms.sub(&o.terms) })
    }

    pub fn scale(&self, c: &C) -> Self {
        Braided { order: self.order, terms: self.terms.scale(c) }
    }

    pub fn add_term(&mut self, key: Vec<Mono>, c: C) {
        debug_assert_eq!(key.len(), self.order);
        self.terms.add_term(key, c);
    }

    fn same_order(&self, o: &Self) -> Result<()> {
        if self.order != o.order {
            return Err(Error::OrderMismatch(self.order, o.order));
        }
        Ok(())
    }

    fn need_order(&self, n: usize) -> Result<()> {
        if self.order != n {
            return Err(Error::WrongOrder { expected: n, got: self.order });
        }
        Ok(())
    }

    /// Order-one elements are elements of the algebra.
    pub fn to_element(&self) -> Result<Element<C>> {
        self.need_order(1)?;
        Ok(Lin::from_terms(self.terms.iter().map(|(k, c)| (k[0], c.clone()))))
    }

    pub fn from_element(x: &Element<C>) -> Self {
        Braided { order: 1, terms: Lin::from_terms(x.iter().map(|(m, c)| (vec![*m], c.clone()))) }
    }

    pub fn convert<D: Coeff, E, G: Fn(&C) -> std::result::Result<D, E>>(
        &self,
        f: G,
    ) -> std::result::Result<Braided<D>, E> {
        Ok(Braided { order: self.order, terms: self.terms.try_convert(f)? })
    }
}

fn key_deg(k: &[Mono]) -> Vec<i64> {
    k.iter().map(|m| m.deg()).collect()
}

impl<F: Field> Suq2<F> {
    fn key_mul(&self, a: &[Mono], c: &[Mono]) -> Lin<Vec<Mono>, F::C> {
        let da = key_deg(a);
        let dc = key_deg(c);
        let mut e = 0i64;
        for i in 0..a.len() {
            for j in 0..i {
                e += da[i] * dc[j];
            }
        }
        let mut acc: Lin<Vec<Mono>, F::C> = Lin::term(Vec::with_capacity(a.len()), self.zeta_pow(-e));
        for (x, y) in a.iter().zip(c) {
            let leg = self.mono_mul(*x, *y);
            let mut next = Lin::zero();
            for (k, ck) in &acc {
                for (m, cm) in &leg {
                    let mut key = k.clone();
                    key.push(*m);
                    next.add_term(key, ck.times(cm));
                }
            }
            acc = next;
        }
        acc
    }

    /// Twisted product in the braided tensor power.
    pub fn btp_mul(&self, x: &Braided<F::C>, y: &Braided<F::C>) -> Result<Braided<F::C>> {
        x.same_order(y)?;
        let mut out = Lin::zero();
        for (a, ca) in x.terms.iter() {
            for (c, cc) in y.terms.iter() {
                out.add_scaled(&self.key_mul(a, c), &ca.times(cc));
            }
        }
        Ok(Braided { order: x.order, terms: out })
    }

    /// Legwise star followed by the twist `prod_{i<j} zeta^{-d_i d_j}`.
    pub fn btp_star(&self, x: &Braided<F::C>) -> Braided<F::C> {
        let mut out = Lin::zero();
        for (key, c) in x.terms.iter() {
            let d = key_deg(key);
            let mut e = 0i64;
            for i in 0..d.len() {
                for j in i + 1..d.len() {
                    e += d[i] * d[j];
                }
            }
            let mut coef = c.conj().times(&self.zeta_pow(-e));
            let mut nk = Vec::with_capacity(key.len());
            for m in key {
                let (s, sc) = self.star_mono(*m);
                coef = coef.times(&sc);
                nk.push(s);
            }
            out.add_term(nk, coef);
        }
        Braided { order: x.order, terms: out }
    }

    fn delta_gen(&self, g: Gen) -> Braided<F::C> {
        let e = |m: Mono| Element::<F::C>::mono(m);
        let (a, as_, gm, gs) = (e(Mono::ALPHA), e(Mono::ALPHA_STAR), e(Mono::GAMMA), e(Mono::GAMMA_STAR));
        let mq = self.q().negated();
        let pair = |x: &Element<F::C>, y: &Element<F::C>| Braided::tensor(&[x, y]);
        let r = match g {
            Gen::A => pair(&a, &a).add(&pair(&gs, &gm).scale(&mq)),
            Gen::As => pair(&as_, &as_).add(&pair(&gm, &gs).scale(&mq)),
            Gen::G => pair(&gm, &a).add(&pair(&as_, &gm)),
            Gen::Gs => pair(&gs, &as_).add(&pair(&a, &gs)),
        };
        r.expect("order 2")
    }

    fn delta_gen_pow(&self, g: Gen, e: u32) -> Braided<F::C> {
        if e == 0 {
            return Braided::basis(vec![Mono::ONE, Mono::ONE]);
        }
        if let Some(v) = self.delta_pow.lock().unwrap().get(&(g, e)) {
            return v.clone();
        }
        let prev = self.delta_gen_pow(g, e - 1);
        let v = self.btp_mul(&prev, &self.delta_gen(g)).expect("order 2");
        self.delta_pow.lock().unwrap().insert((g, e), v.clone());
        v
    }

    pub fn delta_mono(&self, a: Mono) -> Braided<F::C> {
        let ga = if a.n >= 0 { Gen::A } else { Gen::As };
        let x = self.delta_gen_pow(ga, a.n.unsigned_abs());
        let y = self.delta_gen_pow(Gen::G, a.m);
        let z = self.delta_gen_pow(Gen::Gs, a.k);
        let xy = self.btp_mul(&x, &y).expect("order 2");
        self.btp_mul(&xy, &z).expect("order 2")
    }

    /// Comultiplication into the braided square.
    pub fn delta(&self, x: &Element<F::C>) -> Braided<F::C> {
        let mut out = Lin::zero();
        for (m, c) in x {
            out.add_scaled(&self.delta_mono(*m).terms, c);
        }
        Braided { order: 2, terms: out }
    }

    /// Braided flip `a (x) b -> zeta^{-deg a deg b} b (x) a`; the inverse uses `zeta^{+}`.
    pub fn flip(&self, x: &Braided<F::C>, inverse: bool) -> Result<Braided<F::C>> {
        x.need_order(2)?;
        let s = if inverse { 1 } else { -1 };
        let mut out = Lin::zero();
        for (k, c) in x.terms.iter() {
            let e = s * k[0].deg() * k[1].deg();
            out.add_term(vec![k[1], k[0]], c.times(&self.zeta_pow(e)));
        }
        Ok(Braided { order: 2, terms: out })
    }

    pub fn apply_map(&self, f: LegMap, x: &Element<F::C>) -> Result<Element<F::C>> {
        Ok(match f {
            LegMap::S => self.antipode(x),
            LegMap::R => self.unitary_antipode(x),
            LegMap::Theta => self.residual(x, false),
            LegMap::ThetaInv => self.residual(x, true),
            LegMap::Tau(t) => self.tau(x, t)?,
            LegMap::Sigma(t) => self.sigma_h(x, t)?,
        })
    }

    /// Applies `f` on leg `leg` (0-based).
    pub fn map_leg(&self, x: &Braided<F::C>, leg: usize, f: LegMap) -> Result<Braided<F::C>> {
        if leg >= x.order {
            return Err(Error::LegOutOfRange { leg, order: x.order });
        }
        let mut out = Lin::zero();
        for (k, c) in x.terms.iter() {
            let img = self.apply_map(f, &Element::mono(k[leg]))?;
            for (m, d) in &img {
                let mut key = k.clone();
                key[leg] = *m;
                out.add_term(key, c.times(d));
            }
        }
        Ok(Braided { order: x.order, terms: out })
    }

    /// Applies one map per leg.
    pub fn map_legs(&self, x: &Braided<F::C>, fs: &[LegMap]) -> Result<Braided<F::C>> {
        if fs.len() != x.order {
            return Err(Error::OrderMismatch(fs.len(), x.order));
        }
        let mut y = x.clone();
        for (i, f) in fs.iter().enumerate() {
            y = self.map_leg(&y, i, *f)?;
        }
        Ok(y)
    }

    /// Contracts leg `leg` with a functional, lowering the order by one.
    pub fn contract_leg(&self, x: &Braided<F::C>, leg: usize, f: Functional) -> Result<Braided<F::C>> {
        if leg >= x.order {
            return Err(Error::LegOutOfRange { leg, order: x.order });
        }
        let mut out = Lin::zero();
        for (k, c) in x.terms.iter() {
            let v = match f {
                Functional::Counit => self.counit_mono(k[leg]),
                Functional::Haar => self.haar_mono(k[leg]),
            };
            if v.is_zero() {
                continue;
            }
            let mut key = k.clone();
            key.remove(leg);
            out.add_term(key, c.times(&v));
        }
        Ok(Braided { order: x.order - 1, terms: out })
    }

    /// Slice of an order-2 element: `(f (x) id)` for `leg = 0`, `(id (x) f)` for `leg = 1`.
    pub fn slice(&self, x: &Braided<F::C>, leg: usize, f: Functional) -> Result<Element<F::C>> {
        x.need_order(2)?;
        self.contract_leg(x, leg, f)?.to_element()
    }

    /// `a (x) b -> a b`.
    pub fn mu(&self, x: &Braided<F::C>) -> Result<Element<F::C>> {
        x.need_order(2)?;
        let mut out = Element::zero();
        for (k, c) in x.terms.iter() {
            out.add_scaled(&self.mono_mul(k[0], k[1]), c);
        }
        Ok(out)
    }

    /// Applies the comultiplication to leg `leg`, raising the order by one.
    pub fn delta_leg(&self, x: &Braided<F::C>, leg: usize) -> Result<Braided<F::C>> {
        if leg >= x.order {
            return Err(Error::LegOutOfRange { leg, order: x.order });
        }
        let mut out = Lin::zero();
        for (k, c) in x.terms.iter() {
            let d = self.delta_mono(k[leg]);
            for (dk, dc) in d.terms.iter() {
                let mut key = Vec::with_capacity(k.len() + 1);
                key.extend_from_slice(&k[..leg]);
                key.extend_from_slice(dk);
                key.extend_from_slice(&k[leg + 1..]);
                out.add_term(key, c.times(dc));
            }
        }
        Ok(Braided { order: x.order + 1, terms: out })
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

    fn key(ms: &[Mono]) -> Braided<Scalar> {
        Braided::basis(ms.to_vec())
    }

    const O: Mono = Mono::ONE;
    const A: Mono = Mono::ALPHA;
    const AS: Mono = Mono::ALPHA_STAR;
    const G: Mono = Mono::GAMMA;
    const GS: Mono = Mono::GAMMA_STAR;

    #[test]
    fn twisted_product_examples() {
        let a = alg();
        let z = Scalar::zeta();
        assert_eq!(a.btp_mul(&key(&[O, G]), &key(&[G, O])).unwrap(), key(&[G, G]).scale(&z.inv().unwrap()));
        assert_eq!(a.btp_mul(&key(&[A, O]), &key(&[O, A])).unwrap(), key(&[A, A]));
        assert_eq!(a.btp_mul(&key(&[O, GS]), &key(&[G, O])).unwrap(), key(&[G, GS]).scale(&z));
        assert!(a.btp_mul(&key(&[O, G]), &key(&[O])).is_err());
    }

    #[test]
    fn underline_star_examples() {
        let a = alg();
        assert_eq!(a.btp_star(&key(&[G, GS])), key(&[GS, G]).scale(&Scalar::zeta()));
        assert_eq!(a.btp_star(&key(&[A, A])), key(&[AS, AS]));
        let x = key(&[G, G]);
        assert_eq!(a.btp_star(&a.btp_star(&x)), x);
    }

    #[test]
    fn delta_examples() {
        let a = alg();
        let q = Scalar::q(1);
        let want = key(&[A, A]).sub(&key(&[GS, G]).scale(&q)).unwrap();
        assert_eq!(a.delta(&Element::mono(A)), want);
        assert_eq!(a.delta(&Element::one()), key(&[O, O]));
        let want = key(&[GS, AS]).add(&key(&[A, GS])).unwrap();
        assert_eq!(a.delta(&Element::mono(GS)), want);
    }

    #[test]
    fn flip_examples() {
        let a = alg();
        let z = Scalar::zeta();
        assert_eq!(a.flip(&key(&[G, GS]), false).unwrap(), key(&[GS, G]).scale(&z));
        assert_eq!(a.flip(&key(&[A, A]), false).unwrap(), key(&[A, A]));
        assert_eq!(a.flip(&key(&[G, G]), true).unwrap(), key(&[G, G]).scale(&z));
    }

    #[test]
    fn leg_map_examples() {
        let a = alg();
        assert!(a.slice(&key(&[G, A]), 0, Functional::Haar).unwrap().is_zero());
        let dg = a.delta(&Element::mono(G));
        assert_eq!(a.slice(&dg, 1, Functional::Counit).unwrap(), Element::mono(G));
        let qb2 = Scalar::qb(1).mul_ref(&Scalar::qb(1));
        let got = a.map_legs(&key(&[G, G]), &[LegMap::S, LegMap::S]).unwrap();
        assert_eq!(got, key(&[G, G]).scale(&qb2));
    }

    #[test]
    fn mu_examples() {
        let a = alg();
        assert_eq!(a.mu(&key(&[A, AS])).unwrap(), a.mul(&Element::mono(A), &Element::mono(AS)));
        assert_eq!(a.mu(&key(&[O, O])).unwrap(), Element::one());
        let dg = a.delta(&Element::mono(G));
        assert!(a.mu(&a.map_leg(&dg, 0, LegMap::S).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn delta_leg_examples() {
        let a = alg();
        assert_eq!(a.delta_leg(&key(&[O, G]), 0).unwrap(), key(&[O, O, G]));
        let want = key(&[A, A, O]).sub(&key(&[GS, G, O]).scale(&Scalar::q(1))).unwrap();
        assert_eq!(a.delta_leg(&key(&[A, O]), 0).unwrap(), want);
        let dg = a.delta(&Element::mono(G));
        let l = a.delta_leg(&dg, 1).unwrap();
        let r = a.delta_leg(&dg, 0).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.len(), 4);
    }
}
