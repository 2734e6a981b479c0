//! Evaluation of parsed expressions to elements of the algebra, of its
//! braided tensor powers, or of the bosonization.

use suq2::boson::{BElement, BMono, BPair, TorusPoly};
use suq2::braided::Braided;
use suq2::lin::Lin;
use suq2::{Coeff, Element, Field, Mono, Suq2};

use crate::render::{render_sum, Literal};
use crate::syntax::{column, parse, Atom, Expr, Span, SyntaxError};

/// Which algebra an expression lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    /// Pol(SU_q(2)) and its braided tensor powers; `z` is rejected.
    Pol,
    /// The bosonization, generated by `a`, `g` and the unitary `z`.
    Boson,
}

/// A combination of tensor words of a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct Value<C: Coeff> {
    pub order: usize,
    pub terms: Lin<Vec<BMono>, C>,
}

impl<C: Coeff> Value<C> {
    pub fn scalar(c: C) -> Self {
        Value { order: 1, terms: Lin::term(vec![BMono::ONE], c) }
    }

    fn unit(order: usize) -> Self {
        Value { order, terms: Lin::basis(vec![BMono::ONE; order]) }
    }

    fn mono(b: BMono) -> Self {
        Value { order: 1, terms: Lin::basis(vec![b]) }
    }

    /// The coefficient, when the value is a multiple of `1`.
    pub fn as_scalar(&self) -> Option<C> {
        if self.order != 1 || self.terms.keys().any(|k| k[0] != BMono::ONE) {
            return None;
        }
        Some(self.terms.coeff(&vec![BMono::ONE]))
    }

    pub fn has_z(&self) -> bool {
        self.terms.keys().any(|k| k.iter().any(|b| b.l != 0))
    }

    pub fn from_element(x: &Element<C>) -> Self {
        Value { order: 1, terms: x.map_linear(|m| Lin::basis(vec![BMono::from_mono(*m, 0)])) }
    }

    pub fn from_braided(x: &Braided<C>) -> Self {
        let terms = x.terms().map_linear(|k| Lin::basis(k.iter().map(|m| BMono::from_mono(*m, 0)).collect()));
        Value { order: x.order(), terms }
    }

    pub fn from_belement(x: &BElement<C>) -> Self {
        Value { order: 1, terms: x.map_linear(|b| Lin::basis(vec![*b])) }
    }

    pub fn from_bpair(x: &BPair<C>) -> Self {
        Value { order: 2, terms: x.map_linear(|(a, b)| Lin::basis(vec![*a, *b])) }
    }

    /// Elements of a single leg without `z`.
    pub fn to_element(&self) -> Option<Element<C>> {
        (self.order == 1 && !self.has_z()).then(|| self.terms.map_linear(|k| Lin::basis(k[0].a_part())))
    }

    pub fn to_braided(&self) -> Option<Braided<C>> {
        if self.has_z() {
            return None;
        }
        let lin = self.terms.map_linear(|k| Lin::basis(k.iter().map(BMono::a_part).collect::<Vec<Mono>>()));
        Some(Braided::from_lin(self.order, lin))
    }

    pub fn to_belement(&self) -> Option<BElement<C>> {
        (self.order == 1).then(|| self.terms.map_linear(|k| Lin::basis(k[0])))
    }

    pub fn to_bpair(&self) -> Option<BPair<C>> {
        (self.order == 2).then(|| self.terms.map_linear(|k| Lin::basis((k[0], k[1]))))
    }

    fn tensor(&self, o: &Self) -> Self {
        let mut terms = Lin::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                terms.add_term(key, c1.times(c2));
            }
        }
        Value { order: self.order + o.order, terms }
    }

    fn scale(&self, c: &C) -> Self {
        Value { order: self.order, terms: self.terms.scale(c) }
    }
}

impl<C: Literal> Value<C> {
    pub fn render(&self, sigma: i8) -> String {
        render_sum(self.terms.iter().map(|(k, c)| (k.iter().map(|b| b.to_string()).collect(), c.clone())), sigma)
    }
}

pub fn render_element<C: Literal>(x: &Element<C>, sigma: i8) -> String {
    Value::from_element(x).render(sigma)
}

pub fn render_braided<C: Literal>(x: &Braided<C>, sigma: i8) -> String {
    Value::from_braided(x).render(sigma)
}

pub fn render_belement<C: Literal>(x: &BElement<C>, sigma: i8) -> String {
    Value::from_belement(x).render(sigma)
}

pub fn render_bpair<C: Literal>(x: &BPair<C>, sigma: i8) -> String {
    Value::from_bpair(x).render(sigma)
}

/// A Laurent polynomial in the torus coordinate, written in `z`.
pub fn render_torus<C: Literal>(x: &TorusPoly<C>, sigma: i8) -> String {
    render_sum(x.iter().map(|(l, c)| (vec![BMono::z(*l).to_string()], c.clone())), sigma)
}

/// Evaluates expressions in one algebra over one coefficient field.
pub struct Evaluator<'a, F: Field> {
    pub alg: &'a Suq2<F>,
    pub ctx: Context,
}

type Eval<C> = Result<Value<C>, SyntaxError>;

impl<'a, F: Field> Evaluator<'a, F>
where
    F::C: Literal,
{
    pub fn new(alg: &'a Suq2<F>, ctx: Context) -> Self {
        Evaluator { alg, ctx }
    }

    /// Parses and evaluates `text`.
    pub fn eval_str(&self, text: &str) -> Eval<F::C> {
        let e = parse(text)?;
        self.eval(text, &e)
    }

    pub fn eval(&self, text: &str, e: &Expr) -> Eval<F::C> {
        let err = |s: Span, m: String| SyntaxError { column: column(text, s.start), message: m };
        match e {
            Expr::Atom(a, s) => self.atom(*a).map_err(|m| err(*s, m)),
            Expr::Number(n, s) => F::C::decimal(n).map(Value::scalar).map_err(|x| err(*s, x.to_string())),
            Expr::Neg(x, _) => {
                let v = self.eval(text, x)?;
                Ok(Value { order: v.order, terms: v.terms.neg() })
            }
            Expr::Add(x, y, s) | Expr::Sub(x, y, s) => {
                let (a, b) = (self.eval(text, x)?, self.eval(text, y)?);
                let b = if matches!(e, Expr::Sub(..)) { Value { order: b.order, terms: b.terms.neg() } } else { b };
                if a.order != b.order && !a.terms.is_zero() && !b.terms.is_zero() {
                    return Err(err(*s, format!("cannot add tensors of orders {} and {}", a.order, b.order)));
                }
                let order = if a.terms.is_zero() { b.order } else { a.order };
                Ok(Value { order, terms: a.terms.add(&b.terms) })
            }
            Expr::Mul(x, y, s) => {
                let (a, b) = (self.eval(text, x)?, self.eval(text, y)?);
                self.mul(&a, &b).map_err(|m| err(*s, m))
            }
            Expr::Div(x, y, s) => {
                let (a, b) = (self.eval(text, x)?, self.eval(text, y)?);
                let c = b.as_scalar().ok_or_else(|| err(y.span(), "divisor must be a scalar".into()))?;
                let inv = c.recip().map_err(|_| err(*s, "division by zero".into()))?;
                Ok(a.scale(&inv))
            }
            Expr::Pow(x, k, s) => {
                let a = self.eval(text, x)?;
                self.pow(&a, *k).map_err(|m| err(*s, m))
            }
            Expr::Tensor(legs, _) => {
                let mut acc: Option<Value<F::C>> = None;
                for leg in legs {
                    let v = self.eval(text, leg)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => a.tensor(&v),
                    });
                }
                Ok(acc.expect("a tensor has at least two legs"))
            }
        }
    }

    fn atom(&self, a: Atom) -> Result<Value<F::C>, String> {
        let f = self.alg.field();
        let m = |m: Mono| Ok(Value::mono(BMono::from_mono(m, 0)));
        match a {
            Atom::A => m(Mono::ALPHA),
            Atom::AStar => m(Mono::ALPHA_STAR),
            Atom::G => m(Mono::GAMMA),
            Atom::GStar => m(Mono::GAMMA_STAR),
            Atom::Z | Atom::ZStar if self.ctx == Context::Pol => Err("z is only available in boson expressions".into()),
            Atom::Z => Ok(Value::mono(BMono::z(1))),
            Atom::ZStar => Ok(Value::mono(BMono::z(-1))),
            Atom::R => Ok(Value::scalar(f.r_pow(1))),
            Atom::V => Ok(Value::scalar(f.v_pow(1))),
            Atom::Q => Ok(Value::scalar(f.q())),
            Atom::Qb => Ok(Value::scalar(f.qb())),
            Atom::Zeta => Ok(Value::scalar(f.zeta_pow(1))),
            Atom::I => F::C::imaginary_unit()
                .map(Value::scalar)
                .ok_or_else(|| "i is only available in numeric mode".into()),
        }
    }

    fn mul(&self, a: &Value<F::C>, b: &Value<F::C>) -> Result<Value<F::C>, String> {
        if let Some(c) = a.as_scalar() {
            return Ok(b.scale(&c));
        }
        if let Some(c) = b.as_scalar() {
            return Ok(a.scale(&c));
        }
        if a.order != b.order {
            return Err(format!("cannot multiply tensors of orders {} and {}", a.order, b.order));
        }
        let alg = self.alg;
        match (self.ctx, a.order) {
            (Context::Pol, 1) => {
                let (x, y) = (a.to_element().expect("order 1"), b.to_element().expect("order 1"));
                Ok(Value::from_element(&alg.mul(&x, &y)))
            }
            (Context::Pol, _) => {
                let (x, y) = (a.to_braided().expect("no z"), b.to_braided().expect("no z"));
                alg.btp_mul(&x, &y).map(|p| Value::from_braided(&p)).map_err(|e| e.to_string())
            }
            (Context::Boson, 1) => {
                let (x, y) = (a.to_belement().expect("order 1"), b.to_belement().expect("order 1"));
                Ok(Value::from_belement(&alg.b_mul(&x, &y)))
            }
            (Context::Boson, 2) => {
                let (x, y) = (a.to_bpair().expect("order 2"), b.to_bpair().expect("order 2"));
                Ok(Value::from_bpair(&alg.pair_mul(&x, &y)))
            }
            (Context::Boson, n) => Err(format!("boson products are defined up to order 2, got order {n}")),
        }
    }

    fn pow(&self, a: &Value<F::C>, k: i64) -> Result<Value<F::C>, String> {
        let base = if k >= 0 { a.clone() } else { self.invert(a)? };
        let mut acc = Value::unit(a.order);
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    fn invert(&self, a: &Value<F::C>) -> Result<Value<F::C>, String> {
        if let Some(c) = a.as_scalar() {
            return c.recip().map(Value::scalar).map_err(|_| "division by zero".to_string());
        }
        let single = (a.order == 1 && a.terms.len() == 1).then(|| a.terms.iter().next()).flatten();
        match single {
            Some((k, c)) if k[0].a_part() == Mono::ONE => {
                let inv = c.recip().map_err(|_| "division by zero".to_string())?;
                Ok(Value::mono(BMono::z(-k[0].l)).scale(&inv))
            }
            _ => Err("only scalars and powers of z have inverses".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use suq2::{ExactField, Scalar};

    fn alg(sigma: i8) -> Suq2<ExactField> {
        Suq2::new(ExactField::new(sigma).unwrap())
    }

    #[test]
    fn relation_reduces_to_zero() {
        let a = alg(1);
        let v = Evaluator::new(&a, Context::Pol).eval_str("a g - qb g a").unwrap();
        assert!(v.terms.is_zero());
        assert_eq!(v.render(1), "0");
    }

    #[test]
    fn coproduct_of_alpha() {
        let a = alg(1);
        let ev = Evaluator::new(&a, Context::Pol);
        let v = ev.eval_str("(a (x) a) - q (g* (x) g)").unwrap();
        let d = a.delta(&Element::mono(Mono::ALPHA));
        assert_eq!(v.to_braided().unwrap(), d);
    }

    #[test]
    fn monomial_word() {
        let a = alg(-1);
        let v = Evaluator::new(&a, Context::Pol).eval_str("g^2 g*").unwrap();
        assert_eq!(v.to_element().unwrap(), Element::mono(Mono::new(0, 2, 1)));
        assert_eq!(v.render(-1), "g^2 g*");
    }

    #[test]
    fn antipode_of_gamma_renders_with_qb() {
        for sigma in [1, -1] {
            let a = alg(sigma);
            let s = a.antipode(&Element::mono(Mono::GAMMA));
            assert_eq!(render_element(&s, sigma), "-qb g");
        }
    }

    #[test]
    fn z_needs_boson_context() {
        let a = alg(1);
        let e = Evaluator::new(&a, Context::Pol).eval_str("a + z").unwrap_err();
        assert_eq!(e.column, 5);
        let v = Evaluator::new(&a, Context::Boson).eval_str("z^-2 z^3 - z* z").unwrap();
        assert_eq!(v.render(1), "-1 + z");
    }

    #[test]
    fn structural_errors() {
        let a = alg(1);
        let ev = Evaluator::new(&a, Context::Pol);
        assert_eq!(ev.eval_str("a + a (x) a").unwrap_err().column, 1);
        assert_eq!(ev.eval_str("a / g").unwrap_err().column, 5);
        assert_eq!(ev.eval_str("a / (q - q)").unwrap_err().column, 1);
        assert_eq!(ev.eval_str("a^-1").unwrap_err().column, 1);
        assert_eq!(ev.eval_str("2 i").unwrap_err().column, 3);
    }

    #[test]
    fn scalars_and_inverses() {
        let a = alg(1);
        let ev = Evaluator::new(&a, Context::Pol);
        let v = ev.eval_str("q^-1 q qb / 2").unwrap();
        assert_eq!(v.as_scalar().unwrap(), Scalar::qb(1).times(&Scalar::decimal("0.5").unwrap()));
        assert_eq!(v.render(1), "1/2 qb");
    }
}
