//! Text and JSON forms of coefficients and of combinations of monomials.
//!
//! Exact coefficients are written in `q`, `qb` and `zeta` where possible
//! and in `r`, `v` otherwise; every rendered string parses back to the
//! same value.

use num_complex::Complex64;
use num_traits::{One, Signed};
use serde_json::{json, Value};
use suq2::scalar::{parse_rat, LPoly, Rat};
use suq2::{Coeff, Error, Result, Scalar};

/// Coefficient types the command line can read and write.
pub trait Literal: Coeff + Send + Sync {
    /// Value of a decimal literal such as `3` or `0.25`.
    fn decimal(text: &str) -> Result<Self>;
    /// The imaginary unit, when the coefficient ring has one.
    fn imaginary_unit() -> Option<Self>;
    /// `Some(c)` when the value is `-c` with a simpler `c`.
    fn split_sign(&self, sigma: i8) -> Option<Self>;
    /// Whether the rendered form is a single factor that needs no parentheses.
    fn is_atomic(&self) -> bool;
    fn render(&self, sigma: i8) -> String;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    /// The value with a rational number put in for `r`.
    fn at_r(&self, r: &Rat) -> Result<Self>;
}

impl Literal for Scalar {
    fn decimal(text: &str) -> Result<Self> {
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        let digits = format!("{int}{frac}");
        let digits = if digits.is_empty() { "0".to_string() } else { digits };
        let den = format!("1{}", "0".repeat(frac.len()));
        Ok(Scalar::from_rat(parse_rat(&format!("{digits}/{den}"))?))
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn split_sign(&self, sigma: i8) -> Option<Self> {
        if !self.is_polynomial() || self.numerator().len() != 1 {
            return None;
        }
        let (c, a, b) = self.numerator().as_monomial()?;
        let flips = rv_factors(a, b, sigma).1;
        (c.is_negative() != flips).then(|| self.neg_ref())
    }

    fn is_atomic(&self) -> bool {
        self.is_polynomial() && self.numerator().len() <= 1
    }

    fn render(&self, sigma: i8) -> String {
        if self.is_polynomial() {
            return render_poly(self.numerator(), sigma);
        }
        let wrap = |p: &LPoly| {
            let s = render_poly(p, sigma);
            if p.len() > 1 || s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(self.numerator()), wrap(self.denominator()))
    }

    fn to_json(&self) -> Value {
        Scalar::to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        Scalar::from_json(v)
    }

    fn at_r(&self, r: &Rat) -> Result<Self> {
        self.substitute_r(r)
    }
}

impl Literal for Complex64 {
    fn decimal(text: &str) -> Result<Self> {
        text.parse::<f64>()
            .map(|x| Complex64::new(x, 0.0))
            .map_err(|_| Error::Parse(format!("bad number '{text}'")))
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex64::new(0.0, 1.0))
    }

    fn split_sign(&self, _sigma: i8) -> Option<Self> {
        (self.im == 0.0 && self.re < 0.0).then(|| Complex64::new(-self.re, 0.0))
    }

    fn is_atomic(&self) -> bool {
        self.im == 0.0
    }

    fn render(&self, _sigma: i8) -> String {
        let (re, im) = (self.re, self.im);
        if im == 0.0 {
            return fmt_f64(re);
        }
        let imag = format!("{}i", fmt_f64(im.abs()));
        match (re == 0.0, im < 0.0) {
            (true, false) => imag,
            (true, true) => format!("-{imag}"),
            (false, neg) => format!("{} {} {imag}", fmt_f64(re), if neg { "-" } else { "+" }),
        }
    }

    fn to_json(&self) -> Value {
        json!({ "re": self.re, "im": self.im })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let part = |k: &str| v.get(k).map_or(Some(0.0), Value::as_f64);
        match (part("re"), part("im")) {
            (Some(re), Some(im)) if v.is_object() => Ok(Complex64::new(re, im)),
            _ => Err(Error::Parse(format!("expected {{\"re\", \"im\"}}, got {v}"))),
        }
    }

    fn at_r(&self, _r: &Rat) -> Result<Self> {
        Ok(*self)
    }
}

fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

fn pow(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

/// Factors of `r^a v^b`, and the sign the choice of factors absorbs.
fn rv_factors(a: i32, b: i32, sigma: i8) -> (Vec<String>, bool) {
    let (a, b) = (a as i64, b as i64);
    if a == 0 && b % 2 == 0 {
        return (pow("zeta", b / 2).into_iter().collect(), false);
    }
    let (i, j) = ((a + b) / 2, (a - b) / 2);
    if (a + b) % 2 == 0 {
        // q^i qb^j = sigma^a r^a v^b
        let flips = sigma < 0 && a % 2 != 0;
        return ([pow("q", i), pow("qb", j)].into_iter().flatten().collect(), flips);
    }
    ([pow("r", a), pow("v", b)].into_iter().flatten().collect(), false)
}

fn render_poly(p: &LPoly, sigma: i8) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (&(a, b), c)) in p.terms().enumerate() {
        let (factors, flips) = rv_factors(a, b, sigma);
        let c: Rat = if flips { -c.clone() } else { c.clone() };
        let neg = c.is_negative();
        let mag = c.abs();
        let mut parts = Vec::new();
        if !mag.is_one() || factors.is_empty() {
            parts.push(mag.to_string());
        }
        parts.extend(factors);
        let body = parts.join(" ");
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}

/// Writes `sum_k c_k legs_k` with legs joined by `(x)`.
pub fn render_sum<C: Literal>(terms: impl IntoIterator<Item = (Vec<String>, C)>, sigma: i8) -> String {
    let mut out = String::new();
    for (i, (legs, c)) in terms.into_iter().enumerate() {
        let unit = legs.iter().all(|l| l == "1");
        let (neg, mag) = match c.split_sign(sigma) {
            Some(m) => (true, m),
            None => (false, c),
        };
        let coeff = if mag.is_atomic() { mag.render(sigma) } else { format!("({})", mag.render(sigma)) };
        let trivial = mag == C::one();
        let mut legs = legs;
        if unit && legs.len() == 1 {
            legs[0] = coeff;
        } else if !trivial {
            legs[0] = if legs[0] == "1" { coeff } else { format!("{coeff} {}", legs[0]) };
        }
        let body = legs.join(" (x) ");
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use suq2::scalar::rat;

    #[test]
    fn prefers_q_and_qb() {
        assert_eq!(Scalar::q(1).render(1), "q");
        assert_eq!(Scalar::qb(1).render(1), "qb");
        assert_eq!(Scalar::q(-1).render(-1), "q");
        assert_eq!(Scalar::qb(-1).neg_ref().render(-1), "-qb");
        assert_eq!(Scalar::r_pow(2).render(-1), "q qb");
        assert_eq!(Scalar::zeta().render(1), "zeta");
        assert_eq!(Scalar::v_pow(-4).render(1), "zeta^-2");
        assert_eq!(Scalar::r().render(1), "r");
        assert_eq!(Scalar::monomial(rat(3, 4), -1, -1).render(1), "3/4 q^-1");
        assert_eq!(Scalar::monomial(rat(3, 4), -1, 0).render(1), "3/4 r^-1");
    }

    #[test]
    fn fractions_are_parenthesised() {
        let one = Scalar::one();
        let s = one.div(&(one.clone() + Scalar::r_pow(2))).unwrap();
        assert_eq!(s.render(1), "1/(1 + q qb)");
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(Scalar::decimal("0.25").unwrap(), Scalar::from_rat(rat(1, 4)));
        assert_eq!(Scalar::decimal("12").unwrap(), Scalar::from_int(12));
        assert_eq!(Complex64::decimal("0.1").unwrap(), Complex64::new(0.1, 0.0));
    }

    #[test]
    fn complex_rendering() {
        assert_eq!(Complex64::new(0.3, -0.4).render(1), "0.3 - 0.4i");
        assert_eq!(Complex64::new(-0.5, 0.0).render(1), "-0.5");
        assert_eq!(Complex64::new(0.0, 2.0).render(1), "2i");
    }

    #[test]
    fn sums() {
        let t = vec![
            (vec!["a".to_string(), "a".to_string()], Scalar::one()),
            (vec!["g*".to_string(), "g".to_string()], Scalar::q(1).neg_ref()),
            (vec!["1".to_string(), "1".to_string()], Scalar::from_int(2)),
        ];
        assert_eq!(render_sum(t, 1), "a (x) a - q g* (x) g + 2 (x) 1");
        assert_eq!(render_sum(Vec::<(Vec<String>, Scalar)>::new(), 1), "0");
        let t = vec![(vec!["g".to_string()], Scalar::q(-1).neg_ref()), (vec!["a".to_string()], Scalar::q(-1))];
        assert_eq!(render_sum(t, -1), "-q g + q a");
    }
}
