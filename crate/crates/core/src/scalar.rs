//! Exact coefficient field: rational functions in `r` and `v` over the
//! rationals, where `r` stands for `|q|` and `v` for the unit square root
//! of `zeta = q / conj(q)`.
//!
//! A [`Scalar`] is stored as `num / den` with both parts Laurent
//! polynomials. Canonical form: `den` is an honest polynomial with no
//! monomial factor, its leading term (largest `v` exponent, then largest
//! `r` exponent) has coefficient one, and `gcd(num, den) = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Laurent polynomial in `r`, `v`; keys are `(r_exp, v_exp)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LPoly {
    terms: BTreeMap<(i32, i32), Rat>,
}

impl LPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, r: i32, v: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((r, v), c);
        }
        LPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rat)> {
        self.terms.iter()
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, i32), Rat)>>(it: I) -> Self {
        let mut p = LPoly::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, key: (i32, i32), c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> LPoly {
        LPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &LPoly) -> LPoly {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut out = LPoly::zero();
        for ((ra, va), ca) in &self.terms {
            for ((rb, vb), cb) in &o.terms {
                out.add_term((ra + rb, va + vb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    pub fn shift(&self, dr: i32, dv: i32) -> LPoly {
        if dr == 0 && dv == 0 {
            return self.clone();
        }
        LPoly {
            terms: self
                .terms
                .iter()
                .map(|((r, v), c)| ((r + dr, v + dv), c.clone()))
                .collect(),
        }
    }

    /// Sends `v` to `v^{-1}`.
    pub fn conj(&self) -> LPoly {
        LPoly {
            terms: self.terms.iter().map(|((r, v), c)| ((*r, -v), c.clone())).collect(),
        }
    }

    /// Splits off the largest monomial factor: `p = strip(p).0 * r^a v^b`.
    fn strip(&self) -> (LPoly, (i32, i32)) {
        let (a, b) = self.min_exps();
        (self.shift(-a, -b), (a, b))
    }

    fn min_exps(&self) -> (i32, i32) {
        let r = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let v = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (r, v)
    }

    fn leading(&self) -> Option<(&(i32, i32), &Rat)> {
        self.terms.iter().max_by_key(|((r, v), _)| (*v, *r))
    }

    pub fn eval(&self, r: f64, v: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((re, ve), c) in &self.terms {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += v.powi(*ve) * (cf * r.powi(*re));
        }
        acc
    }

    pub fn substitute_r(&self, r: &Rat) -> LPoly {
        let mut out = LPoly::zero();
        for ((re, ve), c) in &self.terms {
            out.add_term((0, *ve), c * rat_pow(r, *re));
        }
        out
    }

    /// Single term `c r^a v^b`, if the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(&Rat, i32, i32)> {
        if self.terms.len() == 1 {
            let ((r, v), c) = self.terms.iter().next().unwrap();
            Some((c, *r, *v))
        } else {
            None
        }
    }

    fn to_dense(&self) -> Bi {
        let vmax = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut out: Bi = vec![Vec::new(); vmax as usize + 1];
        for ((r, v), c) in &self.terms {
            debug_assert!(*r >= 0 && *v >= 0);
            let row = &mut out[*v as usize];
            if row.len() <= *r as usize {
                row.resize(*r as usize + 1, Rat::zero());
            }
            row[*r as usize] = c.clone();
        }
        bi_trim(&mut out);
        out
    }

    fn from_dense(b: &Bi) -> LPoly {
        let mut p = LPoly::zero();
        for (v, row) in b.iter().enumerate() {
            for (r, c) in row.iter().enumerate() {
                p.add_term((r as i32, v as i32), c.clone());
            }
        }
        p
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((r, v), c) in self.terms.iter() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            let unit = *r == 0 && *v == 0;
            if !a.is_one() || unit {
                parts.push(a.to_string());
            }
            push_pow(&mut parts, "r", *r);
            push_pow(&mut parts, "v", *v);
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

fn push_pow(parts: &mut Vec<String>, name: &str, e: i32) {
    match e {
        0 => {}
        1 => parts.push(name.to_string()),
        _ => parts.push(format!("{name}^{e}")),
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

pub fn rat_pow(x: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

// Dense univariate polynomials over Q (index = exponent of r) and dense
// bivariate polynomials as polynomials in v with such coefficients.
type UPoly = Vec<Rat>;
type Bi = Vec<UPoly>;

fn u_trim(p: &mut UPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn u_is_zero(p: &UPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}


fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(&mut out);
    out
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    u_trim(&mut out);
    out
}

fn u_scale(a: &UPoly, c: &Rat) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| x * c).collect();
    u_trim(&mut out);
    out
}

fn u_divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let mut rem = a.clone();
    u_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lb = b.last().expect("nonzero divisor").clone();
    let mut quo = vec![Rat::zero(); rem.len() - b.len() + 1];
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lb;
        for (i, y) in b.iter().enumerate() {
            rem[i + shift] -= &c * y;
        }
        quo[shift] = c;
        rem.pop();
        u_trim(&mut rem);
    }
    u_trim(&mut quo);
    (quo, rem)
}

fn u_monic(a: &UPoly) -> UPoly {
    match a.last() {
        Some(l) => u_scale(a, &l.recip()),
        None => Vec::new(),
    }
}

/// Scales `p` to integer coefficients with no common integer factor and a
/// positive leading coefficient.
fn u_int_primitive(p: &UPoly) -> UPoly {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in p.iter().filter(|c| !c.is_zero()) {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return Vec::new();
    }
    let mut f = Rat::new(den.clone(), BigInt::one()) / Rat::from_integer(num);
    if p.last().map_or(false, |l| l.is_negative()) {
        f = -f;
    }
    u_scale(p, &f)
}

/// Pseudo-remainder `lc(b)^k a mod b`, exact over the integers.
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut rem = a.clone();
    u_trim(&mut rem);
    let lb = b.last().expect("nonzero divisor").clone();
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let la = rem.last().unwrap().clone();
        for x in rem.iter_mut() {
            *x *= &lb;
        }
        for (i, y) in b.iter().enumerate() {
            rem[i + shift] -= &la * y;
        }
        rem.pop();
        u_trim(&mut rem);
    }
    rem
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let mut x = u_int_primitive(a);
    let mut y = u_int_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = u_prem(&x, &y);
        x = y;
        y = u_int_primitive(&r);
    }
    u_monic(&x)
}

fn bi_trim(p: &mut Bi) {
    for row in p.iter_mut() {
        u_trim(row);
    }
    while p.last().map_or(false, |r| r.is_empty()) {
        p.pop();
    }
}

fn bi_content(p: &Bi) -> UPoly {
    let mut g: UPoly = Vec::new();
    for row in p {
        if !row.is_empty() {
            g = u_gcd(&g, row);
            if g.len() == 1 {
                break;
            }
        }
    }
    g
}

fn bi_div_u(p: &Bi, c: &UPoly) -> Bi {
    p.iter()
        .map(|row| {
            if row.is_empty() {
                Vec::new()
            } else {
                let (q, _) = u_divrem(row, c);
                q
            }
        })
        .collect()
}

/// Removes the content in Q[r], then scales to coprime integer coefficients.
fn bi_primitive(p: &Bi) -> Bi {
    let c = bi_content(p);
    let q = if c.is_empty() { p.clone() } else { bi_div_u(p, &c) };
    let flat: UPoly = q.iter().flat_map(|row| row.iter().cloned()).collect();
    let scaled = u_int_primitive(&flat);
    if scaled.is_empty() {
        return q;
    }
    let first = flat.iter().position(|c| !c.is_zero()).unwrap();
    let f = &scaled[first] / &flat[first];
    q.iter().map(|row| u_scale(row, &f)).collect()
}

/// Pseudo-remainder of `a` by `b` in Q[r][v].
fn bi_prem(a: &Bi, b: &Bi) -> Bi {
    let mut rem = a.clone();
    bi_trim(&mut rem);
    let lb = b.last().expect("nonzero divisor").clone();
    while !rem.is_empty() && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let la = rem.last().unwrap().clone();
        for row in rem.iter_mut() {
            *row = u_mul(row, &lb);
        }
        for (i, brow) in b.iter().enumerate() {
            let t = u_mul(&la, brow);
            rem[i + shift] = u_sub(&rem[i + shift], &t);
        }
        bi_trim(&mut rem);
    }
    rem
}

fn bi_gcd(a: &Bi, b: &Bi) -> Bi {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = u_gcd(&bi_content(a), &bi_content(b));
    let mut x = bi_primitive(a);
    let mut y = bi_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = bi_prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { bi_primitive(&r) };
    }
    let x = bi_primitive(&x);
    x.iter().map(|row| u_mul(row, &c)).collect::<Bi>()
}

/// Exact quotient `a / b` in Q[r][v]; `b` must divide `a`.
fn bi_exact_div(a: &Bi, b: &Bi) -> Bi {
    let mut rem = a.clone();
    bi_trim(&mut rem);
    if rem.is_empty() {
        return Vec::new();
    }
    let lb = b.last().expect("nonzero divisor");
    let mut quo: Bi = vec![Vec::new(); rem.len() + 1 - b.len()];
    while !rem.is_empty() {
        let shift = rem.len() - b.len();
        let (c, r) = u_divrem(rem.last().unwrap(), lb);
        debug_assert!(u_is_zero(&r), "inexact division");
        for (i, brow) in b.iter().enumerate() {
            let t = u_mul(&c, brow);
            rem[i + shift] = u_sub(&rem[i + shift], &t);
        }
        quo[shift] = c;
        bi_trim(&mut rem);
    }
    bi_trim(&mut quo);
    quo
}

/// Greatest common divisor of two polynomials (nonnegative exponents).
fn poly_gcd(a: &LPoly, b: &LPoly) -> LPoly {
    LPoly::from_dense(&bi_gcd(&a.to_dense(), &b.to_dense()))
}

fn poly_exact_div(a: &LPoly, b: &LPoly) -> LPoly {
    LPoly::from_dense(&bi_exact_div(&a.to_dense(), &b.to_dense()))
}

/// Exact element of Q(r, v).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: LPoly,
    den: LPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: LPoly::one(), den: LPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(c: Rat) -> Self {
        Scalar { num: LPoly::constant(c), den: LPoly::one() }
    }

    /// `c * r^a * v^b`.
    pub fn monomial(c: Rat, a: i32, b: i32) -> Self {
        Scalar { num: LPoly::monomial(c, a, b), den: LPoly::one() }
    }

    pub fn r() -> Self {
        Self::r_pow(1)
    }

    pub fn v() -> Self {
        Self::v_pow(1)
    }

    pub fn r_pow(a: i32) -> Self {
        Self::monomial(Rat::one(), a, 0)
    }

    pub fn v_pow(b: i32) -> Self {
        Self::monomial(Rat::one(), 0, b)
    }

    /// `q = sigma * r * v`.
    pub fn q(sigma: i8) -> Self {
        Self::monomial(Rat::from_integer(BigInt::from(sigma)), 1, 1)
    }

    /// `conj(q) = sigma * r * v^{-1}`.
    pub fn qb(sigma: i8) -> Self {
        Self::monomial(Rat::from_integer(BigInt::from(sigma)), 1, -1)
    }

    pub fn zeta() -> Self {
        Self::v_pow(2)
    }

    pub fn from_poly(p: LPoly) -> Self {
        Scalar { num: p, den: LPoly::one() }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_fraction(num: LPoly, den: LPoly) -> Result<Self> {
        Self::normalize(num, den)
    }

    pub fn numerator(&self) -> &LPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational constant, if the scalar is one.
    pub fn as_rational(&self) -> Option<Rat> {
        if !self.den.is_one() {
            return None;
        }
        if self.num.is_zero() {
            return Some(Rat::zero());
        }
        match self.num.as_monomial() {
            Some((c, 0, 0)) => Some(c.clone()),
            _ => None,
        }
    }

    fn normalize(num: LPoly, den: LPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let (ra, va) = den.min_exps();
        let den = den.shift(-ra, -va);
        let num = num.shift(-ra, -va);
        if let Some((c, _, _)) = den.as_monomial() {
            let inv = c.recip();
            return Ok(Scalar { num: num.scale(&inv), den: LPoly::one() });
        }
        let (rn, vn) = num.min_exps();
        let nump = num.shift(-rn, -vn);
        let g = poly_gcd(&nump, &den);
        let (nump, den) = if g.len() == 1 && g.min_exps() == (0, 0) {
            (nump, den)
        } else {
            (poly_exact_div(&nump, &g), poly_exact_div(&den, &g))
        };
        let num = nump.shift(rn, vn);
        if let Some((c, _, _)) = den.as_monomial() {
            let inv = c.recip();
            return Ok(Scalar { num: num.scale(&inv), den: LPoly::one() });
        }
        let lc = den.leading().expect("nonzero").1.recip();
        Ok(Scalar { num: num.scale(&lc), den: den.scale(&lc) })
    }

    /// Canonical form of `num / den` when the two are already coprime.
    fn finish(num: LPoly, den: LPoly) -> Scalar {
        let (ra, va) = den.min_exps();
        let den = den.shift(-ra, -va);
        let num = num.shift(-ra, -va);
        let lc = if let Some((c, _, _)) = den.as_monomial() {
            return Scalar { num: num.scale(&c.recip()), den: LPoly::one() };
        } else {
            den.leading().expect("nonzero").1.recip()
        };
        Scalar { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.add(&o.num), den: LPoly::one() };
        }
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        // a/b + c/d = (a d' + c b') / (b' d' g) with g = gcd(b, d), b = b' g, d = d' g;
        // only g can share factors with the new numerator.
        let g = poly_gcd(&self.den, &o.den);
        let b1 = poly_exact_div(&self.den, &g);
        let d1 = poly_exact_div(&o.den, &g);
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return Scalar::zero();
        }
        let (rn, vn) = num.min_exps();
        let nump = num.shift(-rn, -vn);
        let h = poly_gcd(&nump, &g);
        let nump = poly_exact_div(&nump, &h);
        let g1 = poly_exact_div(&g, &h);
        Self::finish(nump.shift(rn, vn), b1.mul(&d1).mul(&g1))
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: LPoly::one() };
        }
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        // (a/b)(c/d) with a, b and c, d coprime: cancel gcd(a, d) and gcd(c, b).
        let (a, (ra, va)) = self.num.strip();
        let (c, (rc, vc)) = o.num.strip();
        let g1 = poly_gcd(&a, &o.den);
        let g2 = poly_gcd(&c, &self.den);
        let num = poly_exact_div(&a, &g1).mul(&poly_exact_div(&c, &g2)).shift(ra + rc, va + vc);
        let den = poly_exact_div(&self.den, &g2).mul(&poly_exact_div(&o.den, &g1));
        Self::finish(num, den)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    /// Field automorphism fixing `r` and sending `v` to `v^{-1}`.
    pub fn conj(&self) -> Scalar {
        if self.den.is_one() {
            return Scalar { num: self.num.conj(), den: LPoly::one() };
        }
        Self::normalize(self.num.conj(), self.den.conj()).expect("nonzero denominator")
    }

    /// Specializes `r` and `v` to concrete values.
    pub fn eval(&self, r: f64, v: Complex64) -> Result<Complex64> {
        let d = self.den.eval(r, v);
        if d.norm() == 0.0 || !d.norm().is_finite() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(r, v) / d)
    }

    /// Evaluates at `r = |q0|`, `v` the principal square root of `q0 / conj(q0)`.
    pub fn eval_at(&self, q0: Complex64) -> Result<Complex64> {
        let (r, v) = principal_rv(q0)?;
        self.eval(r, v)
    }

    /// Substitutes a rational value for `r`.
    pub fn substitute_r(&self, r: &Rat) -> Result<Scalar> {
        Self::normalize(self.num.substitute_r(r), self.den.substitute_r(r))
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": poly_json(&self.num), "den": poly_json(&self.den) })
    }

    pub fn from_json(v: &Value) -> Result<Scalar> {
        let num = poly_from_json(v.get("num").ok_or_else(|| Error::Parse("missing num".into()))?)?;
        let den = match v.get("den") {
            Some(d) => poly_from_json(d)?,
            None => LPoly::one(),
        };
        Self::normalize(num, den)
    }
}

/// `(r, v)` for a concrete `q0`: `r = |q0|`, `v` the principal square root of `q0/conj(q0)`.
pub fn principal_rv(q0: Complex64) -> Result<(f64, Complex64)> {
    let r = q0.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidQ(format!("|q| = {r} is not in (0,1)")));
    }
    // Principal argument of zeta = exp(2 i arg q0), taken in (-pi, pi].
    let pi = std::f64::consts::PI;
    let mut a = 2.0 * q0.arg();
    if a <= -pi {
        a += 2.0 * pi;
    }
    if a > pi {
        a -= 2.0 * pi;
    }
    Ok((r, Complex64::from_polar(1.0, a / 2.0)))
}

fn rat_json(c: &Rat) -> Value {
    if c.is_integer() {
        if let Some(i) = c.to_integer().to_i64() {
            return json!(i);
        }
    }
    json!(c.to_string())
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rat::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}"))),
        Value::String(s) => parse_rat(s),
        _ => Err(Error::Parse(format!("bad coefficient {v}"))),
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn poly_json(p: &LPoly) -> Value {
    Value::Array(
        p.terms
            .iter()
            .map(|((r, v), c)| json!([rat_json(c), r, v]))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<LPoly> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected term list".into()))?;
    let mut p = LPoly::zero();
    for t in arr {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| Error::Parse("expected [coef, rexp, vexp]".into()))?;
        let c = rat_from_json(&t[0])?;
        let exp = |x: &Value| {
            x.as_i64()
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(|| Error::Parse("bad exponent".into()))
        };
        p.add_term((exp(&t[1])?, exp(&t[2])?), c);
    }
    Ok(p)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_ref(o)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.sub_ref(o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.add_ref(&o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.sub_ref(&o)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
