//! Coefficient rings and the parameter context `(r, v, sigma)`.
//!
//! Every algebra in this crate is generic over a [`Field`], so the same
//! code runs over exact [`Scalar`]s and over `Complex64` at a concrete `q`.

use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::{principal_rv, Rat, Scalar};

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rat(c: &Rat) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn recip(&self) -> Result<Self>;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_int(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn from_rat(c: &Rat) -> Self {
        Scalar::from_rat(c.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn recip(&self) -> Result<Self> {
        self.inv()
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_rat(c: &Rat) -> Self {
        Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self> {
        if *self == Complex64::new(0.0, 0.0) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv())
        }
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// Time parameter of the one-parameter automorphism groups.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Time {
    /// Imaginary time `i s` with `s = twice_s / 2`.
    Imag { twice_s: i64 },
    /// Real time; numeric mode only.
    Real(f64),
}

impl Time {
    pub fn imag_half(twice_s: i64) -> Self {
        Time::Imag { twice_s }
    }

    pub fn neg(self) -> Self {
        match self {
            Time::Imag { twice_s } => Time::Imag { twice_s: -twice_s },
            Time::Real(t) => Time::Real(-t),
        }
    }
}

/// Values of `r`, `v` and the sign `sigma` with `q = sigma r v`.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type C: Coeff;

    fn sigma(&self) -> i8;
    fn r_pow(&self, a: i64) -> Self::C;
    fn v_pow(&self, b: i64) -> Self::C;
    /// `c * r^a * v^b`.
    fn rv(&self, c: i64, a: i64, b: i64) -> Self::C {
        Self::C::from_int(c).times(&self.r_pow(a)).times(&self.v_pow(b))
    }
    /// `|q|^{2 i t j}`.
    fn abs_q_it(&self, t: Time, j: i64) -> Result<Self::C>;

    fn zeta_pow(&self, k: i64) -> Self::C {
        self.v_pow(2 * k)
    }
    /// `q^a conj(q)^b`.
    fn q_qb(&self, a: i64, b: i64) -> Self::C {
        let s = if self.sigma() < 0 && (a + b).rem_euclid(2) == 1 { -1 } else { 1 };
        self.rv(s, a + b, a - b)
    }
    fn q(&self) -> Self::C {
        self.q_qb(1, 0)
    }
    fn qb(&self) -> Self::C {
        self.q_qb(0, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactField {
    sigma: i8,
}

impl ExactField {
    pub fn new(sigma: i8) -> Result<Self> {
        if sigma != 1 && sigma != -1 {
            return Err(Error::InvalidQ(format!("sigma must be +1 or -1, got {sigma}")));
        }
        Ok(ExactField { sigma })
    }
}

impl Field for ExactField {
    type C = Scalar;

    fn sigma(&self) -> i8 {
        self.sigma
    }
    fn r_pow(&self, a: i64) -> Scalar {
        Scalar::r_pow(a as i32)
    }
    fn v_pow(&self, b: i64) -> Scalar {
        Scalar::v_pow(b as i32)
    }
    fn rv(&self, c: i64, a: i64, b: i64) -> Scalar {
        Scalar::monomial(Rat::from_integer(c.into()), a as i32, b as i32)
    }
    fn abs_q_it(&self, t: Time, j: i64) -> Result<Scalar> {
        match t {
            Time::Imag { twice_s } => Ok(Scalar::r_pow((-twice_s * j) as i32)),
            Time::Real(_) => Err(Error::RealTimeInExactMode),
        }
    }
}

/// Complex specialization at a concrete `q0` with `0 < |q0| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericField {
    q0: Complex64,
    r: f64,
    v: Complex64,
    sigma: i8,
}

impl NumericField {
    /// `v` is the principal square root of `q0 / conj(q0)` and `sigma` is
    /// read off from `q0 = sigma r v`.
    pub fn new(q0: Complex64) -> Result<Self> {
        let (r, v) = principal_rv(q0)?;
        let s = (q0 / (v * r)).re;
        let sigma = if s >= 0.0 { 1 } else { -1 };
        Ok(NumericField { q0, r, v, sigma })
    }

    pub fn q0(&self) -> Complex64 {
        self.q0
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn v(&self) -> Complex64 {
        self.v
    }
}

impl Field for NumericField {
    type C = Complex64;

    fn sigma(&self) -> i8 {
        self.sigma
    }
    fn r_pow(&self, a: i64) -> Complex64 {
        Complex64::new(self.r.powi(a as i32), 0.0)
    }
    fn v_pow(&self, b: i64) -> Complex64 {
        self.v.powi(b as i32)
    }
    fn abs_q_it(&self, t: Time, j: i64) -> Result<Complex64> {
        Ok(match t {
            Time::Imag { twice_s } => Complex64::new(self.r.powi((-twice_s * j) as i32), 0.0),
            Time::Real(t) => Complex64::from_polar(1.0, 2.0 * t * j as f64 * self.r.ln()),
        })
    }
}
