//! Exact symbolic engine for braided SU_q(2) at complex `q` with `0 < |q| < 1`.
//!
//! Layers, bottom up: the coefficient field ([`scalar`], [`coeff`]), the
//! algebra in normal form ([`polsuq2`]), braided tensor powers and the Hopf
//! maps ([`braided`]), the bosonization ([`boson`]), representations
//! ([`reps`]) and a numeric laboratory for the quantum torus ([`qtorus`]).
//! [`verify`] bundles the identity suites.

pub mod boson;
pub mod braided;
pub mod coeff;
pub mod error;
pub mod lin;
pub mod polsuq2;
pub mod qtorus;
pub mod reps;
pub mod scalar;
pub mod verify;

pub use coeff::{Coeff, ExactField, Field, NumericField, Time};
pub use error::{Error, Result};
pub use polsuq2::{Element, Gen, Mono, Suq2};
pub use scalar::Scalar;
