//! Expression language and command-line front end for the `suq2` engine.
//!
//! [`syntax`] turns text into an [`syntax::Expr`], [`value`] evaluates it
//! in the algebra, its braided tensor powers or the bosonization,
//! [`render`] writes results back as text that parses to the same value,
//! and [`app`] holds the `suq2` commands.

pub mod app;
pub mod io;
pub mod render;
pub mod syntax;
pub mod value;

pub use render::Literal;
pub use syntax::{parse, Expr, SyntaxError};
pub use value::{Context, Evaluator, Value};
