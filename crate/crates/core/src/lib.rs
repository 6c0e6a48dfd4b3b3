//! Exact algebra for Nambu brackets, star products and their Abelian
//! generalized deformations.

pub mod arith;
pub mod error;
pub mod factor;
pub mod nambu;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod star;
pub mod sun;
pub mod weyl;
pub mod zariski;

#[cfg(test)]
mod testutil;

pub use arith::Rational;
pub use error::{Error, Result};
pub use poly::{Monomial, NuObject, Poly, TSeries, VarSpace};
