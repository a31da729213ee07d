//! Exact arithmetic kernel: rational scalars, dense polynomials, and
//! rational functions with factored denominators.

mod poly;
mod ratfun;
mod scalar;

pub use poly::Poly;
pub use ratfun::{FactorSet, LinFactor, RatFun};
pub use scalar::Scalar;
