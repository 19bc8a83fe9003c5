//! Zero-dimensional solving: Gröbner bases, quotient algebras and rational
//! univariate representations.

pub mod groebner;
pub mod quotient;
pub mod reduce;
pub mod rur;

pub use groebner::{groebner_basis, GroebnerBasis};
pub use quotient::QuotientAlgebra;
pub use reduce::{reduce_to_dimension_zero, Origin, ReduceError, ZeroDimSystem};
pub use rur::{residual_vanishes, ParamEvaluator, rur_from_basis, rur_from_system, Rur, RurError};
