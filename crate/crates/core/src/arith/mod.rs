//! Exact arithmetic: rationals, polynomials, matrices and intervals.

pub mod interval;
pub mod matrix;
pub mod multipoly;
pub mod polymatrix;
pub mod rational;
pub mod scalar;
pub mod unipoly;

pub use interval::RatInterval;
pub use matrix::Matrix;
pub use multipoly::{Monomial, MonomialOrder, MultiPoly};
pub use polymatrix::{det_poly_matrix, PolyMatrix};
pub use scalar::{Field, Scalar, Sign};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of size {0} is too large for exact expansion")]
    TooLarge(usize),
}
