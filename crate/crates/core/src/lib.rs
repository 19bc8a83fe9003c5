//! Exact feasibility for rational linear matrix inequalities.
//!
//! Given a symmetric pencil `A(x) = A0 + x1*A1 + ... + xn*An` with rational
//! entries, [`solve_lmi`] either reports that the spectrahedron
//! `{x : A(x) is positive semidefinite}` is empty, or returns a point on it
//! that attains the smallest possible rank. Points are encoded as a rational
//! univariate parametrization plus rational isolating boxes.

pub mod arith;
pub mod certify;
pub mod generate;
pub mod incidence;
pub mod pencil;
pub mod realroots;
pub mod report;
pub mod rng;
pub mod solve;
pub mod zerodim;

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;
pub type MultiPolyQ = arith::MultiPoly<Rational>;
pub type UniPolyZ = arith::UniPoly<Integer>;
pub type UniPolyQ = arith::UniPoly<Rational>;
pub type MatrixQ = arith::Matrix<Rational>;

pub use pencil::{parse_pencil, CharPolyCoeffs, LinearPencil, PencilError};
pub use solve::{solve_lmi, solve_rank_restricted, SolutionRecord, SolveError, SolveOptions, SolveOutcome};
