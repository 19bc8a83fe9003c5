//! Real roots of integer polynomials and exact evaluation at the points of
//! a rational parametrization.

pub mod algebraic;
pub mod evaluate;
pub mod isolate;
pub mod sturm;

pub use algebraic::AlgebraicReal;
pub use evaluate::{eval_rur_box, real_points, sign_at_algebraic, EvalError, RurPoint};
pub use isolate::{isolate_real_roots, refine_interval};
pub use sturm::{count_all_roots, count_roots, sturm_sequence};
