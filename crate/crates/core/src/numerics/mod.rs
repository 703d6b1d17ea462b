//! Coefficient field, polynomial arithmetic, and the exact moment engine.

pub mod gammaf;
pub mod linalg;
pub mod moments;
pub mod mpf;
pub mod params;
pub mod poly;
pub mod scalar;

pub use linalg::{nullspace, solve_square, SolveOutput};
pub use moments::{hankel_solve, moment, MomentTable, RowSpec};
pub use mpf::MpFloat;
pub use params::{Mode, Params, DEFAULT_FLOAT_DIGITS, MIN_FLOAT_DIGITS};
pub use poly::Poly;
pub use scalar::{parse_rational, Scalar};
