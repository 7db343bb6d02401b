//! Exact arithmetic: integer polynomials, rational functions in `t`, and
//! linear algebra over `Q(t)`.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use matrix::{
    canonicalize_vector, nullspace_field, rank_profile, rf_linear_solve, rf_nullspace, rf_rank,
    rf_solve_many, solve_field, Matrix, RFMatrix, RankProfile,
};
pub use poly::{IntPoly, Poly};
pub use ratfunc::{rf, RationalFunction};
