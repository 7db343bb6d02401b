//! Cox coordinates, the class-group grading, and the symmetric pencil.
//!
//! The fan itself is never built: everything downstream depends only on the
//! rays (all nonzero lattice points of the polytope) and the grading.

pub mod family;
pub mod graded;
pub mod grading;

pub use family::{
    anticanonical_exponent, build_family, check_invariance, rank_bound, rank_bound_with, Family,
    FamilySpec, GroupChoice, InvarianceReport, Parameter, SYMPLECTIC_S4_RANK,
};
pub use graded::{graded_from_json, GradedPoly, GradedPolynomial};
pub use grading::{grlex, CoxGrading, Degree, Exponent};
