//! Linear ODE algebra over `Q(t)`: symmetric squares, normal forms, local
//! solutions and the period-series oracle.

pub mod operator;
pub mod period;
pub mod series;
pub mod symsq;

pub use operator::{
    annihilates, annihilates_at, local_series_solutions, projective_normal_form,
    AnnihilationReport, DifferentialOperator,
};
pub use period::{constant_terms, principal_period_series, torus_polynomial};
pub use series::{LaurentSeries, TLaurentSeries};
pub use symsq::{symmetric_square, symmetric_square_root};
