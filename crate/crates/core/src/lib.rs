//! Exact computation of Picard-Fuchs equations for one-parameter families of
//! K3 surfaces in toric 3-folds built from symmetric reflexive polytopes.
//!
//! The pipeline runs from lattice geometry ([`lattice`]) through the Cox ring
//! grading and the symmetric pencil ([`toric`]) to Griffiths-Dwork pole
//! reduction ([`gd`]) and the analysis of the resulting operator ([`ode`]).
//! All arithmetic is exact.

pub mod arith;
pub mod error;
pub mod gd;
pub mod lattice;
pub mod ode;
pub mod scalar;
pub mod toric;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational as Rational;

/// Arbitrary-precision rationals.
pub type BigRational = Rational;
/// Integer-coefficient polynomials in `t`.
pub type IntPoly = arith::Poly<BigInt>;
/// Rational-coefficient polynomials in `t`.
pub type QPoly = arith::Poly<BigRational>;
/// Word-sized prime field used for specialized rank computations.
pub type Fp = scalar::ModP<{ scalar::MERSENNE_61 }>;
pub use arith::{RFMatrix, RationalFunction};
pub use toric::GradedPolynomial;
