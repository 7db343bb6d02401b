use thiserror::Error;

/// Every failure the library reports. `kind()` gives the stable name used in
/// machine-readable output.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("origin is not strictly interior to the polytope")]
    NotInterior,
    #[error("polytope is not reflexive: {0}")]
    NotReflexive(String),
    #[error("polytope is not full-dimensional")]
    Degenerate,
    #[error("not invariant: {0}")]
    NotInvariant(String),
    #[error("automorphism does not permute the rays: {0}")]
    NotARaySymmetry(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no monomials can have this degree: {0}")]
    NoSuchDegree(String),
    #[error("polynomial is not in the ideal")]
    NotInIdeal,
    #[error("pole-order reduction stuck in degree {0}")]
    ReductionStuck(String),
    #[error("no differential relation up to order {0}")]
    OrderExceeded(usize),
    #[error("leading coefficient vanishes")]
    DegenerateLeading,
    #[error("operator is not a symmetric square")]
    NotASymmetricSquare,
    #[error("expected an operator of order {expected}, got {got}")]
    WrongOrder { expected: usize, got: usize },
    #[error("series truncation too short: {0}")]
    TruncationTooShort(String),
    #[error("expansion point {0} is singular")]
    SingularPoint(String),
    #[error("operator does not annihilate the period series: {0}")]
    OracleRejected(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::Shape(_) => "ShapeError",
            Error::NoSolution => "NoSolution",
            Error::Parse(_) => "ParseError",
            Error::NotInterior => "NotInterior",
            Error::NotReflexive(_) => "NotReflexive",
            Error::Degenerate => "Degenerate",
            Error::NotInvariant(_) => "NotInvariant",
            Error::NotARaySymmetry(_) => "NotARaySymmetry",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NoSuchDegree(_) => "NoSuchDegree",
            Error::NotInIdeal => "NotInIdeal",
            Error::ReductionStuck(_) => "ReductionStuck",
            Error::OrderExceeded(_) => "OrderExceeded",
            Error::DegenerateLeading => "DegenerateLeading",
            Error::NotASymmetricSquare => "NotASymmetricSquare",
            Error::WrongOrder { .. } => "WrongOrder",
            Error::TruncationTooShort(_) => "TruncationTooShort",
            Error::SingularPoint(_) => "SingularPoint",
            Error::OracleRejected(_) => "OracleRejected",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
