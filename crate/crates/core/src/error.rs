use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("factorial gap {0} is not a nonnegative integer")]
    NonIntegralGap(String),
    #[error("non-integral exponent {0} in q-analog")]
    NonIntegralExponent(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("Weyl product {0} is not a positive integer")]
    NonIntegerResult(String),
    #[error("unknown root datum {0:?}")]
    UnknownDatum(String),
    #[error("adjoint action is not diagonal: {0}")]
    NotDiagonalizable(String),
    #[error("unrecognized Dynkin diagram: {0}")]
    UnrecognizedDiagram(String),
    #[error("triality relation violated: {0}")]
    TrialityRelation(String),
    #[error("representation axiom violated: {0}")]
    RepresentationAxiom(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
