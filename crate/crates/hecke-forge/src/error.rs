//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inadmissible root system: type {ty} rank {rank}")]
    Inadmissible { ty: String, rank: usize },
    #[error("affine root evaluates to the zero functional")]
    ZeroFunctional,
    #[error("operator image is not a polynomial")]
    NonPolynomialImage,
    #[error("basis elimination left a nonzero residual: {0}")]
    InternalBasisError(String),
    #[error("degree probe disagrees with the coefficient bound: {0}")]
    DegreeUnbounded(String),
    #[error("chambers are not adjacent")]
    NotAdjacent,
    #[error("no generic perturbation found for the gallery endpoint")]
    PerturbationExhausted,
    #[error("leading term violation: {0}")]
    LeadingTermViolation(String),
    #[error("length bound {bound} exceeded (needed {needed})")]
    LengthBoundExceeded { bound: usize, needed: usize },
    #[error("source/target chambers do not match")]
    ChamberMismatch,
    #[error("parameter points do not share an integral coset")]
    CosetMismatch,
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
