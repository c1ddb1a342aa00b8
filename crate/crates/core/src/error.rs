use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("cannot compose: codomain {cod} of the first map does not match domain {dom} of the second")]
    CompositionMismatch { cod: String, dom: String },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("twist undefined at {0}")]
    MissingTwist(String),
    #[error("no duality data for this braiding")]
    DualityUnavailable,
    #[error("not an algebra morphism: {0}")]
    NotAlgebraMorphism(String),
    #[error("invalid modular pair: {0}")]
    InvalidModularPair(String),
    #[error("malformed word: {0}")]
    Word(String),
    #[error("level {level} exceeds truncation {max}")]
    Truncation { level: usize, max: usize },
    #[error("out of range: {0}")]
    Range(String),
    #[error("module is not cyclic: {0}")]
    NotCyclic(String),
    #[error("chain maps do not commute: {0}")]
    NotAMorphism(String),
    #[error("scalar: {0}")]
    Scalar(String),
    #[error("matrix is singular")]
    Singular,
    #[error("validation failed: {}", .0.first_failure().unwrap_or_default())]
    Validation(Box<Report>),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
}

pub type Result<T> = std::result::Result<T, Error>;
