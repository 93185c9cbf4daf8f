//! Presented algebras over the exact fields, Gröbner normal forms, twisted
//! and mixed rings with their rational points, relative factorizations and
//! mixed vector spaces.

mod factor;
mod groebner;
mod matrix;
mod mpoly;
pub mod parse;
mod pres;
mod structures;
mod vector;

pub use factor::*;
pub use groebner::*;
pub use matrix::*;
pub use mpoly::*;
pub use pres::*;
pub use structures::*;
pub use vector::*;

use crate::fields::FieldError;
use thiserror::Error;

/// Default bound on S-polynomial degree and on preimage searches.
pub const DEFAULT_DEGREE_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("degree cap {cap} exceeded")]
    DegreeCapExceeded { cap: u32 },
    #[error("composite is not Frobenius on generator {generator} ({side})")]
    CompositionMismatch { side: &'static str, generator: String },
    #[error("relation {relation} is not preserved")]
    RelationNotPreserved { relation: String },
    #[error("point set exceeds the enumeration bound")]
    EnumerationBound,
    #[error("kernel computation exceeded the degree cap {cap}")]
    KernelComputationCapExceeded { cap: u32 },
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type AResult<T> = Result<T, AlgError>;

/// Largest point set enumerated before giving up.
pub const POINT_BOUND: u64 = 1 << 20;
