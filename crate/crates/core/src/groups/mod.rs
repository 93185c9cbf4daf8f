//! Matrix Chevalley groups of types B_n, C_n (p = 2) and G₂ (p = 3): root
//! elements, Bruhat normal forms, very special isogenies, Suzuki-Ree
//! twisters, twisted-group enumeration, Tits mixed groups, mixed tori, the
//! SL_p/PGL_p mixture and the points-level exotic identity.

mod bruhat;
mod chevalley;
mod exotic;
mod isogeny;
mod mixed;
mod torus;
mod twisted;

pub use bruhat::*;
pub use chevalley::*;
pub use exotic::*;
pub use isogeny::*;
pub use mixed::*;
pub use torus::*;
pub use twisted::*;

use crate::fields::FieldError;
use thiserror::Error;

/// Hard bound on the size of any enumerated group.
pub const ENUMERATION_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unsupported group type: {0}")]
    UnsupportedType(String),
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error("matrix does not preserve the defining form")]
    FormNotPreserved,
    #[error("invariant failure: {0}")]
    InvariantFailure(String),
    #[error("enumeration exceeded {cap} elements")]
    EnumerationBound { cap: usize },
    #[error("subfield membership is not decidable for this mixed field")]
    UnsupportedSubfield,
    #[error("u^2 + u + delta is reducible over the big field")]
    ReducibleExtension,
    #[error("the extension has infinite or undeclared degree")]
    InfiniteDegree,
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type GResult<T> = Result<T, GroupError>;
