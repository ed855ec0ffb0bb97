//! Exact integer linear algebra over arbitrary-precision integers.

mod group;
mod hom;
mod matrix;
mod snf;
mod subgroup;

use num_bigint::BigInt;
use thiserror::Error;

pub use group::{CanonicalForm, Element, FgAbelianGroup, Invariants, Presentation};
pub use hom::AbHom;
pub use matrix::IntMatrix;
pub use snf::{integer_kernel, smith_normal_form, LatticeSolver, Snf};
pub use subgroup::{Congruence, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntlinError {
    #[error("cyclic orders must be nonnegative, got {0}")]
    InvalidOrder(BigInt),
    #[error("expected {expected} coordinates, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("{element} is not a reduced element of {group}")]
    NotAnElement { element: String, group: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),
}
