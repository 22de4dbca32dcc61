//! Solution-generating transformations.

mod matching;
mod mobius;
mod quadratic;

pub use matching::{match_solution, pullback, SolutionMatch};
pub use mobius::{apply_mobius, MobiusSymmetry};
pub use quadratic::{
    folded_quadratic_transform, folded_theta, rgt_theta, rgt_transform, to_seed_form, Branch,
    SeedForm,
};

use crate::field::FieldError;
use crate::pvi::PviError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("depth budget: {0}")]
    Depth(String),
    #[error("no normalization matches: {0}")]
    NoMatch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Pvi(#[from] PviError),
}
