//! Levi-nondegenerate 3-folds in the hyperquadric: second fundamental form,
//! jet tables, curvature evaluators and the homogeneous classification.

pub mod closure;
pub mod coeffs;
pub mod flat;
pub mod jet;

use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::unitary_frames::FramesError;

/// Generators whose printed `H^2` rule differs from the pulled-back one.
pub const PRINTED_H2_DISCREPANCIES: [&str; 2] = ["xi", "rho"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LnError {
    #[error("input error: {0}")]
    Input(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Frames(#[from] FramesError),
}
pub mod reduce;
pub mod state;
pub mod curved;
pub mod decide;
