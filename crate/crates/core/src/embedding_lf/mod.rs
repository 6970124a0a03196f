//! Levi-flat 3-folds in the split hyperquadric: second fundamental form,
//! jet tables, rank reductions and homogeneous models.

pub mod decide;
pub mod rank0;
pub mod rank1;
pub mod rank2;
pub mod state;
pub mod table;

use thiserror::Error;

use crate::embedding_ln::LnError;
use crate::exterior::ExteriorError;
use crate::unitary_frames::FramesError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LfError {
    #[error("input error: {0}")]
    Input(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Frames(#[from] FramesError),
}

impl From<LnError> for LfError {
    fn from(e: LnError) -> Self {
        match e {
            LnError::Input(s) => LfError::Input(s),
            LnError::Invariant(s) => LfError::Invariant(s),
            LnError::Exterior(e) => LfError::Exterior(e),
            LnError::Frames(e) => LfError::Frames(e),
        }
    }
}
