//! Hermitian frames of `C^4`: the form `h`, the Maurer-Cartan matrix `mu`
//! of `U(3-d,1+d)`, and the parabolic subgroups acting on adapted frames.

pub mod group;
pub mod hermitian;
pub mod matrix;
pub mod mu;

pub use group::{random_p0_params, subgroup_membership, GroupElement, GroupElementJson, Membership, P0Params, Subgroup};
pub use hermitian::HermitianForm;
pub use matrix::{Mat4, Scalar};
pub use mu::{build_mu, mc_expand, umc_table, McExpansion, MuMatrix};

use thiserror::Error;

use crate::exterior::ExteriorError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FramesError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}
