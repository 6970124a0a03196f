//! Shear-free null congruences in Minkowski space, their hyperquadric image
//! and the metrics lifted from CR coframes.

pub mod congruence;
pub mod expr;
pub mod metric;
pub mod optical;

use num_complex::Complex64;

pub use congruence::{solve_zeta, solve_zeta_any, CongruenceSpec, Definition, ExplicitZeta, MinkowskiPoint, SampleBox};
pub use expr::HPoly;
pub use metric::{lift_metric, Adapted, Coframe, CoframeValue, MetricReport, TransformCheck};
pub use optical::{optical_scalars, quadric_image, LeviClass, OpticalReport, QuadricImage};

#[derive(Debug, thiserror::Error)]
pub enum KerrError {
    #[error("cannot parse H: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("Newton iteration did not converge at {point:?}, |H| = {residual:e}")]
    NoConvergence { point: MinkowskiPoint, residual: f64 },
    #[error("branch point at {point:?}, zeta = {zeta}")]
    BranchPoint { point: MinkowskiPoint, zeta: Complex64 },
    #[error("degenerate coframe at sample {0}")]
    Degenerate(usize),
}
