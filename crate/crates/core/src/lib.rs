//! Exact exterior calculus for CR structure equations, the catalog of
//! homogeneous strictly pseudoconvex CR 3-manifolds, equivariant embeddings
//! into the hyperquadrics of `SU(2,2)` and `SU(3,1)`, Levi-flat embeddings,
//! and numeric checks of shear-free congruences in Minkowski space.

pub mod catalog;
pub mod cli;
pub mod config;
pub mod embedding_lf;
pub mod embedding_ln;
pub mod exterior;
pub mod kerr;
pub mod unitary_frames;
