//! Exterior calculus over named generators with exact Gaussian rational
//! coefficients.
//!
//! A [`Space`] fixes an ordered coframe and a [`SymbolTable`]; a [`Form`] is a
//! sum of wedge monomials with [`ScalarPoly`] coefficients; a
//! [`StructureTable`] supplies `d` on generators and on symbols.

pub mod fmat;
pub mod form;
pub mod gauss;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod serial;
pub mod symbols;
pub mod table;

pub use fmat::FMat;
pub use form::{Form, Idx, Space};
pub use gauss::GaussRat;
pub use numeric::{numeric_eval, pit, NumericAssignment, PitReport};
pub use parse::FormParser;
pub use poly::{Monomial, ScalarPoly};
pub use symbols::{Sym, SymbolTable};
pub use table::{ClosureReport, StructureTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExteriorError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("no rule for d({0})")]
    MissingRule(String),
    #[error("forms live on different generator spaces")]
    SpaceMismatch,
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `a ^ b` on two forms known to share a space.
pub fn wedge(a: &Form, b: &Form) -> Result<Form, ExteriorError> {
    a.wedge(b)
}

pub fn exterior_derivative(table: &StructureTable, f: &Form) -> Result<Form, ExteriorError> {
    table.d(f)
}

pub fn check_d_squared(table: &StructureTable) -> Result<ClosureReport, ExteriorError> {
    table.check_d_squared()
}
