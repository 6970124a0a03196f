//! Small matrices of forms written as text entries.

use std::sync::Arc;

use super::form::{Form, Space};
use super::parse::FormParser;
use super::ExteriorError;

#[derive(Clone, Debug, PartialEq)]
pub struct FMat {
    pub rows: Vec<Vec<Form>>,
}

impl FMat {
    pub fn parse(p: &FormParser, rows: &[&[&str]]) -> Result<FMat, ExteriorError> {
        let rows = rows.iter().map(|r| r.iter().map(|e| p.parse(e)).collect::<Result<Vec<_>, _>>()).collect::<Result<_, _>>()?;
        Ok(FMat { rows })
    }

    /// A column vector.
    pub fn column(p: &FormParser, entries: &[&str]) -> Result<FMat, ExteriorError> {
        let rows = entries.iter().map(|e| p.parse(e).map(|f| vec![f])).collect::<Result<_, _>>()?;
        Ok(FMat { rows })
    }

    pub fn zeros(space: &Arc<Space>, n: usize, m: usize) -> FMat {
        FMat { rows: vec![vec![Form::zero(space); m]; n] }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    fn space(&self) -> Result<&Arc<Space>, ExteriorError> {
        self.rows.first().and_then(|r| r.first()).map(|f| f.space()).ok_or_else(|| ExteriorError::Config("empty matrix".into()))
    }

    /// Matrix product with entrywise wedge.
    pub fn mul(&self, o: &FMat) -> Result<FMat, ExteriorError> {
        if self.ncols() != o.nrows() {
            return Err(ExteriorError::Config(format!("shape {}x{} times {}x{}", self.nrows(), self.ncols(), o.nrows(), o.ncols())));
        }
        let space = self.space()?.clone();
        let mut out = FMat::zeros(&space, self.nrows(), o.ncols());
        for i in 0..self.nrows() {
            for j in 0..o.ncols() {
                let mut acc = Form::zero(&space);
                for k in 0..self.ncols() {
                    let a = &self.rows[i][k];
                    let b = &o.rows[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.wedge(b)?)?;
                    }
                }
                out.rows[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &FMat) -> Result<FMat, ExteriorError> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &FMat) -> Result<FMat, ExteriorError> {
        self.zip(o, |a, b| a.sub(b))
    }

    fn zip(&self, o: &FMat, f: impl Fn(&Form, &Form) -> Result<Form, ExteriorError>) -> Result<FMat, ExteriorError> {
        if self.nrows() != o.nrows() || self.ncols() != o.ncols() {
            return Err(ExteriorError::Config("shape mismatch".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        Ok(FMat { rows })
    }

    /// Left multiplication by a form (usually a scalar).
    pub fn scale(&self, k: &Form) -> Result<FMat, ExteriorError> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|a| k.wedge(a)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        Ok(FMat { rows })
    }

    /// Entries of a single column.
    pub fn into_column(self) -> Vec<Form> {
        self.rows.into_iter().map(|mut r| r.swap_remove(0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::SymbolTable;

    #[test]
    fn product_and_shapes() {
        let mut t = SymbolTable::new();
        t.declare_complex_bar("a").unwrap();
        let s = Space::builder(Arc::new(t)).real("kappa").complex_bar("eta").build().unwrap();
        let p = FormParser::new(&s);
        let m = FMat::parse(&p, &[&["a", "0"], &["1", "abar"]]).unwrap();
        let v = FMat::column(&p, &["eta", "kappa"]).unwrap();
        let r = m.mul(&v).unwrap().into_column();
        assert_eq!(r[0], p.f("a*eta"));
        assert_eq!(r[1], p.f("eta + abar*kappa"));
        assert!(m.mul(&m.mul(&v).unwrap()).is_ok());
        assert!(v.mul(&m).is_err());
    }
}
