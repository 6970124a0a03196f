//! The Hermitian form `h` on `C^4`.

use nalgebra::{Complex, Matrix4};

use crate::exterior::GaussRat;

use super::matrix::Mat4;
use super::FramesError;

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianForm {
    pub epsilon: i64,
    /// The frame sign; forced to `+1` when `epsilon = +1`.
    pub sign: i64,
    pub matrix: Mat4<GaussRat>,
}

/// `h(w, z) = i(conj(w0) z3 - conj(w3) z0) + conj(w1) z1 + eps conj(w2) z2`.
pub fn h_matrix(epsilon: i64) -> Mat4<GaussRat> {
    let mut m = Mat4::<GaussRat>::from_fn(|_, _| GaussRat::from(0));
    m.0[0][3] = GaussRat::i();
    m.0[3][0] = -GaussRat::i();
    m.0[1][1] = GaussRat::from(1);
    m.0[2][2] = GaussRat::from(epsilon);
    m
}

impl HermitianForm {
    pub fn new(epsilon: i64, sign: i64) -> Result<Self, FramesError> {
        if epsilon.abs() != 1 || sign.abs() != 1 {
            return Err(FramesError::Input("epsilon and sign must be +1 or -1".into()));
        }
        if epsilon == 1 && sign == -1 {
            return Err(FramesError::Input("the frame sign may only flip when epsilon = -1".into()));
        }
        Ok(HermitianForm { epsilon, sign, matrix: h_matrix(epsilon).scale(&GaussRat::from(sign)) })
    }

    /// `(positive, negative)` eigenvalue counts of the form itself.
    pub fn signature(&self) -> (usize, usize) {
        let h0 = h_matrix(self.epsilon).to_c64();
        let m = Matrix4::from_fn(|i, j| Complex::new(h0.0[i][j].re, h0.0[i][j].im));
        let eig = m.symmetric_eigenvalues();
        let pos = eig.iter().filter(|&&x| x > 0.0).count();
        (pos, 4 - pos)
    }

    pub fn is_hermitian(&self) -> bool {
        self.matrix.adjoint() == self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        assert_eq!(HermitianForm::new(1, 1).unwrap().signature(), (3, 1));
        assert_eq!(HermitianForm::new(-1, 1).unwrap().signature(), (2, 2));
        assert!(HermitianForm::new(1, -1).is_err());
        assert!(HermitianForm::new(-1, -1).unwrap().is_hermitian());
    }
}
