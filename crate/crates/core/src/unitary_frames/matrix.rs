//! Dense 4x4 matrices over exact or floating complex scalars.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::exterior::GaussRat;

pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn i() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn abs(&self) -> f64;
    fn to_c64(&self) -> Complex64;
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        GaussRat::from(v)
    }
    fn i() -> Self {
        GaussRat::i()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        GaussRat::inv(self)
    }
    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }
    fn to_c64(&self) -> Complex64 {
        GaussRat::to_c64(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        (self.norm() > 0.0).then(|| 1.0 / self)
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat4<T>(pub [[T; 4]; 4]);

impl<T: Scalar> Mat4<T> {
    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: [T; 4]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..4).fold(T::zero(), |acc, k| acc.add(&self.0[i][k].mul(&o.0[k][j])))
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(|i, j| self.0[i][j].mul(s))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].sub(&o.0[i][j]))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    fn pivot_row(m: &[[T; 8]; 4], col: usize) -> Option<usize> {
        (col..4)
            .filter(|&r| m[r][col].abs() > 0.0)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut m: [[T; 8]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if j < 4 {
                    self.0[i][j].clone()
                } else if j - 4 == i {
                    T::one()
                } else {
                    T::zero()
                }
            })
        });
        for col in 0..4 {
            let p = Self::pivot_row(&m, col)?;
            m.swap(col, p);
            let inv = m[col][col].inv()?;
            for j in 0..8 {
                m[col][j] = m[col][j].mul(&inv);
            }
            for r in 0..4 {
                if r != col {
                    let f = m[r][col].clone();
                    for j in 0..8 {
                        let v = m[col][j].mul(&f);
                        m[r][j] = m[r][j].sub(&v);
                    }
                }
            }
        }
        Some(Self::from_fn(|i, j| m[i][j + 4].clone()))
    }

    pub fn det(&self) -> T {
        let mut m = self.0.clone();
        let mut det = T::one();
        for col in 0..4 {
            let p = match (col..4)
                .filter(|&r| m[r][col].abs() > 0.0)
                .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            {
                Some(p) => p,
                None => return T::zero(),
            };
            if p != col {
                m.swap(col, p);
                det = det.neg();
            }
            det = det.mul(&m[col][col]);
            let inv = m[col][col].inv().expect("nonzero pivot");
            for r in col + 1..4 {
                let f = m[r][col].mul(&inv);
                for j in col..4 {
                    let v = m[col][j].mul(&f);
                    m[r][j] = m[r][j].sub(&v);
                }
            }
        }
        det
    }

    pub fn to_c64(&self) -> Mat4<Complex64> {
        Mat4::from_fn(|i, j| self.0[i][j].to_c64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det_exact() {
        let m = Mat4::<GaussRat>::from_fn(|i, j| GaussRat::from_ints((i * 4 + j) as i64 % 5, (i == j) as i64));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat4::identity());
        let d = m.det();
        assert_eq!(d.mul(&inv.det()), GaussRat::from(1));
    }

    #[test]
    fn singular() {
        let m = Mat4::<Complex64>::from_fn(|i, _| Complex64::new(i as f64, 0.0));
        assert!(m.inverse().is_none());
        assert_eq!(m.det(), Complex64::new(0.0, 0.0));
    }
}
