//! Group elements of `U(3-d,1+d)`, the parabolic constructors and subgroup
//! membership predicates.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exterior::GaussRat;

use super::hermitian::h_matrix;
use super::matrix::{Mat4, Scalar};
use super::FramesError;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<T> {
    pub epsilon: i64,
    pub matrix: Mat4<T>,
}

/// Parameters of a `P0` element; `phase` is `e^{ir}`.
#[derive(Clone, Debug, PartialEq)]
pub struct P0Params<T> {
    pub sign: i64,
    pub a1: T,
    pub a2: T,
    pub c1: T,
    pub c2: T,
    pub phase: T,
    pub t: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subgroup {
    P0,
    Pl,
    Phat,
    P,
    P1Ln,
    P1Lf,
    R,
}

impl Subgroup {
    pub const ALL: [Subgroup; 7] =
        [Subgroup::P0, Subgroup::Pl, Subgroup::Phat, Subgroup::P, Subgroup::P1Ln, Subgroup::P1Lf, Subgroup::R];

    pub fn name(self) -> &'static str {
        match self {
            Subgroup::P0 => "P0",
            Subgroup::Pl => "Pl",
            Subgroup::Phat => "Phat",
            Subgroup::P => "P",
            Subgroup::P1Ln => "P1_LN",
            Subgroup::P1Lf => "P1_LF",
            Subgroup::R => "R",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub group: Subgroup,
    pub member: bool,
    pub residuals: BTreeMap<String, f64>,
}

fn sc<T: Scalar>(v: i64) -> T {
    T::from_i64(v)
}

fn half<T: Scalar>() -> T {
    T::from_i64(2).inv().expect("2 is invertible")
}

impl<T: Scalar> P0Params<T> {
    /// `c0 = t - (i/2)(|c1|^2 + eps |c2|^2)`.
    pub fn c0(&self, epsilon: i64) -> T {
        let n = self.c1.mul(&self.c1.conj()).add(&sc::<T>(epsilon).mul(&self.c2.mul(&self.c2.conj())));
        self.t.sub(&T::i().mul(&half::<T>()).mul(&n))
    }

    /// Residuals of the defining constraints.
    pub fn constraint_residuals(&self, epsilon: i64) -> BTreeMap<String, f64> {
        let norm = self.a1.mul(&self.a1.conj()).add(&sc::<T>(epsilon).mul(&self.a2.mul(&self.a2.conj())));
        let mut r = BTreeMap::new();
        r.insert("a_norm".into(), norm.sub(&sc(self.sign)).abs());
        r.insert("phase_unit".into(), self.phase.mul(&self.phase.conj()).sub(&T::one()).abs());
        r.insert("t_real".into(), self.t.sub(&self.t.conj()).abs());
        r
    }
}

impl<T: Scalar> GroupElement<T> {
    pub fn identity(epsilon: i64) -> Self {
        GroupElement { epsilon, matrix: Mat4::identity() }
    }

    pub fn p0(epsilon: i64, p: &P0Params<T>) -> Result<Self, FramesError> {
        if epsilon.abs() != 1 || p.sign.abs() != 1 || (epsilon == 1 && p.sign == -1) {
            return Err(FramesError::Input("invalid epsilon/sign".into()));
        }
        let eps = sc::<T>(epsilon);
        let s = sc::<T>(p.sign);
        let i = T::i();
        let (a1b, a2b, c1b, c2b) = (p.a1.conj(), p.a2.conj(), p.c1.conj(), p.c2.conj());
        let z = T::zero();
        let m = [
            [
                T::one(),
                i.neg().mul(&p.a1.mul(&c1b).add(&eps.mul(&p.a2).mul(&c2b))),
                eps.mul(&i).mul(&p.phase).mul(&a2b.mul(&c1b).sub(&a1b.mul(&c2b))),
                p.c0(epsilon).mul(&s),
            ],
            [z.clone(), p.a1.clone(), eps.neg().mul(&p.phase).mul(&a2b), p.c1.mul(&s)],
            [z.clone(), p.a2.clone(), p.phase.mul(&a1b), p.c2.mul(&s)],
            [z.clone(), z.clone(), z, s.clone()],
        ];
        Ok(GroupElement { epsilon, matrix: Mat4(m) })
    }

    pub fn pl(epsilon: i64, l: &T) -> Result<Self, FramesError> {
        let linv = l.conj().inv().ok_or_else(|| FramesError::Input("l must be nonzero".into()))?;
        Ok(GroupElement { epsilon, matrix: Mat4::diag([l.clone(), T::one(), T::one(), linv]) })
    }

    pub fn mul(&self, o: &Self) -> Self {
        GroupElement { epsilon: self.epsilon, matrix: self.matrix.mul(&o.matrix) }
    }

    pub fn det(&self) -> T {
        self.matrix.det()
    }

    /// `max |g^* h g - s h|` for the frame sign `s`.
    pub fn isometry_residual(&self, sign: i64) -> f64 {
        let h: Mat4<T> = Mat4::from_fn(|i, j| {
            let c = h_matrix(self.epsilon).0[i][j].to_c64();
            T::from_i64(c.re as i64).add(&T::i().mul(&T::from_i64(c.im as i64)))
        });
        let lhs = self.matrix.adjoint().mul(&h).mul(&self.matrix);
        lhs.sub(&h.scale(&sc(sign))).max_abs()
    }

    /// Best frame sign allowed by `epsilon` and its isometry residual.
    pub fn isometry(&self) -> (i64, f64) {
        let plus = self.isometry_residual(1);
        if self.epsilon == -1 {
            let minus = self.isometry_residual(-1);
            if minus < plus {
                return (-1, minus);
            }
        }
        (1, plus)
    }
}

/// Entries `(1,0),(2,0),(3,0),(3,1),(3,2)` of `V^{-1} g V` must vanish, where
/// `V` is the flag basis up to column scaling.
fn flag_residual<T: Scalar>(g: &Mat4<T>) -> f64 {
    let (o, z) = (T::one(), T::zero());
    let v = Mat4([
        [z.clone(), o.clone(), z.clone(), z.clone()],
        [o.clone(), z.clone(), z.clone(), o.neg()],
        [o.clone(), z.clone(), z.clone(), o.clone()],
        [z.clone(), z.clone(), o, z],
    ]);
    let w = v.inverse().expect("flag basis invertible").mul(g).mul(&v);
    [(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)].iter().map(|&(i, j)| w.0[i][j].abs()).fold(0.0, f64::max)
}

pub fn subgroup_membership<T: Scalar>(
    g: &GroupElement<T>,
    which: Subgroup,
    tol: f64,
) -> Result<Membership, FramesError> {
    let m = &g.matrix;
    if m.det().abs() == 0.0 {
        return Err(FramesError::Input("singular matrix".into()));
    }
    let mut r = BTreeMap::new();
    let (sign, iso) = g.isometry();
    let col0_tail = (1..4).map(|i| m.0[i][0].abs()).fold(0.0, f64::max);
    let p0_core = |r: &mut BTreeMap<String, f64>| {
        r.insert("isometry".into(), iso);
        r.insert("column0".into(), col0_tail.max(m.0[0][0].sub(&T::one()).abs()));
        let row3 = (0..3).map(|j| m.0[3][j].abs()).fold(0.0, f64::max);
        r.insert("row3".into(), row3.max(m.0[3][3].sub(&sc(sign)).abs()));
    };
    match which {
        Subgroup::P0 => p0_core(&mut r),
        Subgroup::Pl => {
            let off = Mat4::from_fn(|i, j| if i == j { T::zero() } else { m.0[i][j].clone() }).max_abs();
            r.insert("offdiag".into(), off);
            r.insert("middle".into(), m.0[1][1].sub(&T::one()).abs().max(m.0[2][2].sub(&T::one()).abs()));
            let inv = m.0[0][0].conj().inv().map_or(f64::INFINITY, |x| m.0[3][3].sub(&x).abs());
            r.insert("corner".into(), inv);
        }
        Subgroup::Phat | Subgroup::P => {
            r.insert("isometry".into(), iso);
            r.insert("column0".into(), col0_tail);
            if which == Subgroup::P {
                let det = g.det();
                r.insert("det".into(), det.sub(&T::one()).abs());
                let l = m.0[0][0].clone();
                let lbar_over_l = l.conj().mul(&l.inv().unwrap_or_else(T::zero));
                let phase = det.mul(&lbar_over_l);
                r.insert("phase".into(), phase.sub(&lbar_over_l).abs());
            }
        }
        Subgroup::P1Ln => {
            p0_core(&mut r);
            r.insert("sign".into(), if sign == 1 { 0.0 } else { 1.0 });
            r.insert("a2".into(), m.0[2][1].abs());
            r.insert("c2".into(), m.0[2][3].abs());
        }
        Subgroup::P1Lf => {
            p0_core(&mut r);
            r.insert("epsilon".into(), if g.epsilon == -1 { 0.0 } else { 1.0 });
            r.insert("sign".into(), if sign == 1 { 0.0 } else { 1.0 });
            r.insert("c2_eq_c1".into(), m.0[2][3].sub(&m.0[1][3]).abs());
            let (a1, a2) = (&m.0[1][1], &m.0[2][1]);
            let lhs = a1.add(a2);
            let rhs = g.det().mul(&a2.conj().add(&a1.conj()));
            r.insert("a_phase".into(), lhs.sub(&rhs).abs());
        }
        Subgroup::R => {
            r.insert("epsilon".into(), if g.epsilon == -1 { 0.0 } else { 1.0 });
            r.insert("isometry".into(), g.isometry_residual(1));
            r.insert("det".into(), g.det().sub(&T::one()).abs());
            r.insert("flag".into(), flag_residual(m));
        }
    }
    let member = r.values().all(|&v| v <= tol);
    Ok(Membership { group: which, member, residuals: r })
}

fn small_rat<R: Rng>(rng: &mut R) -> GaussRat {
    GaussRat::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

fn unit_phase<R: Rng>(rng: &mut R) -> GaussRat {
    let m = small_rat(rng);
    let one = GaussRat::from(1);
    let m2 = &m * &m;
    let den = &one + &m2;
    let re = &(&one - &m2) / &den;
    let im = &(&GaussRat::from(2) * &m) / &den;
    &re + &(&GaussRat::i() * &im)
}

/// Random exact `P0` parameters for the given `epsilon` and frame sign.
pub fn random_p0_params<R: Rng>(rng: &mut R, epsilon: i64, sign: i64) -> P0Params<GaussRat> {
    let one = GaussRat::from(1);
    let two = GaussRat::from(2);
    let (a1, a2) = if epsilon == 1 {
        let (p, q, s) = (small_rat(rng), small_rat(rng), small_rat(rng));
        let n2 = &(&(&p * &p) + &(&q * &q)) + &(&s * &s);
        let den = &n2 + &one;
        let a1 = &(&(&two * &p) + &(&GaussRat::i() * &(&two * &q))) / &den;
        let a2 = &(&(&two * &s) + &(&GaussRat::i() * &(&n2 - &one))) / &den;
        (a1, a2)
    } else {
        let s = loop {
            let s = small_rat(rng);
            if &s * &s != one {
                break s;
            }
        };
        let den = &one - &(&s * &s);
        let ch = &(&one + &(&s * &s)) / &den;
        let sh = &(&two * &s) / &den;
        let (big, small) = (&ch * &unit_phase(rng), &sh * &unit_phase(rng));
        if sign == 1 {
            (big, small)
        } else {
            (small, big)
        }
    };
    P0Params {
        sign,
        a1,
        a2,
        c1: &small_rat(rng) + &(&GaussRat::i() * &small_rat(rng)),
        c2: &small_rat(rng) + &(&GaussRat::i() * &small_rat(rng)),
        phase: unit_phase(rng),
        t: small_rat(rng),
    }
}

/// JSON form of a group element: either a raw matrix of `[re, im]` pairs or a
/// parameter record.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GroupElementJson {
    Matrix { epsilon: i64, matrix: [[[f64; 2]; 4]; 4] },
    Params { epsilon: i64, p0: P0Json, #[serde(default)] l: Option<[f64; 2]> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct P0Json {
    #[serde(default = "one_i64")]
    pub sign: i64,
    pub a1: [f64; 2],
    pub a2: [f64; 2],
    pub c1: [f64; 2],
    pub c2: [f64; 2],
    pub r: f64,
    pub t: f64,
}

fn one_i64() -> i64 {
    1
}

fn c(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

impl GroupElementJson {
    pub fn to_element(&self) -> Result<GroupElement<Complex64>, FramesError> {
        match self {
            GroupElementJson::Matrix { epsilon, matrix } => {
                Ok(GroupElement { epsilon: *epsilon, matrix: Mat4::from_fn(|i, j| c(matrix[i][j])) })
            }
            GroupElementJson::Params { epsilon, p0, l } => {
                let p = P0Params {
                    sign: p0.sign,
                    a1: c(p0.a1),
                    a2: c(p0.a2),
                    c1: c(p0.c1),
                    c2: c(p0.c2),
                    phase: Complex64::from_polar(1.0, p0.r),
                    t: Complex64::new(p0.t, 0.0),
                };
                let g = GroupElement::p0(*epsilon, &p)?;
                match l {
                    Some(l) => Ok(GroupElement::pl(*epsilon, &c(*l))?.mul(&g)),
                    None => Ok(g),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_in_all() {
        for eps in [1, -1] {
            let g = GroupElement::<GaussRat>::identity(eps);
            for s in Subgroup::ALL {
                let m = subgroup_membership(&g, s, 0.0).unwrap();
                let expect = !(eps == 1 && matches!(s, Subgroup::P1Lf | Subgroup::R));
                assert_eq!(m.member, expect, "{s:?} eps={eps}");
            }
        }
    }

    #[test]
    fn pl_and_p() {
        let g = GroupElement::pl(1, &GaussRat::from(2)).unwrap();
        assert!(subgroup_membership(&g, Subgroup::Pl, 0.0).unwrap().member);
        assert!(!subgroup_membership(&g, Subgroup::P0, 0.0).unwrap().member);
        // det(p_l) = l / conj(l) is 1 for real l
        assert!(subgroup_membership(&g, Subgroup::P, 0.0).unwrap().member);
        let g = GroupElement::pl(1, &GaussRat::from_ints(0, 2)).unwrap();
        assert!(subgroup_membership(&g, Subgroup::Phat, 0.0).unwrap().member);
        assert!(!subgroup_membership(&g, Subgroup::P, 0.0).unwrap().member);
    }

    #[test]
    fn p0_samples_are_exact_isometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (eps, sign) in [(1, 1), (-1, 1), (-1, -1)] {
            for _ in 0..5 {
                let p = random_p0_params(&mut rng, eps, sign);
                assert!(p.constraint_residuals(eps).values().all(|&v| v == 0.0));
                let g = GroupElement::p0(eps, &p).unwrap();
                assert_eq!(g.isometry_residual(sign), 0.0);
                assert_eq!(g.det(), p.phase);
                assert!(subgroup_membership(&g, Subgroup::P0, 0.0).unwrap().member);
            }
        }
    }

    #[test]
    fn singular_rejected() {
        let g = GroupElement { epsilon: 1, matrix: Mat4::<GaussRat>::from_fn(|_, _| GaussRat::from(1)) };
        assert!(subgroup_membership(&g, Subgroup::P0, 0.0).is_err());
    }

    #[test]
    fn json_forms() {
        let raw = r#"{"epsilon": 1, "p0": {"a1": [1,0], "a2": [0,0], "c1": [0.5,0], "c2": [0,0], "r": 0, "t": 1}}"#;
        let g: GroupElementJson = serde_json::from_str(raw).unwrap();
        let e = g.to_element().unwrap();
        assert!(subgroup_membership(&e, Subgroup::P1Ln, 1e-14).unwrap().member);
        let back = GroupElementJson::Matrix {
            epsilon: 1,
            matrix: std::array::from_fn(|i| std::array::from_fn(|j| [e.matrix.0[i][j].re, e.matrix.0[i][j].im])),
        };
        let e2 = back.to_element().unwrap();
        assert_eq!(e2, e);
    }
}
