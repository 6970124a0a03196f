//! Lift of a CR coframe on `M` to the metric `kappa.rho - eta.etabar` on `R x M`.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;

use super::KerrError;

/// Coordinates `(r, m1, m2, m3)`; `k = d_r`.
pub type Point = [f64; 4];

/// Components on `(dr, dm1, dm2, dm3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoframeValue {
    pub kappa: [f64; 4],
    pub eta: [Complex64; 4],
    pub rho: [f64; 4],
}

pub trait Coframe: Sync {
    fn at(&self, x: Point) -> CoframeValue;
}

impl<F: Fn(Point) -> CoframeValue + Sync> Coframe for F {
    fn at(&self, x: Point) -> CoframeValue {
        self(x)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Constant `zeta` congruence in coordinates along its rays:
/// `v = r`, `w = m2 + i m3 - zeta r`, `u = m1 + |zeta|^2 r`.
pub fn flat_fixture(zeta: Complex64) -> impl Coframe {
    move |_x: Point| CoframeValue {
        kappa: [0.0, 1.0, 2.0 * zeta.re, 2.0 * zeta.im],
        eta: [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)],
        rho: [1.0, 0.0, 0.0, 0.0],
    }
}

/// Heisenberg coframe `kappa = dm3 + m1 dm2 - m2 dm1`, `eta = dm1 + i dm2`, `rho = dr + m1 m2 dm3`.
pub fn heisenberg_fixture() -> impl Coframe {
    |x: Point| CoframeValue {
        kappa: [0.0, -x[2], x[1], 1.0],
        eta: [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)],
        rho: [1.0, 0.0, 0.0, x[1] * x[2]],
    }
}

/// Fiber coordinates of a 0-adapted change `kappa' = u kappa`, `eta' = b kappa + a eta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Adapted {
    pub u: f64,
    pub a: Complex64,
    pub b: Complex64,
}

impl Adapted {
    pub fn new(u: f64, a: Complex64, b: Complex64) -> Result<Self, KerrError> {
        if u == 0.0 || a.norm() == 0.0 {
            return Err(KerrError::Input("0-adapted change needs u, a nonzero".into()));
        }
        Ok(Adapted { u, a, b })
    }

    pub fn apply(&self, v: &CoframeValue) -> CoframeValue {
        CoframeValue {
            kappa: v.kappa.map(|k| self.u * k),
            eta: std::array::from_fn(|i| self.b * v.kappa[i] + self.a * v.eta[i]),
            rho: v.rho,
        }
    }
}

/// The coframe `base` transformed by fiber coordinates depending on the point.
pub fn transformed<C: Coframe, F: Fn(Point) -> Adapted + Sync>(base: C, t: F) -> impl Coframe {
    move |x: Point| t(x).apply(&base.at(x))
}

/// `x.y = x (x) y + y (x) x` for real 1-forms.
fn sym(x: &[f64; 4], y: &[f64; 4]) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| x[i] * y[j] + y[i] * x[j])
}

/// `eta.etabar`, a real symmetric form.
fn herm(e: &[Complex64; 4]) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| 2.0 * (e[i] * e[j].conj()).re)
}

pub fn metric(v: &CoframeValue) -> Matrix4<f64> {
    sym(&v.kappa, &v.rho) - herm(&v.eta)
}

fn coframe_matrix(v: &CoframeValue) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| match i {
        0 => v.kappa[j],
        1 => v.eta[j].re,
        2 => v.eta[j].im,
        _ => v.rho[j],
    })
}

/// `(positive, negative)` eigenvalue counts; `None` if some eigenvalue is below `tol`.
pub fn signature(g: &Matrix4<f64>, tol: f64) -> Option<(usize, usize)> {
    let e = SymmetricEigen::new(*g).eigenvalues;
    let scale = e.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    if e.iter().any(|x| x.abs() <= tol * scale) {
        return None;
    }
    Some((e.iter().filter(|x| **x > 0.0).count(), e.iter().filter(|x| **x < 0.0).count()))
}

/// `g' - (f g + kappa.xi)` for a transformation, with both choices of `f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformCheck {
    pub adapted: Adapted,
    /// `|a|^2`.
    pub f: f64,
    /// With `f = |a|^2`, `xi = (u - |a|^2) rho - |b|^2 kappa - a bbar eta - abar b etabar`.
    pub residual: f64,
    /// `|b|^2` in place of `|a|^2` in both `f` and `xi`.
    pub f_alt: f64,
    pub residual_alt: f64,
}

/// Shape of the transformed metric with conformal factor `f`.
fn shape(v: &CoframeValue, t: &Adapted, f: f64) -> Matrix4<f64> {
    let ab = t.a * t.b.conj();
    let xi: [f64; 4] =
        std::array::from_fn(|i| (t.u - f) * v.rho[i] - t.b.norm_sqr() * v.kappa[i] - 2.0 * (ab * v.eta[i]).re);
    metric(v) * f + sym(&v.kappa, &xi)
}

pub fn transform_check(v: &CoframeValue, t: &Adapted) -> TransformCheck {
    let g2 = metric(&t.apply(v));
    let res = |f: f64| (g2 - shape(v, t, f)).abs().max();
    let (f, f_alt) = (t.a.norm_sqr(), t.b.norm_sqr());
    TransformCheck { adapted: *t, f, residual: res(f), f_alt, residual_alt: res(f_alt) }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub samples: usize,
    pub seed: u64,
    pub fd_step: f64,
    /// Every sample has one positive and three negative eigenvalues.
    pub signature_ok: bool,
    /// Signature at the first sample.
    pub signature: Option<(usize, usize)>,
    /// `max |g(k, k)|`.
    pub null_residual: f64,
    /// `max |k _| g - kappa|`.
    pub contraction_residual: f64,
    /// `max |L_k kappa|`, `max |L_k eta|`.
    pub lie_kappa: f64,
    pub lie_eta: f64,
    /// `(L_k rho)(k)`, zero when `L_k rho = 0 mod kappa, eta, etabar`.
    pub lie_rho: f64,
    /// `max |kappa ^ L_k kappa|`.
    pub kappa_lie_kappa: f64,
    pub transform: Option<TransformCheck>,
}

struct SampleOut {
    sig: Option<(usize, usize)>,
    null: f64,
    contr: f64,
    lk: f64,
    le: f64,
    lr: f64,
    klk: f64,
    tr: Option<TransformCheck>,
}

fn sample<C: Coframe>(cf: &C, x: Point, h: f64, t: Option<&Adapted>, tol: f64, idx: usize) -> Result<SampleOut, KerrError> {
    let v = cf.at(x);
    if coframe_matrix(&v).determinant().abs() <= tol {
        return Err(KerrError::Degenerate(idx));
    }
    let g = metric(&v);
    let k = [1.0, 0.0, 0.0, 0.0];
    let null = g[(0, 0)].abs();
    let contr = (0..4).map(|j| (g[(0, j)] - v.kappa[j]).abs()).fold(0.0, f64::max);
    let (mut xp, mut xm) = (x, x);
    xp[0] += h;
    xm[0] -= h;
    let (vp, vm) = (cf.at(xp), cf.at(xm));
    let lk: [f64; 4] = std::array::from_fn(|i| (vp.kappa[i] - vm.kappa[i]) / (2.0 * h));
    let le: [Complex64; 4] = std::array::from_fn(|i| (vp.eta[i] - vm.eta[i]) / (2.0 * h));
    let lr = (vp.rho[0] - vm.rho[0]) / (2.0 * h) * k[0];
    let mut klk = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            klk = klk.max((v.kappa[i] * lk[j] - v.kappa[j] * lk[i]).abs());
        }
    }
    Ok(SampleOut {
        sig: signature(&g, tol),
        null,
        contr,
        lk: lk.iter().fold(0.0, |m, x| m.max(x.abs())),
        le: le.iter().fold(0.0, |m, x| m.max(x.norm())),
        lr: lr.abs(),
        klk,
        tr: t.map(|t| transform_check(&v, t)),
    })
}

/// Assembles `g` on `samples` points of `[-1, 1]^4` and checks the lift identities.
pub fn lift_metric<C: Coframe>(
    cf: &C,
    samples: usize,
    seed: u64,
    transform: Option<Adapted>,
    cfg: &Config,
) -> Result<MetricReport, KerrError> {
    if samples == 0 {
        return Err(KerrError::Input("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Point> = (0..samples).map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0))).collect();
    let h = cfg.fd_step;
    let outs: Vec<SampleOut> = pts
        .par_iter()
        .enumerate()
        .map(|(i, x)| sample(cf, *x, h, transform.as_ref(), cfg.rank_tol, i))
        .collect::<Result<_, _>>()?;
    let max = |f: &dyn Fn(&SampleOut) -> f64| outs.iter().map(f).fold(0.0, f64::max);
    let tr = transform.map(|t| {
        let worst = |alt: bool| {
            outs.iter()
                .filter_map(|o| o.tr.as_ref())
                .map(|c| if alt { c.residual_alt } else { c.residual })
                .fold(0.0, f64::max)
        };
        TransformCheck { adapted: t, f: t.a.norm_sqr(), residual: worst(false), f_alt: t.b.norm_sqr(), residual_alt: worst(true) }
    });
    Ok(MetricReport {
        samples,
        seed,
        fd_step: h,
        signature_ok: outs.iter().all(|o| o.sig == Some((1, 3))),
        signature: outs[0].sig,
        null_residual: max(&|o| o.null),
        contraction_residual: max(&|o| o.contr),
        lie_kappa: max(&|o| o.lk),
        lie_eta: max(&|o| o.le),
        lie_rho: max(&|o| o.lr),
        kappa_lie_kappa: max(&|o| o.klk),
        transform: tr,
    })
}

#[cfg(test)]
mod tests {
    use super::super::optical::minkowski_metric;
    use super::*;

    #[test]
    fn flat_fixture_is_minkowski() {
        let z = c(0.4, -0.3);
        let v = flat_fixture(z).at([0.1, 0.2, 0.3, 0.4]);
        // pull back du.dv - dw.dwbar along (r, m) -> (u, v, x1, x2)
        let jac = [[z.norm_sqr(), 1.0, -z.re, -z.im], [1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        let g0 = minkowski_metric();
        let g = metric(&v);
        for i in 0..4 {
            for j in 0..4 {
                let pulled: f64 = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| jac[i][a] * g0[a][b] * jac[j][b]).sum();
                assert!((g[(i, j)] - pulled).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn lift_identities() {
        let cfg = Config::default();
        let r = lift_metric(&flat_fixture(c(0.3, 0.1)), 20, 0, None, &cfg).unwrap();
        assert!(r.signature_ok && r.null_residual == 0.0 && r.contraction_residual == 0.0);
        let r = lift_metric(&heisenberg_fixture(), 50, 1, None, &cfg).unwrap();
        assert!(r.signature_ok, "{r:?}");
        assert!(r.null_residual < 1e-15 && r.contraction_residual < 1e-15);
        assert!(r.lie_kappa < 1e-8 && r.lie_eta < 1e-8 && r.lie_rho < 1e-8);
    }

    #[test]
    fn r_dependent_fiber_coordinates() {
        let cfg = Config::default();
        let cf = transformed(heisenberg_fixture(), |x: Point| Adapted {
            u: 2.0 + x[0].sin(),
            a: Complex64::from_polar(1.0 + 0.5 * x[0], x[0]),
            b: c(x[0], 1.0),
        });
        let r = lift_metric(&cf, 50, 2, None, &cfg).unwrap();
        assert!(r.signature_ok);
        assert!(r.lie_kappa > 0.1 && r.lie_eta > 0.1);
        assert!(r.kappa_lie_kappa < 1e-8);
    }

    #[test]
    fn transformed_metric_shape() {
        let t = Adapted::new(2.0, c(1.0, 0.0), c(1.0, 1.0)).unwrap();
        let r = lift_metric(&heisenberg_fixture(), 30, 0, Some(t), &Config::default()).unwrap();
        let tc = r.transform.unwrap();
        assert_eq!((tc.f, tc.f_alt), (1.0, 2.0));
        assert!(tc.residual < 1e-13, "{tc:?}");
        assert!(tc.residual_alt > 0.1, "{tc:?}");
        // the two agree when |a| = |b|
        let t = Adapted::new(0.5, c(0.6, 0.8), c(0.0, 1.0)).unwrap();
        let tc = transform_check(&heisenberg_fixture().at([0.0, 0.3, -0.2, 0.5]), &t);
        assert!(tc.residual < 1e-13 && tc.residual_alt < 1e-13);
    }

    #[test]
    fn degenerate_coframe() {
        let bad = |_x: Point| CoframeValue {
            kappa: [0.0, 1.0, 0.0, 0.0],
            eta: [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            rho: [1.0, 0.0, 0.0, 0.0],
        };
        assert!(matches!(lift_metric(&bad, 3, 0, None, &Config::default()), Err(KerrError::Degenerate(0))));
    }
}
