//! Optical scalars of the congruence `zeta` and its image in the hyperquadric.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Config, MIN_ABS_V};

use super::congruence::{restricted, solve_zeta, solve_zeta_any, twistor, CongruenceSpec, Definition, MinkowskiPoint};
use super::KerrError;

/// Smallest `|dF/dzeta|` at a regular sample.
pub const REGULAR_DERIV: f64 = 1e-2;
/// Largest `|zeta|` in the chart; larger values approach the direction at infinity.
pub const ZETA_MAX: f64 = 5.0;
/// Largest third derivative of `zeta` estimated from the steps `h` and `2h`.
pub const THIRD_DERIV_MAX: f64 = 1e3;
/// Largest `|zeta(x + s) - zeta(x)| / |s|` accepted as the same branch.
pub const BRANCH_JUMP: f64 = 1e3;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `k = |zeta|^2 d_u + d_v - Re zeta d_x1 - Im zeta d_x2`.
pub fn null_vector(zeta: Complex64) -> [f64; 4] {
    [zeta.norm_sqr(), 1.0, -zeta.re, -zeta.im]
}

/// `kappa = du + |zeta|^2 dv + 2 Re zeta dx1 + 2 Im zeta dx2`.
pub fn kappa(zeta: Complex64) -> [f64; 4] {
    [1.0, zeta.norm_sqr(), 2.0 * zeta.re, 2.0 * zeta.im]
}

/// `eta = dw + zeta dv`.
pub fn eta(zeta: Complex64) -> [Complex64; 4] {
    [c(0.0, 0.0), zeta, c(1.0, 0.0), c(0.0, 1.0)]
}

/// `g = du.dv - dw.dwbar` in `(u, v, x1, x2)`, with `x.y = x (x) y + y (x) x`.
pub fn minkowski_metric() -> [[f64; 4]; 4] {
    [[0.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0], [0.0, 0.0, -2.0, 0.0], [0.0, 0.0, 0.0, -2.0]]
}

/// `max(|g(k, k)|, |k _| g - kappa|)` for the Minkowski metric.
pub fn null_residual(zeta: Complex64) -> f64 {
    let g = minkowski_metric();
    let k = null_vector(zeta);
    let kap = kappa(zeta);
    let mut out = 0.0f64;
    let mut gkk = 0.0;
    for j in 0..4 {
        let kg: f64 = (0..4).map(|i| k[i] * g[i][j]).sum();
        out = out.max((kg - kap[j]).abs());
        gkk += kg * k[j];
    }
    out.max(gkk.abs())
}

/// `dzeta(k)`.
pub fn geodesic(zeta: Complex64, dz: &[Complex64; 4]) -> Complex64 {
    let k = null_vector(zeta);
    (0..4).map(|i| dz[i] * k[i]).sum()
}

fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Coefficients of `dz1 ^ dz2 ^ dzeta`; entry `j` omits coordinate `j`.
pub fn shear_form(p: &MinkowskiPoint, zeta: Complex64, dz: &[Complex64; 4]) -> [Complex64; 4] {
    let wb = p.w.conj();
    let dz1 = [1.0 + wb * dz[0], wb * dz[1], zeta + wb * dz[2], c(0.0, -1.0) * zeta + wb * dz[3]];
    let dz2 = [p.v * dz[0], zeta + p.v * dz[1], 1.0 + p.v * dz[2], c(0.0, 1.0) + p.v * dz[3]];
    let mut out = [c(0.0, 0.0); 4];
    for (j, o) in out.iter_mut().enumerate() {
        let cols: Vec<usize> = (0..4).filter(|&i| i != j).collect();
        let row = |f: &[Complex64; 4]| [f[cols[0]], f[cols[1]], f[cols[2]]];
        *o = det3([row(&dz1), row(&dz2), row(dz)]);
    }
    out
}

/// Coefficient of `kappa ^ dkappa ^ dv` on `du ^ dv ^ dx1 ^ dx2`.
pub fn twist(zeta: Complex64, dz: &[Complex64; 4]) -> f64 {
    let kap = kappa(zeta);
    // d_i kappa_j
    let dk: Vec<[f64; 4]> = dz
        .iter()
        .map(|d| [0.0, 2.0 * (zeta.conj() * d).re, 2.0 * d.re, 2.0 * d.im])
        .collect();
    let f = |i: usize, j: usize| dk[i][j] - dk[j][i];
    let (a, b, e) = (0, 2, 3);
    kap[a] * f(b, e) + kap[b] * f(e, a) + kap[e] * f(a, b)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricImage {
    pub z: [Complex64; 3],
    pub residual: f64,
}

/// `h(Z, W) = i(Z1 W0bar - Z0 W1bar + Z2 W3bar - Z3 W2bar)`.
pub fn hermitian(z: &[Complex64; 4], w: &[Complex64; 4]) -> Complex64 {
    c(0.0, 1.0) * (z[1] * w[0].conj() - z[0] * w[1].conj() + z[2] * w[3].conj() - z[3] * w[2].conj())
}

pub fn quadric_image(p: &MinkowskiPoint, zeta: Complex64) -> QuadricImage {
    let z = twistor(p, zeta);
    let q = c(0.0, 1.0) * (z[0] - z[0].conj() + z[1] * z[2].conj() - z[2] * z[1].conj());
    QuadricImage { z, residual: q.norm() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeviClass {
    Flat,
    Nondegenerate,
    Mixed,
}

/// Counts of excluded samples by reason.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusions {
    pub near_infinity: usize,
    pub solve_failed: usize,
    pub branch_point: usize,
    /// Third-derivative estimate above [`THIRD_DERIV_MAX`].
    pub unresolved: usize,
}

impl Exclusions {
    pub fn total(&self) -> usize {
        self.near_infinity + self.solve_failed + self.branch_point + self.unresolved
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpticalReport {
    pub samples: usize,
    pub regular: usize,
    pub excluded: Exclusions,
    pub fd_step: f64,
    pub seed: u64,
    pub geodesic_residual: f64,
    pub shear_residual: f64,
    /// One value per regular sample, in sample order.
    pub twist: Vec<f64>,
    pub levi_class: LeviClass,
    pub quadric_residual: f64,
    /// `g(k, k)` and `k _| g - kappa`.
    pub null_residual: f64,
}

enum Skip {
    Infinity,
    Solve,
    Branch,
    Unresolved,
}

struct Sample {
    point: MinkowskiPoint,
    zeta: Complex64,
    dz: [Complex64; 4],
}

fn evaluate(spec: &CongruenceSpec, x: [f64; 4]) -> Result<Sample, Skip> {
    let p = MinkowskiPoint::from_coords(x);
    if p.v.abs() < MIN_ABS_V {
        return Err(Skip::Infinity);
    }
    let zeta = solve_zeta_any(spec, &p, None).map_err(|e| match e {
        KerrError::BranchPoint { .. } => Skip::Branch,
        _ => Skip::Solve,
    })?;
    if zeta.norm() > ZETA_MAX {
        return Err(Skip::Infinity);
    }
    if let Definition::Implicit(h) = &spec.definition {
        if restricted(h, &p, zeta).1.norm() < REGULAR_DERIV {
            return Err(Skip::Branch);
        }
    }
    let h = spec.fd_step;
    let mut dz = [c(0.0, 0.0); 4];
    let mut third = 0.0f64;
    for (i, d) in dz.iter_mut().enumerate() {
        let side = |s: f64| -> Result<Complex64, Skip> {
            let mut y = x;
            y[i] += s * h;
            let z = solve_zeta(spec, &MinkowskiPoint::from_coords(y), zeta).map_err(|_| Skip::Branch)?;
            if (z - zeta).norm() > BRANCH_JUMP * s.abs() * h {
                return Err(Skip::Branch);
            }
            Ok(z)
        };
        *d = (side(1.0)? - side(-1.0)?) / (2.0 * h);
        let wide = (side(2.0)? - side(-2.0)?) / (4.0 * h);
        third = third.max(2.0 * (wide - *d).norm() / (h * h));
    }
    if third > THIRD_DERIV_MAX {
        return Err(Skip::Unresolved);
    }
    Ok(Sample { point: p, zeta, dz })
}

/// Samples the box uniformly and evaluates the optical scalars in parallel.
pub fn optical_scalars(spec: &CongruenceSpec, samples: usize, seed: u64, cfg: &Config) -> Result<OpticalReport, KerrError> {
    if !(spec.fd_step > 0.0 && spec.fd_step.is_finite()) {
        return Err(KerrError::Input(format!("fd_step must be positive, got {}", spec.fd_step)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = spec.sample_domain;
    let points: Vec<[f64; 4]> = (0..samples)
        .map(|_| std::array::from_fn(|i| b.lo[i] + (b.hi[i] - b.lo[i]) * rng.gen::<f64>()))
        .collect();
    let results: Vec<Result<Sample, Skip>> = points.par_iter().map(|x| evaluate(spec, *x)).collect();
    let mut excluded = Exclusions::default();
    let (mut geo, mut shear, mut quad, mut null) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut tw = Vec::new();
    for r in results {
        match r {
            Err(Skip::Infinity) => excluded.near_infinity += 1,
            Err(Skip::Solve) => excluded.solve_failed += 1,
            Err(Skip::Branch) => excluded.branch_point += 1,
            Err(Skip::Unresolved) => excluded.unresolved += 1,
            Ok(s) => {
                geo = geo.max(geodesic(s.zeta, &s.dz).norm());
                shear = shear_form(&s.point, s.zeta, &s.dz).iter().map(|z| z.norm()).fold(shear, f64::max);
                quad = quad.max(quadric_image(&s.point, s.zeta).residual);
                null = null.max(null_residual(s.zeta));
                tw.push(twist(s.zeta, &s.dz));
            }
        }
    }
    if tw.is_empty() {
        return Err(KerrError::Input(format!("no regular samples among {samples}")));
    }
    Ok(OpticalReport {
        samples,
        regular: tw.len(),
        excluded,
        fd_step: spec.fd_step,
        seed,
        geodesic_residual: geo,
        shear_residual: shear,
        levi_class: classify(&tw, cfg.kerr_tol),
        twist: tw,
        quadric_residual: quad,
        null_residual: null,
    })
}

/// Sign pattern of the twist samples.
pub fn classify(twist: &[f64], tol: f64) -> LeviClass {
    let pos = twist.iter().filter(|t| **t > tol).count();
    let neg = twist.iter().filter(|t| **t < -tol).count();
    match (pos, neg) {
        (0, 0) => LeviClass::Flat,
        (p, 0) if p == twist.len() => LeviClass::Nondegenerate,
        (0, n) if n == twist.len() => LeviClass::Nondegenerate,
        _ => LeviClass::Mixed,
    }
}

#[cfg(test)]
mod tests {
    use super::super::congruence::{ExplicitZeta, SampleBox};
    use super::super::expr::HPoly;
    use super::*;

    fn implicit(src: &str) -> CongruenceSpec {
        CongruenceSpec::implicit(HPoly::parse(src).unwrap()).unwrap()
    }

    /// `dzeta = -(H1 dz1 + H2 dz2) / F'` with `dz1, dz2` taken at fixed `zeta`.
    fn implicit_gradient(h: &HPoly, p: &MinkowskiPoint, zeta: Complex64) -> [Complex64; 4] {
        let z = twistor(p, zeta);
        let (h1, h2) = (h.partial(0).eval(z), h.partial(1).eval(z));
        let fp = restricted(h, p, zeta).1;
        let dz1 = [c(1.0, 0.0), c(0.0, 0.0), zeta, c(0.0, -1.0) * zeta];
        let dz2 = [c(0.0, 0.0), zeta, c(1.0, 0.0), c(0.0, 1.0)];
        std::array::from_fn(|i| -(h1 * dz1[i] + h2 * dz2[i]) / fp)
    }

    #[test]
    fn kappa_is_dual_to_k() {
        for z in [c(0.0, 0.0), c(0.3, -1.2), c(2.0, 0.5)] {
            assert!(null_residual(z) < 1e-15);
            let k = null_vector(z);
            let e = eta(z);
            assert!((0..4).map(|i| e[i] * k[i]).sum::<Complex64>().norm() < 1e-15);
        }
    }

    #[test]
    fn fd_gradient_matches_implicit_derivative() {
        let spec = implicit("z1 z3 + (0.3-0.2i) z2^2 - 1 + 0.5i z3");
        let Definition::Implicit(h) = &spec.definition else { unreachable!() };
        let x = [0.2, 1.1, -0.3, 0.4];
        let s = evaluate(&spec, x).ok().unwrap();
        let exact = implicit_gradient(h, &s.point, s.zeta);
        for i in 0..4 {
            assert!((s.dz[i] - exact[i]).norm() < 1e-8, "{i}: {} vs {}", s.dz[i], exact[i]);
        }
        // the implicit derivative kills both conditions exactly
        assert!(geodesic(s.zeta, &exact).norm() < 1e-13);
        assert!(shear_form(&s.point, s.zeta, &exact).iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn constant_zeta_is_flat() {
        let cfg = Config::default();
        for spec in [implicit("z3 - (0.3+0.1i)"), CongruenceSpec::explicit(ExplicitZeta::Constant(c(0.3, 0.1)))] {
            let r = optical_scalars(&spec, 50, 0, &cfg).unwrap();
            assert!(r.geodesic_residual < 1e-9 && r.shear_residual < 1e-9, "{r:?}");
            assert!(r.twist.iter().all(|t| t.abs() < 1e-9));
            assert_eq!(r.levi_class, LeviClass::Flat);
            assert_eq!(r.regular, 50);
        }
    }

    #[test]
    fn z2_congruence_is_shear_free() {
        let cfg = Config::default();
        for spec in [implicit("z2"), CongruenceSpec::explicit(ExplicitZeta::MinusWOverV)] {
            let r = optical_scalars(&spec, 100, 3, &cfg).unwrap();
            assert!(r.geodesic_residual < 1e-6 && r.shear_residual < 1e-6, "{r:?}");
            assert_eq!(r.levi_class, LeviClass::Flat);
        }
    }

    #[test]
    fn twisting_congruence() {
        // zeta = (i - u) / wbar, the z1 = i congruence
        let r = optical_scalars(&implicit("z1 - i"), 100, 1, &Config::default()).unwrap();
        assert!(r.shear_residual < 1e-6 && r.geodesic_residual < 1e-6);
        assert_ne!(r.levi_class, LeviClass::Flat);
    }

    #[test]
    fn control_is_not_shear_free() {
        let spec = CongruenceSpec::explicit(ExplicitZeta::WbarOverV);
        let r = optical_scalars(&spec, 200, 0, &Config::default()).unwrap();
        // dzeta = dwbar / v - wbar dv / v^2 at the same points
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = spec.sample_domain;
        let mut exact = 0.0f64;
        for _ in 0..200 {
            let x: [f64; 4] = std::array::from_fn(|i| b.lo[i] + (b.hi[i] - b.lo[i]) * rng.gen::<f64>());
            let p = MinkowskiPoint::from_coords(x);
            let z = p.w.conj() / p.v;
            let dz = [c(0.0, 0.0), -z / p.v, c(1.0 / p.v, 0.0), c(0.0, -1.0 / p.v)];
            exact = shear_form(&p, z, &dz).iter().map(|z| z.norm()).fold(exact, f64::max);
        }
        assert!((r.shear_residual - exact).abs() < 1e-6 * exact);
        assert!((r.shear_residual - 23.66).abs() < 0.2 * 23.66, "{}", r.shear_residual);
    }

    #[test]
    fn halving_the_step_is_second_order() {
        let cfg = Config::default();
        for spec in [implicit("z2"), implicit("z1 - i"), implicit("z1 z3 + (0.3-0.2i) z2^2 - 1 + 0.5i z3")] {
            let a = optical_scalars(&spec.clone().with_step(1e-2), 100, 4, &cfg).unwrap();
            let b = optical_scalars(&spec.clone().with_step(5e-3), 100, 4, &cfg).unwrap();
            assert_eq!(a.regular, b.regular);
            assert!(a.shear_residual >= 3.0 * b.shear_residual, "{} {}", a.shear_residual, b.shear_residual);
            assert!(a.geodesic_residual >= 3.0 * b.geodesic_residual);
        }
    }

    #[test]
    fn quadric_identity() {
        let q = quadric_image(&MinkowskiPoint::new(1.0, 1.0, c(1.0, 1.0)), c(0.0, 1.0));
        assert_eq!(q.z, [c(2.0, 1.0), c(1.0, 2.0), c(0.0, 1.0)]);
        assert_eq!(q.residual, 0.0);
        let z = [c(1.0, 0.0), q.z[0], q.z[1], q.z[2]];
        assert_eq!(hermitian(&z, &z), c(0.0, 0.0));
    }

    #[test]
    fn near_infinity_is_excluded() {
        let spec = implicit("z2").with_box(SampleBox::new([-1.0, -0.5, -1.0, -1.0], [1.0, 0.5, 1.0, 1.0]).unwrap());
        let r = optical_scalars(&spec, 200, 0, &Config::default()).unwrap();
        assert!(r.excluded.near_infinity > 0);
        assert_eq!(r.regular + r.excluded.total(), 200);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&[0.0, 1e-9], 1e-6), LeviClass::Flat);
        assert_eq!(classify(&[-1.0, -2.0], 1e-6), LeviClass::Nondegenerate);
        assert_eq!(classify(&[1.0, -2.0], 1e-6), LeviClass::Mixed);
        assert_eq!(classify(&[1.0, 0.0], 1e-6), LeviClass::Mixed);
    }
}



