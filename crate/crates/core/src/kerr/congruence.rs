//! Null coordinates, congruence specifications and the implicit solve for `zeta`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{NEWTON_MAX_ITER, NEWTON_MIN_DERIV, NEWTON_TOL};

use super::expr::HPoly;
use super::KerrError;

/// `u = x0 - x3`, `v = x0 + x3`, `w = x1 + i x2`; `g = du dv - dw dwbar`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiPoint {
    pub u: f64,
    pub v: f64,
    pub w: Complex64,
}

impl MinkowskiPoint {
    pub fn new(u: f64, v: f64, w: Complex64) -> Self {
        MinkowskiPoint { u, v, w }
    }

    /// `(u, v, Re w, Im w)`.
    pub fn coords(&self) -> [f64; 4] {
        [self.u, self.v, self.w.re, self.w.im]
    }

    pub fn from_coords(x: [f64; 4]) -> Self {
        MinkowskiPoint { u: x[0], v: x[1], w: Complex64::new(x[2], x[3]) }
    }

    /// `(x0, x1, x2, x3)`.
    pub fn standard(&self) -> [f64; 4] {
        [(self.u + self.v) / 2.0, self.w.re, self.w.im, (self.v - self.u) / 2.0]
    }

    pub fn from_standard(x: [f64; 4]) -> Self {
        MinkowskiPoint { u: x[0] - x[3], v: x[0] + x[3], w: Complex64::new(x[1], x[2]) }
    }
}

/// Closed-form `zeta` fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExplicitZeta {
    Constant(Complex64),
    /// `-w / v`, the solution of `z2 = 0`.
    MinusWOverV,
    /// `conj(w) / v`, not holomorphic in `z1, z2, z3`.
    WbarOverV,
}

impl ExplicitZeta {
    pub fn eval(&self, p: &MinkowskiPoint) -> Complex64 {
        match *self {
            ExplicitZeta::Constant(c) => c,
            ExplicitZeta::MinusWOverV => -p.w / p.v,
            ExplicitZeta::WbarOverV => p.w.conj() / p.v,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Definition {
    Implicit(HPoly),
    Explicit(ExplicitZeta),
}

/// Closed box in `(u, v, Re w, Im w)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub lo: [f64; 4],
    pub hi: [f64; 4],
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox { lo: [-1.0, 0.5, -1.0, -1.0], hi: [1.0, 1.5, 1.0, 1.0] }
    }
}

impl SampleBox {
    pub fn new(lo: [f64; 4], hi: [f64; 4]) -> Result<Self, KerrError> {
        if lo.iter().zip(&hi).any(|(a, b)| !(a.is_finite() && b.is_finite() && a <= b)) {
            return Err(KerrError::Input("box bounds must be finite with lo <= hi".into()));
        }
        Ok(SampleBox { lo, hi })
    }

    /// Parses `u0,u1,v0,v1,x0,x1,y0,y1`.
    pub fn parse(src: &str) -> Result<Self, KerrError> {
        let v: Vec<f64> = src
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| KerrError::Input(format!("bad box entry {s:?}"))))
            .collect::<Result<_, _>>()?;
        if v.len() != 8 {
            return Err(KerrError::Input("box needs 8 numbers: u0,u1,v0,v1,rew0,rew1,imw0,imw1".into()));
        }
        SampleBox::new([v[0], v[2], v[4], v[6]], [v[1], v[3], v[5], v[7]])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceSpec {
    pub definition: Definition,
    pub sample_domain: SampleBox,
    pub fd_step: f64,
}

impl CongruenceSpec {
    pub fn implicit(h: HPoly) -> Result<Self, KerrError> {
        if h.is_constant() {
            return Err(KerrError::Input("H must not be constant".into()));
        }
        Ok(CongruenceSpec { definition: Definition::Implicit(h), sample_domain: SampleBox::default(), fd_step: crate::config::FD_STEP })
    }

    pub fn explicit(z: ExplicitZeta) -> Self {
        CongruenceSpec { definition: Definition::Explicit(z), sample_domain: SampleBox::default(), fd_step: crate::config::FD_STEP }
    }

    pub fn with_box(mut self, b: SampleBox) -> Self {
        self.sample_domain = b;
        self
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.fd_step = h;
        self
    }
}

/// `(z1, z2, z3) = (u + zeta wbar, w + zeta v, zeta)`.
pub fn twistor(p: &MinkowskiPoint, zeta: Complex64) -> [Complex64; 3] {
    [p.u + zeta * p.w.conj(), p.w + zeta * p.v, zeta]
}

/// `F(zeta) = H(twistor)` and `F'(zeta)`.
pub fn restricted(h: &HPoly, p: &MinkowskiPoint, zeta: Complex64) -> (Complex64, Complex64) {
    let z = twistor(p, zeta);
    let f = h.eval(z);
    let d = h.partial(0).eval(z) * p.w.conj() + h.partial(1).eval(z) * p.v + h.partial(2).eval(z);
    (f, d)
}

/// Newton iteration for `H(u + zeta wbar, w + zeta v, zeta) = 0`.
pub fn solve_zeta(spec: &CongruenceSpec, p: &MinkowskiPoint, guess: Complex64) -> Result<Complex64, KerrError> {
    let h = match &spec.definition {
        Definition::Explicit(z) => return Ok(z.eval(p)),
        Definition::Implicit(h) => h,
    };
    let mut z = guess;
    for _ in 0..NEWTON_MAX_ITER {
        let (f, d) = restricted(h, p, z);
        if f.norm() < NEWTON_TOL {
            return Ok(polish(h, p, z));
        }
        if d.norm() < NEWTON_MIN_DERIV {
            return Err(KerrError::BranchPoint { point: *p, zeta: z });
        }
        z -= f / d;
        if !z.is_finite() {
            break;
        }
    }
    let (f, _) = restricted(h, p, z);
    if f.norm() < NEWTON_TOL {
        return Ok(z);
    }
    Err(KerrError::NoConvergence { point: *p, residual: f.norm() })
}

/// Extra Newton steps past the tolerance while the residual keeps dropping.
fn polish(h: &HPoly, p: &MinkowskiPoint, mut z: Complex64) -> Complex64 {
    let (mut f, mut d) = restricted(h, p, z);
    for _ in 0..3 {
        if f.norm() == 0.0 || d.norm() < NEWTON_MIN_DERIV {
            break;
        }
        let next = z - f / d;
        let (nf, nd) = restricted(h, p, next);
        if nf.norm() >= f.norm() {
            break;
        }
        (z, f, d) = (next, nf, nd);
    }
    z
}

/// Starting points tried in order after the caller's guess.
pub const GUESSES: [(f64, f64); 7] = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (2.0, 2.0), (-2.0, -2.0)];

/// First root reached from `guess` or one of [`GUESSES`].
pub fn solve_zeta_any(spec: &CongruenceSpec, p: &MinkowskiPoint, guess: Option<Complex64>) -> Result<Complex64, KerrError> {
    let mut last = None;
    for g in guess.into_iter().chain(GUESSES.iter().map(|&(a, b)| Complex64::new(a, b))) {
        match solve_zeta(spec, p, g) {
            Ok(z) => return Ok(z),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one guess"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_roots() {
        let p = MinkowskiPoint::new(0.4, 1.3, c(0.2, -0.7));
        let s = CongruenceSpec::implicit(HPoly::parse("z3 - (0.3+0.1i)").unwrap()).unwrap();
        assert!((solve_zeta(&s, &p, c(0.0, 0.0)).unwrap() - c(0.3, 0.1)).norm() < 1e-14);
        let s = CongruenceSpec::implicit(HPoly::parse("z2").unwrap()).unwrap();
        let q = MinkowskiPoint::new(0.0, 2.0, c(1.0, 1.0));
        assert!((solve_zeta(&s, &q, c(0.0, 0.0)).unwrap() - c(-0.5, -0.5)).norm() < 1e-14);
        let s = CongruenceSpec::implicit(HPoly::parse("z1 - i").unwrap()).unwrap();
        let q = MinkowskiPoint::new(0.2, 1.0, c(1.0, 0.0));
        assert!((solve_zeta(&s, &q, c(0.0, 0.0)).unwrap() - c(-0.2, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn solve_failures() {
        assert!(CongruenceSpec::implicit(HPoly::parse("2").unwrap()).is_err());
        // F = zeta^2 + 1 has F' = 0 at the start
        let s = CongruenceSpec::implicit(HPoly::parse("z3^2 + 1").unwrap()).unwrap();
        let p = MinkowskiPoint::new(0.0, 1.0, c(0.0, 0.0));
        assert!(matches!(solve_zeta(&s, &p, c(0.0, 0.0)), Err(KerrError::BranchPoint { .. })));
        assert!((solve_zeta_any(&s, &p, None).unwrap().powu(2) + 1.0).norm() < 1e-12);
        // real start on a real polynomial with complex roots never leaves the real line
        let p2 = MinkowskiPoint::new(0.0, 1.0, c(0.0, 0.0));
        assert!(matches!(solve_zeta(&s, &p2, c(0.3, 0.0)), Err(KerrError::NoConvergence { .. })));
    }

    #[test]
    fn coordinates_round_trip() {
        let p = MinkowskiPoint::new(0.4, 1.3, c(0.2, -0.7));
        let q = MinkowskiPoint::from_standard(p.standard());
        assert!((q.u - p.u).abs() < 1e-15 && (q.v - p.v).abs() < 1e-15 && q.w == p.w);
        assert_eq!(SampleBox::parse("-1,1,0.5,1.5,-1,1,-1,1").unwrap(), SampleBox::default());
        assert!(SampleBox::parse("1,0,0,1,0,1,0,1").is_err());
    }
}
