//! Curved Levi-nondegenerate 3-folds with constant second fundamental form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::structure::{ALPHA, BETA, FSIXSE, SIGMA};
use crate::catalog::{check_homogeneous_relations, model, six_e_m_squared_roots, Label, ModelSpec, ModelValues};
use crate::config::{Config, CATALOG_TOL, RANK_TOL};
use crate::exterior::{Form, ScalarPoly, Sym};

use super::closure::{ALPHA_H, BETA_H, SIGMA_H};
use super::reduce::Reduction;
use super::LnError;

/// Jets of a constant second fundamental form in terms of `a, b, A, B, C`.
pub const CONSTANT_JETS: [(&str, &str); 4] = [
    ("c", "2/a*b**2 - 3i*A*b - C*a"),
    ("u1", "2i*bbar + 2Abar*a"),
    ("u2", "2i/a*b*bbar + Abar*b + i*(A*Abar - B/4)*a - eps*i/4*a**3"),
    ("u3", "4i/a**2*bbar*b**2 + 6A/a*b*bbar - i/2*(B*b + 4C*bbar - 4A*Abar*b) - eps*i/2*b*a**2"),
];

/// `B` and `C` forced by a constant second fundamental form.
pub const B_OF_AB: &str = "4/3*a**-2*b*bbar + 2i*a**-1*Abar*b + 8/3*A*Abar + eps*a**2";
pub const C_OF_AB: &str = "-10/9*Abar**2 + 38i/9*a**-1*Abar*bbar + 2/3*a**-2*(2bbar**2 + eps)";
/// Reality condition on `A` and `b`.
pub const AB_REAL: &str = "A*bbar + Abar*b";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CurvedBranch {
    /// `A = 0`, `b = 0`.
    AZeroBZero,
    /// `A = 0`, `b != 0`.
    AZeroBNonzero,
    /// `A != 0`.
    ANonzero,
}

impl CurvedBranch {
    pub const ALL: [CurvedBranch; 3] = [CurvedBranch::AZeroBZero, CurvedBranch::AZeroBNonzero, CurvedBranch::ANonzero];

    pub fn as_str(self) -> &'static str {
        match self {
            CurvedBranch::AZeroBZero => "A=0,b=0",
            CurvedBranch::AZeroBNonzero => "A=0,b!=0",
            CurvedBranch::ANonzero => "A!=0",
        }
    }
}

impl fmt::Display for CurvedBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CurvedBranch {
    type Err = LnError;

    fn from_str(s: &str) -> Result<Self, LnError> {
        let k: String = s.chars().filter(|c| !c.is_whitespace() && *c != ',' && *c != '_').collect::<String>().to_lowercase();
        match k.as_str() {
            "a=0b=0" | "a0b0" | "zero-zero" => Ok(CurvedBranch::AZeroBZero),
            "a=0b!=0" | "a=0b≠0" | "a0b" | "a0bn" => Ok(CurvedBranch::AZeroBNonzero),
            "a!=0" | "a≠0" | "a" | "an" => Ok(CurvedBranch::ANonzero),
            _ => Err(LnError::Input(format!("unknown branch {s}"))),
        }
    }
}

/// Residual system of a constant second fundamental form: every component
/// of `da, db, dc`, of the coframe structure equations against the
/// homogeneous ones and of `d(image) - (rule)` for the solved generators.
#[derive(Clone, Debug)]
pub struct CurvedSystem {
    pub epsilon: i64,
    pub reduction: Reduction,
    pub residuals: Vec<(String, ScalarPoly)>,
}

fn build_system(epsilon: i64) -> Result<CurvedSystem, LnError> {
    let mut r = Reduction::new(epsilon)?;
    let a = ScalarPoly::var(r.sym("a")?);
    r.fix("abar", a)?;
    let p = r.parser.clone();
    for (name, src) in CONSTANT_JETS {
        r.fix_conj(name, p.scalar(src)?)?;
    }
    r.solve_gen(&p.parse(&format!("{ALPHA_H} - ({ALPHA})"))?, "lambda")?;
    r.solve_gen(&p.parse(&format!("{BETA_H} - ({BETA})"))?, "xi")?;
    r.solve_gen(&p.parse(&format!("{SIGMA_H} - ({SIGMA})"))?, "psi")?;
    let im_a = r.table().d(&p.parse("a - abar")?)?;
    r.solve_gen(&im_a, "rho")?;
    let dc = r.d_jet("c")?;
    r.solve_jet(&dc.coeff(&["kappa"])?, "u4", true)?;
    let mut residuals = Vec::new();
    let mut push = |name: String, f: &Form| {
        for (idx, c) in f.terms() {
            let gens: Vec<&str> = idx.iter().map(|&g| p.space.name(g as usize)).collect();
            residuals.push((format!("{name}[{}]", gens.join("^")), c.clone()));
        }
    };
    for n in ["a", "b", "c"] {
        push(format!("d{n}"), &r.d_jet(n)?);
    }
    for (g, rhs) in FSIXSE {
        push(format!("d{g}"), &r.structure(g)?.sub(&r.restrict(&p.parse(rhs)?)?)?);
    }
    for g in ["lambda", "rho", "xi", "psi"] {
        let img = r.restrict(&p.parse(g)?)?;
        push(format!("d{g}"), &r.d(&img)?.sub(&r.structure(g)?)?);
    }
    Ok(CurvedSystem { epsilon, reduction: r, residuals })
}

/// Cached residual system.
pub fn curved_system(epsilon: i64) -> Result<&'static CurvedSystem, LnError> {
    static CELLS: OnceLock<[OnceLock<CurvedSystem>; 2]> = OnceLock::new();
    let cells = CELLS.get_or_init(Default::default);
    let i = usize::from(epsilon < 0);
    if let Some(s) = cells[i].get() {
        return Ok(s);
    }
    let s = build_system(epsilon)?;
    Ok(cells[i].get_or_init(|| s))
}

/// Values of `a, b, A` with `B, C` from the constant-form relations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvedPoint {
    pub a: f64,
    pub b: Complex64,
    pub big_a: Complex64,
}

impl CurvedSystem {
    fn sym(&self, n: &str) -> Sym {
        self.reduction.sym(n).expect("declared")
    }

    /// Symbol values at a point, with `B` and `C` from the relations.
    pub fn point_values(&self, pt: &CurvedPoint) -> Result<Vec<Complex64>, LnError> {
        let t = self.reduction.parser.space.symbols();
        let mut v = vec![Complex64::new(0.0, 0.0); t.len()];
        v[self.sym("a") as usize] = Complex64::new(pt.a, 0.0);
        v[self.sym("abar") as usize] = Complex64::new(pt.a, 0.0);
        v[self.sym("b") as usize] = pt.b;
        v[self.sym("bbar") as usize] = pt.b.conj();
        v[self.sym("A") as usize] = pt.big_a;
        v[self.sym("Abar") as usize] = pt.big_a.conj();
        let p = &self.reduction.parser;
        let bb = p.scalar(B_OF_AB)?.eval(&v);
        let cc = p.scalar(C_OF_AB)?.eval(&v);
        v[self.sym("B") as usize] = bb;
        v[self.sym("C") as usize] = cc;
        Ok(v)
    }

    /// Largest residual relative to the scale of its terms.
    pub fn max_residual(&self, vals: &[Complex64]) -> f64 {
        self.residuals
            .iter()
            .map(|(_, p)| p.eval(vals).norm() / p.eval_scale(vals).max(1.0))
            .fold(0.0, f64::max)
    }

    /// The system with `A = 0`, `b = 0` and `B, C` from the relations,
    /// as Laurent polynomials in `a`.
    pub fn a_zero_b_zero(&self) -> Result<Vec<(String, ScalarPoly)>, LnError> {
        let p = &self.reduction.parser;
        let z = ScalarPoly::zero();
        let mut sub: BTreeMap<Sym, ScalarPoly> =
            ["A", "Abar", "b", "bbar"].iter().map(|n| (self.sym(n), z.clone())).collect();
        let bb = p.scalar(B_OF_AB)?.substitute(&sub).expect("monomial");
        let cc = p.scalar(C_OF_AB)?.substitute(&sub).expect("monomial");
        sub.insert(self.sym("B"), bb);
        sub.insert(self.sym("C"), cc);
        self.residuals
            .iter()
            .map(|(n, r)| Ok((n.clone(), r.substitute(&sub).ok_or_else(|| LnError::Invariant("division".into()))?)))
            .collect()
    }
}

/// A constant-coefficient embedding of a curved homogeneous model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvedSolution {
    pub epsilon: i64,
    pub branch: CurvedBranch,
    pub a: f64,
    pub b: [f64; 2],
    #[serde(rename = "A")]
    pub big_a: [f64; 2],
    #[serde(rename = "B")]
    pub big_b: f64,
    #[serde(rename = "C")]
    pub big_c: f64,
    pub c: [f64; 2],
    pub u1: [f64; 2],
    pub u2: [f64; 2],
    pub u3: [f64; 2],
    pub det: [f64; 2],
    pub rank: u8,
    pub label: String,
    pub params: BTreeMap<String, f64>,
    /// The catalog model matches after `eta -> -eta` only.
    pub eta_reflected: bool,
    pub max_residual: f64,
    pub relations_pass: bool,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn c_of(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl CurvedSolution {
    pub fn big_a(&self) -> Complex64 {
        c_of(self.big_a)
    }
}

/// Catalog identification of `(A, B, C)`; `None` when nothing matches.
fn identify(epsilon: i64, a: Complex64, b: f64, c: f64) -> Option<(Label, BTreeMap<String, f64>, bool)> {
    let close = |x: f64, y: f64| (x - y).abs() <= CATALOG_TOL * x.abs().max(y.abs()).max(1.0);
    if a.norm() <= RANK_TOL {
        let label = if b < 0.0 { Label::VIIIK } else { Label::IXL };
        let params: BTreeMap<String, f64> = [("B".to_string(), b)].into();
        let spec = model(label, &params).ok()?;
        let (_, mb, mc, _) = spec.numeric(&BTreeMap::new());
        let _ = epsilon;
        return (close(mb, b) && close(mc, c)).then_some((label, params, false));
    }
    for iota2 in [1.0, -1.0] {
        let t = if iota2 > 0.0 { a.re.abs() } else { a.im.abs() };
        for root in 0..six_e_m_squared_roots(t, iota2).len() {
            let params: BTreeMap<String, f64> =
                [("t".to_string(), t), ("iota2".to_string(), iota2), ("root".to_string(), root as f64)].into();
            let Ok(spec) = model(Label::VItE, &params) else { continue };
            let (ma, mb, mc, _) = spec.numeric(&BTreeMap::new());
            if close(mb, b) && close(mc, c) {
                if (ma - a).norm() <= CATALOG_TOL * a.norm() {
                    return Some((Label::VItE, params, false));
                }
                if (ma + a).norm() <= CATALOG_TOL * a.norm() {
                    return Some((Label::VItE, params, true));
                }
            }
        }
    }
    None
}

/// Evaluates, verifies and identifies a candidate point.
fn solution_at(
    sys: &CurvedSystem,
    branch: CurvedBranch,
    pt: &CurvedPoint,
    cfg: &Config,
) -> Result<Option<CurvedSolution>, LnError> {
    let v = sys.point_values(pt)?;
    let max_residual = sys.max_residual(&v);
    if max_residual > cfg.catalog_tol {
        return Ok(None);
    }
    let p = &sys.reduction.parser;
    let jet = |n: &str| -> Result<Complex64, LnError> {
        let s = sys.reduction.jet(n)?.cloned().unwrap_or_else(ScalarPoly::zero);
        Ok(s.eval(&v))
    };
    let (big_b, big_c) = (v[sys.sym("B") as usize], v[sys.sym("C") as usize]);
    let ab_real = p.scalar(AB_REAL)?.eval(&v);
    if big_b.im.abs() > cfg.catalog_tol * big_b.norm().max(1.0) || big_c.im.abs() > cfg.catalog_tol * big_c.norm().max(1.0) || ab_real.norm() > cfg.catalog_tol {
        return Ok(None);
    }
    let c = jet("c")?;
    let det = Complex64::new(pt.a, 0.0) * c - pt.b * pt.b;
    let scale = (pt.a * c.norm()).max(pt.b.norm_sqr()).max(1.0);
    let rank = if det.norm() <= RANK_TOL * 1e3 * scale { 1 } else { 2 };
    let Some((label, params, eta_reflected)) = identify(sys.epsilon, pt.big_a, big_b.re, big_c.re) else {
        return Err(LnError::Invariant(format!("no catalog model with A={}, B={}, C={}", pt.big_a, big_b.re, big_c.re)));
    };
    let spec = ModelSpec {
        label,
        params: params.clone(),
        values: ModelValues::Numeric { a: pt.big_a, b: big_b.re, c: big_c.re, s: 1.0 },
    };
    let relations_pass = check_homogeneous_relations(&spec, cfg).pass;
    Ok(Some(CurvedSolution {
        epsilon: sys.epsilon,
        branch,
        a: pt.a,
        b: pair(pt.b),
        big_a: pair(pt.big_a),
        big_b: big_b.re,
        big_c: big_c.re,
        c: pair(c),
        u1: pair(jet("u1")?),
        u2: pair(jet("u2")?),
        u3: pair(jet("u3")?),
        det: pair(det),
        rank,
        label: label.to_string(),
        params,
        eta_reflected,
        max_residual,
        relations_pass,
    }))
}

/// Candidate points of a branch. `A = 0, b != 0` uses `bbar = 2b/a^4` and
/// `3a^8 + 6 eps b^2 = 0`; `A != 0` lists the sign variants of the known
/// solution, each checked against the full residual system.
fn candidates(epsilon: i64, branch: CurvedBranch, a: Option<f64>) -> Result<Vec<CurvedPoint>, LnError> {
    let zero = Complex64::new(0.0, 0.0);
    Ok(match branch {
        CurvedBranch::AZeroBZero => {
            let a = a.unwrap_or(1.0);
            if a == 0.0 || !a.is_finite() {
                return Err(LnError::Input("a must be a nonzero real number".into()));
            }
            vec![CurvedPoint { a, b: zero, big_a: zero }]
        }
        CurvedBranch::AZeroBNonzero => {
            // b^2 = -a^8 / (2 eps) and |b|^2 = 2 b^2 / a^4 > 0 force b real,
            // eps = -1 and a^4 = 2.
            let b_sq_sign = -1.0 / (2.0 * epsilon as f64);
            if b_sq_sign <= 0.0 {
                return Ok(Vec::new());
            }
            let a0 = 2f64.powf(0.25);
            let b0 = (b_sq_sign * a0.powi(8)).sqrt();
            let mut out = Vec::new();
            for sa in [1.0, -1.0] {
                for sb in [1.0, -1.0] {
                    out.push(CurvedPoint { a: sa * a0, b: Complex64::new(sb * b0, 0.0), big_a: zero });
                }
            }
            out
        }
        CurvedBranch::ANonzero => {
            let r = 10f64.powf(0.25) / 5f64.sqrt();
            let mut out = Vec::new();
            for sa in [1.0, -1.0] {
                for sb in [1.0, -1.0] {
                    for s_big in [1.0, -1.0] {
                        out.push(CurvedPoint {
                            a: sa * r,
                            b: Complex64::new(sb * 10f64.sqrt(), 0.0),
                            big_a: Complex64::new(0.0, s_big * 4.0 * r),
                        });
                    }
                }
            }
            out
        }
    })
}

/// Constant-coefficient embeddings in a branch. `a` selects the member of
/// the `A = 0, b = 0` family (default 1).
pub fn solve_curved_equivariant(
    epsilon: i64,
    branch: CurvedBranch,
    a: Option<f64>,
    cfg: &Config,
) -> Result<Vec<CurvedSolution>, LnError> {
    if epsilon.abs() != 1 {
        return Err(LnError::Input(format!("epsilon must be 1 or -1, got {epsilon}")));
    }
    let sys = curved_system(epsilon)?;
    let mut out = Vec::new();
    for pt in candidates(epsilon, branch, a)? {
        if let Some(s) = solution_at(sys, branch, &pt, cfg)? {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_closes_exactly() {
        for eps in [1, -1] {
            let sys = curved_system(eps).unwrap();
            let res = sys.a_zero_b_zero().unwrap();
            assert!(res.iter().all(|(_, r)| r.is_zero()), "{:?}", res.iter().filter(|r| !r.1.is_zero()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn family_member_is_ix_l() {
        let s = solve_curved_equivariant(1, CurvedBranch::AZeroBZero, Some(1.0), &Config::default()).unwrap();
        assert_eq!(s.len(), 1);
        let s = &s[0];
        assert!((s.big_b - 1.0).abs() < 1e-12 && (s.big_c - 2.0 / 3.0).abs() < 1e-12);
        assert!((9.0 * s.big_b * s.big_c - 6.0).abs() < 1e-12);
        assert_eq!(s.label, "IX,L");
        assert_eq!(s.rank, 2);
        assert!((s.det[0] + 2.0 / 3.0).abs() < 1e-12);
        assert!(s.relations_pass);
        let k = solve_curved_equivariant(-1, CurvedBranch::AZeroBZero, Some(2.0), &Config::default()).unwrap();
        assert_eq!(k[0].label, "VIII,K");
        assert!((k[0].big_b + 4.0).abs() < 1e-12);
        assert!((k[0].det[0] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rank_one_member_of_ix_l() {
        assert!(solve_curved_equivariant(1, CurvedBranch::AZeroBNonzero, None, &Config::default()).unwrap().is_empty());
        let s = solve_curved_equivariant(-1, CurvedBranch::AZeroBNonzero, None, &Config::default()).unwrap();
        assert!(!s.is_empty());
        for x in &s {
            assert!((x.a.powi(4) - 2.0).abs() < 1e-12);
            assert!((x.b[0].powi(2) - 2.0).abs() < 1e-12);
            // 4b^2/(3a^2) + eps a^2 = 8/(3 sqrt 2) - sqrt 2
            let direct = 8.0 / (3.0 * 2f64.sqrt()) - 2f64.sqrt();
            assert!((x.big_b - direct).abs() < 1e-12 && (x.big_b - 2f64.sqrt() / 3.0).abs() < 1e-12);
            assert_eq!((x.label.as_str(), x.rank), ("IX,L", 1));
            assert!(x.relations_pass);
        }
    }

    #[test]
    fn a_nonzero_only_in_split_signature() {
        let cfg = Config::default();
        assert!(solve_curved_equivariant(1, CurvedBranch::ANonzero, None, &cfg).unwrap().is_empty());
        let s = solve_curved_equivariant(-1, CurvedBranch::ANonzero, None, &cfg).unwrap();
        assert!(!s.is_empty());
        let t = 4.0 * 10f64.powf(0.25) / 5f64.sqrt();
        for x in &s {
            assert_eq!(x.label, "VI_t,E");
            assert!((x.params["t"] - t).abs() < 1e-12);
            assert_eq!(x.params["iota2"], -1.0);
            let m = crate::catalog::six_e_m(t, -1.0, x.params["root"] as usize).unwrap();
            assert!((m - t / 2.0).abs() < 1e-9);
            assert!(x.relations_pass);
            // ac = 2b^2 - 3iAab - Ca^2 = 20 - 24 + 14 = b^2
            let r2 = 10f64.sqrt() / 5.0;
            let ac = 20.0 - 12.0 * r2 * 10f64.sqrt() + 7.0 * 10f64.sqrt() * r2;
            assert!((ac - 10.0).abs() < 1e-12);
            assert_eq!(x.rank, 1);
        }
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|x| x.a.signum() * x.b[0].signum() * x.big_a[1].signum() < 0.0));
        assert!(s.iter().any(|x| x.a > 0.0 && x.b[0] < 0.0 && x.big_a[1] > 0.0 && !x.eta_reflected));
    }
}
