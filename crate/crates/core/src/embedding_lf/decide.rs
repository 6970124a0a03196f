//! Homogeneous Levi-flat models in `SU(2,2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Config;
use crate::exterior::Form;

use super::rank1::{lf_rank1_reduce, RankOneReduction};
use super::rank2::{lf_rank2_generic, lf_rank2_h3, RankTwoGeneric};
use super::state::LfJetState;
use super::table::lf_parser;
use super::LfError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum LfCase {
    /// `II = 0`, the parabolic `R`.
    #[serde(rename = "1")]
    FlagStabilizer,
    /// Rank one, `R^2` extended by `cbrt 3 diag(1, -1)`.
    #[serde(rename = "2")]
    CubeRootExtension,
    /// Rank two, `sl2R + su(p,q)`.
    #[serde(rename = "3")]
    Product { p: u8, q: u8 },
    /// Rank two, `R^2` extended by `diag(1, 2)`.
    #[serde(rename = "4")]
    DiagExtension,
    #[serde(rename = "not homogeneous")]
    NotHomogeneous,
}

impl LfCase {
    pub fn number(self) -> Option<u8> {
        match self {
            LfCase::FlagStabilizer => Some(1),
            LfCase::CubeRootExtension => Some(2),
            LfCase::Product { .. } => Some(3),
            LfCase::DiagExtension => Some(4),
            LfCase::NotHomogeneous => None,
        }
    }
}

impl fmt::Display for LfCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LfCase::FlagStabilizer => f.write_str("case 1: II = 0, parabolic subgroup R"),
            LfCase::CubeRootExtension => f.write_str("case 2: R^2 extended by cbrt(3) diag(1,-1)"),
            LfCase::Product { p, q } => write!(f, "case 3: sl2R + su({p},{q})"),
            LfCase::DiagExtension => f.write_str("case 4: R^2 extended by diag(1,2)"),
            LfCase::NotHomogeneous => f.write_str("not homogeneous"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LfClassification {
    pub case: LfCase,
    pub rank_ii: u8,
    pub description: String,
    /// Values of the invariant differentials at the state.
    pub residuals: BTreeMap<String, f64>,
    pub witness: Value,
    pub note: Option<String>,
}

fn rank_one() -> Result<&'static RankOneReduction, LfError> {
    static CELL: OnceLock<RankOneReduction> = OnceLock::new();
    if let Some(r) = CELL.get() {
        return Ok(r);
    }
    let r = lf_rank1_reduce()?;
    Ok(CELL.get_or_init(|| r))
}

fn rank_two() -> Result<&'static RankTwoGeneric, LfError> {
    static CELL: OnceLock<RankTwoGeneric> = OnceLock::new();
    if let Some(r) = CELL.get() {
        return Ok(r);
    }
    let r = lf_rank2_generic(&lf_rank2_h3()?)?;
    Ok(CELL.get_or_init(|| r))
}

fn need(state: &LfJetState, name: &str, why: &str) -> Result<Complex64, LfError> {
    state.value(name).ok_or_else(|| LfError::Input(format!("{name} is required {why}")))
}

fn optional(state: &LfJetState, name: &str) -> Complex64 {
    state.value(name).unwrap_or_default()
}

/// Largest coefficient of `f` at the assignment.
fn max_coeff(f: &Form, vals: &[Complex64]) -> f64 {
    f.eval(vals).values().map(|c| c.norm()).fold(0.0, f64::max)
}

fn assignment(pairs: &[(&str, Complex64)]) -> Result<Vec<Complex64>, LfError> {
    let p = lf_parser();
    let t = p.space.symbols();
    let mut vals = vec![Complex64::new(0.0, 0.0); t.len()];
    for (n, v) in pairs {
        let s = t.get(n)?;
        vals[s as usize] = *v;
        let c = t.conj(s);
        if c != s {
            vals[c as usize] = v.conj();
        }
    }
    Ok(vals)
}

fn build(case: LfCase, rank: u8, residuals: BTreeMap<String, f64>, witness: Value, note: Option<String>) -> LfClassification {
    LfClassification { case, rank_ii: rank, description: case.to_string(), residuals, witness, note }
}

/// Case of a Levi-flat state in the normalizations of the reductions:
/// rank one with `a = 1`, `u1 = i u`, `z1 = x + i z`; rank two with
/// `b = +-1`, `u1 in {0, 1}`, `v1 = i v`.
pub fn lf_decide_homogeneous(state: &LfJetState, cfg: &Config) -> Result<LfClassification, LfError> {
    state.validate()?;
    let b = need(state, "b", "to read the rank of II")?;
    let tol = cfg.rank_tol.max(cfg.catalog_tol);
    let small = |z: Complex64| z.norm() <= tol;
    if !small(b) {
        return rank_two_case(state, b.re, tol);
    }
    let a = need(state, "a", "when b = 0")?;
    if small(a) {
        return Ok(build(LfCase::FlagStabilizer, 0, BTreeMap::new(), json!({"a": 0, "b": 0}), Some("orbit of the parabolic subgroup".into())));
    }
    let u = need(state, "u", "on the rank-one branch")?.re;
    let z = optional(state, "z").re;
    let red = rank_one()?;
    let vals = assignment(&[("u", Complex64::new(u, 0.0)), ("z", Complex64::new(z, 0.0))])?;
    let du = max_coeff(&red.derived["du"], &vals);
    let residuals: BTreeMap<String, f64> = [("du".to_string(), du)].into();
    let case = if du <= tol { LfCase::CubeRootExtension } else { LfCase::NotHomogeneous };
    Ok(build(case, 1, residuals, json!({"u": u, "z": z, "u_model": 3f64.powf(-1.0 / 3.0)}), None))
}

fn rank_two_case(state: &LfJetState, b: f64, tol: f64) -> Result<LfClassification, LfError> {
    if (b.abs() - 1.0).abs() > tol {
        return Err(LfError::Input(format!("b must be normalized to 1 or -1, got {b}")));
    }
    let b = b.signum();
    let note = (!state.get("a").is_zero() && state.value("a").is_some())
        .then(|| "a is normalized to 0 on the rank-two bundle; the given value is ignored".to_string());
    let u1 = need(state, "u1", "on the rank-two branch")?;
    if u1.norm() <= tol {
        let (p, q) = if b > 0.0 { (2, 0) } else { (1, 1) };
        return Ok(build(LfCase::Product { p, q }, 2, BTreeMap::new(), json!({"b": b, "u1": 0}), note));
    }
    if (u1 - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(LfError::Input("u1 must be normalized to 0 or 1".into()));
    }
    let v0 = need(state, "v0", "when u1 = 1")?.re;
    let v = need(state, "v", "when u1 = 1")?.re;
    let w0 = optional(state, "w0").re;
    let w1 = optional(state, "w1");
    let g = rank_two()?;
    let c = |x: f64| Complex64::new(x, 0.0);
    let vals = assignment(&[("b", c(b)), ("v0", c(v0)), ("v", c(v)), ("w0", c(w0)), ("w1", w1)])?;
    let mut residuals = BTreeMap::new();
    residuals.insert("dv0".to_string(), max_coeff(&g.derived["dv0"], &vals));
    residuals.insert("dv".to_string(), max_coeff(&g.derived["dv"], &vals));
    // kappa^eta coefficient of deta; the model has none
    residuals.insert("b+v".to_string(), (b + v).abs());
    let case = if residuals.values().all(|r| *r <= tol) { LfCase::DiagExtension } else { LfCase::NotHomogeneous };
    let flip = if v0 < 0.0 { "eta -> -eta" } else { "none" };
    Ok(build(case, 2, residuals, json!({"b": b, "v0": v0, "v": v, "w0": w0, "sign_flip": flip}), note))
}
