//! The Cartan connection over `H^2` and the closure checks that tie the
//! curvature evaluators to the structure equations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, MUTATION_FLOOR};
use crate::exterior::{pit, Form, FormParser, PitReport};

use super::coeffs::{Mutation, SPR};
use super::jet::{h2_table_cached, parser, H2Rules};
use super::LnError;

pub const ALPHA_H: &str = "i*rho - lambda - eps*i/4*a*abar*kappa";
pub const BETA_H: &str = "xi - eps*(i*abar*b + 1/6*a*u1bar)*kappa - eps*i/4*a*abar*eta";
pub const SIGMA_H: &str = "-psi + (9/16*a**2*abar**2 + eps*(3i/4*(a*u2bar - abar*u2) - 3b*bbar - 1/6*u1*u1bar))*kappa \
    - eps/12*(6a*bbar + i*abar*u1)*eta - eps/12*(6abar*b - i*a*u1bar)*etabar";

/// `alpha, beta, sigma` over `H^2`.
#[derive(Clone, Debug)]
pub struct GammaForms {
    pub alpha: Form,
    pub beta: Form,
    pub sigma: Form,
}

pub fn gamma_from_mu(epsilon: i64) -> Result<GammaForms, LnError> {
    let p = parser(epsilon);
    Ok(GammaForms { alpha: p.parse(ALPHA_H)?, beta: p.parse(BETA_H)?, sigma: p.parse(SIGMA_H)? })
}

/// Structure equations, Bianchi identities and higher derivatives as
/// `(name, group, lhs, rhs, mod etabar)`.
const IDENTITIES: [(&str, &str, &str, &str, bool); 13] = [
    ("dkappa", "structure", "kappa", "i*eta^etabar - (alpha + conj(alpha))^kappa", false),
    ("deta", "structure", "eta", "-beta^kappa - alpha^eta", false),
    ("dalpha", "structure", "alpha", "-sigma^kappa - i*beta^etabar - 2i*conj(beta)^eta", false),
    ("dbeta", "structure", "beta", "-sigma^eta + conj(alpha)^beta + S*kappa^etabar", false),
    ("dsigma", "structure", "sigma", "(alpha + conj(alpha))^sigma + i*beta^conj(beta) + kappa^(P*etabar + conj(P)*eta)", false),
    ("dS", "bianchi", "S", "S*(3conj(alpha) + alpha) + U*kappa + P*eta + Q*etabar", false),
    ("dP", "bianchi", "P", "P*(3conj(alpha) + 2alpha) - i*S*conj(beta) + W*kappa + R*eta + V*etabar", false),
    ("dR", "higher", "R", "R*(3conj(alpha) + 3alpha) + R0p*kappa + R1p*etabar + conj(R1p)*eta", false),
    ("dQ", "higher", "Q", "Q*(4conj(alpha) + alpha) - 5i*S*beta + U1p*kappa + (V - i*U)*eta + Qp*etabar", false),
    (
        "dU",
        "higher",
        "U",
        "U*(4conj(alpha) + 2alpha) + 4S*sigma + P*beta + Q*conj(beta) + W*eta + U1p*etabar + U2p*kappa",
        false,
    ),
    (
        "dV",
        "higher",
        "V",
        "V*(4conj(alpha) + 2alpha) - i*S*sigma - 4i*P*beta - i*Q*conj(beta) + (R1p - i*W)*eta + Vp*kappa",
        true,
    ),
    (
        "dW",
        "higher",
        "W",
        "W*(4conj(alpha) + 3alpha) + 5P*sigma + R*beta + (V - i*U)*conj(beta) + (R0p - i*S*conj(S))*eta + Vp*etabar + Wp*kappa",
        false,
    ),
    ("dR1p", "higher", "R1p", "R1p*(4conj(alpha) + 3alpha) - 3i*R*beta + (R0pp - i/2*R0p)*eta + R1pp*kappa", true),
];

pub fn identity_names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|i| i.0).collect()
}

/// Parser with the connection and every curvature coefficient bound.
fn bound_parser(epsilon: i64, coeffs: &BTreeMap<&'static str, Form>) -> Result<FormParser, LnError> {
    let g = gamma_from_mu(epsilon)?;
    let mut p = parser(epsilon);
    p.bind("alpha", g.alpha).bind("beta", g.beta).bind("sigma", g.sigma);
    for (k, v) in coeffs {
        p.bind(k, v.clone());
    }
    Ok(p)
}

/// Residual form `d(lhs) - rhs` of a named identity.
pub fn identity_residual(
    epsilon: i64,
    rules: H2Rules,
    name: &str,
    coeffs: &BTreeMap<&'static str, Form>,
) -> Result<Form, LnError> {
    let (_, _, lhs, rhs, mod_etabar) =
        IDENTITIES.iter().find(|i| i.0 == name).ok_or_else(|| LnError::Input(format!("unknown identity {name}")))?;
    let table = h2_table_cached(epsilon, rules)?;
    let p = bound_parser(epsilon, coeffs)?;
    let r = table.d(&p.parse(lhs)?)?.sub(&p.parse(rhs)?)?;
    Ok(if *mod_etabar { r.modulo(&[p.space.index("etabar")?]) } else { r })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureCheck {
    pub name: String,
    pub group: String,
    pub max_rel: f64,
    pub max_abs: f64,
    /// The residual form is identically zero.
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LnClosureReport {
    pub epsilon: i64,
    pub checks: Vec<ClosureCheck>,
    /// Rules not checked for `d^2 = 0` because they need undeclared differentials.
    pub cut: Vec<String>,
    pub pass: bool,
}

fn check(name: &str, group: &str, f: &Form, cfg: &Config) -> ClosureCheck {
    let r = pit(f, &cfg.seeds, &BTreeMap::new());
    let exact = f.is_zero();
    ClosureCheck { name: name.into(), group: group.into(), max_rel: r.max_rel, max_abs: r.max_abs, exact, pass: exact || r.passes(cfg.pit_tol) }
}

/// `d^2 = 0` on the `H^2` table, then every structure identity with the
/// curvature evaluators substituted.
pub fn verify_closure_ln(epsilon: i64, rules: H2Rules, cfg: &Config) -> Result<LnClosureReport, LnError> {
    let table = h2_table_cached(epsilon, rules)?;
    let mut checks = Vec::new();
    let d2 = table.check_d_squared()?;
    for e in &d2.entries {
        checks.push(check(&format!("d2_{}", e.name), "d_squared", &e.residual, cfg));
    }
    let coeffs = super::coeffs::curvature_from_jet_symbolic(epsilon)?;
    let ids: Vec<ClosureCheck> = IDENTITIES
        .par_iter()
        .map(|(name, group, ..)| {
            let r = identity_residual(epsilon, rules, name, &coeffs)?;
            Ok(check(name, group, &r, cfg))
        })
        .collect::<Result<_, LnError>>()?;
    checks.extend(ids);
    let pass = checks.iter().all(|c| c.pass);
    Ok(LnClosureReport { epsilon, checks, cut: d2.skipped.clone(), pass })
}

/// Result of perturbing one evaluator entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MutationOutcome {
    pub evaluator: String,
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub identity: String,
    pub max_abs: f64,
    pub detected: bool,
}

/// Perturbs entries of the `S` and `P` rows of the first evaluator and
/// reports whether the `dbeta`/`dsigma` identities notice.
pub fn mutation_controls(epsilon: i64, count: usize, cfg: &Config) -> Result<Vec<MutationOutcome>, LnError> {
    let base = super::coeffs::curvature_from_jet_symbolic(epsilon)?;
    let candidates: Vec<Mutation> = SPR.entries().into_iter().filter(|m| m.row < 2).collect();
    let step = (candidates.len() / count.max(1)).max(1);
    let chosen: Vec<Mutation> = candidates.into_iter().step_by(step).take(count).collect();
    chosen
        .par_iter()
        .map(|m| {
            let mut coeffs = base.clone();
            coeffs.extend(SPR.evaluate(epsilon, Some(*m))?);
            let identity = if m.row == 0 { "dbeta" } else { "dsigma" };
            let r = identity_residual(epsilon, H2Rules::Derived, identity, &coeffs)?;
            let rep = pit(&r, &cfg.seeds, &BTreeMap::new());
            Ok(MutationOutcome {
                evaluator: SPR.name.into(),
                block: m.block,
                row: m.row,
                col: m.col,
                identity: identity.into(),
                max_abs: rep.max_abs,
                detected: rep.max_abs > MUTATION_FLOOR,
            })
        })
        .collect()
}

/// `dbeta` residual with `S` replaced by `S + 1`.
pub fn shifted_s_control(epsilon: i64, cfg: &Config) -> Result<PitReport, LnError> {
    let mut coeffs = super::coeffs::curvature_from_jet_symbolic(epsilon)?;
    let p = parser(epsilon);
    let s = coeffs["S"].add(&p.parse("1")?)?;
    coeffs.insert("S", s);
    let r = identity_residual(epsilon, H2Rules::Derived, "dbeta", &coeffs)?;
    Ok(pit(&r, &cfg.seeds, &BTreeMap::new()))
}
