//! Connection forms, higher coefficients and the structure equations of a
//! homogeneous Levi-nondegenerate hypersurface with constant `A, B, C`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::config::Config;
use crate::exterior::{Form, FormParser, StructureTable};

use super::model::{catalog_space, ModelSpec};
use super::CatalogError;

/// The coframe structure `dkappa, deta` in terms of `A, B, C`.
pub const FSIXSE: [(&str, &str); 2] = [
    ("kappa", "i*eta^etabar - 2kappa^(Abar*eta + A*etabar)"),
    ("eta", "A*eta^etabar + i*kappa^(B*eta + C*etabar)"),
];

pub const ALPHA: &str = "-i*(A*Abar + 3/4*B)*kappa - 3Abar*eta + A*etabar";
pub const BETA: &str = "1/3*(A*B + 4Abar*C - 4A**2*Abar)*kappa + i*(1/4*B - A*Abar)*eta + i*C*etabar";
pub const SIGMA: &str = "(5/3*C*(A**2 + Abar**2) - 1/3*A**2*Abar**2 - 13/6*B*A*Abar + 1/16*B**2 - C**2)*kappa \
    + 1/6*(i*(10C*A - 5B*Abar - 4A*Abar**2)*eta + conj(i*(10C*A - 5B*Abar - 4A*Abar**2)*eta))";

/// Higher coefficients when `S = 1`.
pub const CURVED_COEFFS: [(&str, &str); 14] = [
    ("R", "C"),
    ("Q", "8A"),
    ("U", "-i*(2A*Abar + 3/2*B)"),
    ("V", "1/4*B - A*Abar"),
    ("W", "i/3*(B*Abar + 4C*A - 4A*Abar**2)"),
    ("R1p", "6C*A"),
    ("R1pp", "i*Abar*C*(4C - 10A**2) - 7i/2*A*B*C"),
    ("R0p", "0"),
    ("R0pp", "33C*A*Abar - 3/4*B*C"),
    ("Qp", "88A**2 - 5C"),
    ("U1p", "i/3*(20C*Abar - 49B*A - 92A**2*Abar)"),
    ("U2p", "8A**2*Abar**2 - 5/2*B**2 + 4C**2 - 1/3*C*(52A**2 + 20Abar**2)"),
    ("Vp", "-i*(9A**2*Abar**2 - 3/2*A*Abar*B - 1/3*C*(37A**2 + 5Abar**2) + 5/16*B**2 + C**2)"),
    ("Wp", "1/3*(4A*Abar*(5A*C - B*Abar - 4Abar*A*Abar) + 7A*B*C + 2Abar*(B**2 - 2C**2))"),
];

/// `(name, lhs, rhs, mod etabar)`; `lhs` is differentiated.
const THREE_CRSE: [(&str, &str, &str); 5] = [
    ("dkappa", "kappa", "i*eta^etabar - (alpha + conj(alpha))^kappa"),
    ("deta", "eta", "-beta^kappa - alpha^eta"),
    ("dalpha", "alpha", "-sigma^kappa - i*beta^etabar - 2i*conj(beta)^eta"),
    ("dbeta", "beta", "-sigma^eta + conj(alpha)^beta + S*kappa^etabar"),
    ("dsigma", "sigma", "(alpha + conj(alpha))^sigma + i*beta^conj(beta) + kappa^(P*etabar + conj(P)*eta)"),
];

const BIANCHI: [(&str, &str, &str); 2] = [
    ("dS", "S", "S*(3conj(alpha) + alpha) + U*kappa + P*eta + Q*etabar"),
    ("dP", "P", "P*(3conj(alpha) + 2alpha) - i*S*conj(beta) + W*kappa + R*eta + V*etabar"),
];

const HIGHER: [(&str, &str, &str, bool); 6] = [
    ("dR", "R", "R*(3conj(alpha) + 3alpha) + R0p*kappa + R1p*etabar + conj(R1p)*eta", false),
    ("dQ", "Q", "Q*(4conj(alpha) + alpha) - 5i*S*beta + U1p*kappa + (V - i*U)*eta + Qp*etabar", false),
    (
        "dU",
        "U",
        "U*(4conj(alpha) + 2alpha) + 4S*sigma + P*beta + Q*conj(beta) + W*eta + U1p*etabar + U2p*kappa",
        false,
    ),
    (
        "dV",
        "V",
        "V*(4conj(alpha) + 2alpha) - i*S*sigma - 4i*P*beta - i*Q*conj(beta) + (R1p - i*W)*eta + Vp*kappa",
        true,
    ),
    (
        "dW",
        "W",
        "W*(4conj(alpha) + 3alpha) + 5P*sigma + R*beta + (V - i*U)*conj(beta) + (R0p - i*S*conj(S))*eta \
         + Vp*etabar + Wp*kappa",
        false,
    ),
    ("dR1p", "R1p", "R1p*(4conj(alpha) + 3alpha) - 3i*R*beta + (R0pp - i/2*R0p)*eta + R1pp*kappa", true),
];

/// The coframe table `dkappa, deta` with symbolic `A, B, C`.
pub fn fsixse_table() -> StructureTable {
    let cs = catalog_space();
    let p = cs.parser();
    let mut t = StructureTable::new(&cs.space);
    for (g, rule) in FSIXSE {
        t.set_gen_conj(g, p.f(rule)).expect("static rule");
    }
    t
}

/// `alpha, beta, sigma` pulled back to the coframe.
#[derive(Clone, Debug)]
pub struct ConnectionForms {
    pub alpha: Form,
    pub beta: Form,
    pub sigma: Form,
}

pub fn connection_forms() -> ConnectionForms {
    let p = catalog_space().parser();
    ConnectionForms { alpha: p.f(ALPHA), beta: p.f(BETA), sigma: p.f(SIGMA) }
}

/// The `su(2,1)`-valued matrix assembled from `alpha, beta, sigma`.
pub fn gamma(c: &ConnectionForms) -> [[Form; 3]; 3] {
    let cs = catalog_space();
    let mut p = cs.parser();
    p.bind("alpha", c.alpha.clone()).bind("beta", c.beta.clone()).bind("sigma", c.sigma.clone());
    let text = [
        ["-1/3*(2alpha + conj(alpha))", "-i*conj(beta)", "-i*sigma"],
        ["eta", "1/3*(alpha - conj(alpha))", "i*beta"],
        ["-i*kappa", "etabar", "1/3*(alpha + 2conj(alpha))"],
    ];
    std::array::from_fn(|i| std::array::from_fn(|j| p.f(text[i][j])))
}

/// Entries of `conj(gamma)^t h + h gamma` with `h = [[0,0,-1],[0,1,0],[-1,0,0]]`.
pub fn gamma_algebra_residual(g: &[[Form; 3]; 3]) -> Vec<Form> {
    let h = [[0i64, 0, -1], [0, 1, 0], [-1, 0, 0]];
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Form::zero(g[0][0].space());
            for k in 0..3 {
                if h[k][j] != 0 {
                    acc = acc.add(&g[k][i].conj().scale_const(&h[k][j].into())).expect("same space");
                }
                if h[i][k] != 0 {
                    acc = acc.add(&g[k][j].scale_const(&h[i][k].into())).expect("same space");
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Higher coefficients as scalar forms; all zero when `flat`.
pub fn higher_coeffs(flat: bool) -> BTreeMap<&'static str, Form> {
    let cs = catalog_space();
    let p = cs.parser();
    CURVED_COEFFS
        .iter()
        .map(|&(k, v)| (k, if flat { Form::zero(&cs.space) } else { p.f(v) }))
        .collect()
}

/// A structure residual with symbolic `A, B, C, S`.
#[derive(Clone, Debug)]
pub struct StructureResidual {
    pub name: String,
    pub group: &'static str,
    pub residual: Form,
}

fn build_residuals(flat: bool) -> Vec<StructureResidual> {
    let cs = catalog_space();
    let table = fsixse_table();
    let conn = connection_forms();
    let mut p: FormParser = cs.parser();
    p.bind("alpha", conn.alpha).bind("beta", conn.beta).bind("sigma", conn.sigma);
    for (k, v) in higher_coeffs(flat) {
        p.bind(k, v);
    }
    if flat {
        p.bind("S", Form::zero(&cs.space));
    }
    p.bind("P", Form::zero(&cs.space));
    let etabar = cs.space.index("etabar").expect("generator");
    let mut out = Vec::new();
    let mut push = |name: &str, group: &'static str, lhs: &str, rhs: &str, mod_etabar: bool| {
        let l = table.d(&p.f(lhs)).expect("closed");
        let mut r = l.sub(&p.f(rhs)).expect("same space");
        if mod_etabar {
            r = r.modulo(&[etabar]);
        }
        out.push(StructureResidual { name: name.into(), group, residual: r });
    };
    for (n, l, r) in THREE_CRSE {
        push(n, "structure", l, r, false);
    }
    for (n, l, r) in BIANCHI {
        push(n, "bianchi", l, r, false);
    }
    for (n, l, r, m) in HIGHER {
        push(n, "higher", l, r, m);
    }
    out
}

/// Residuals for the flat (`S = 0`) or curved (`S = 1` in the coefficients) case.
pub fn structure_residuals(flat: bool) -> &'static [StructureResidual] {
    static FLAT: OnceLock<Vec<StructureResidual>> = OnceLock::new();
    static CURVED: OnceLock<Vec<StructureResidual>> = OnceLock::new();
    if flat {
        FLAT.get_or_init(|| build_residuals(true))
    } else {
        CURVED.get_or_init(|| build_residuals(false))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureCheck {
    pub name: String,
    pub group: String,
    pub residual: f64,
    /// Exactly zero after substitution.
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub label: String,
    pub checks: Vec<StructureCheck>,
    pub pass: bool,
}

/// Largest coefficient modulus of a form with numeric symbol values.
fn numeric_residual(f: &Form, vals: &[Complex64]) -> f64 {
    f.eval(vals).values().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Checks the structure equations, Bianchi identities and higher
/// coefficients at the constants of `spec`.
pub fn verify_structure(spec: &ModelSpec, cfg: &Config) -> Result<StructureReport, CatalogError> {
    let flat = spec.is_flat();
    if !flat && !spec.is_normalized_curved() && spec.label.as_str() != "VI_t,general" {
        return Err(CatalogError::Param("curved models must have S = 1".into()));
    }
    let residuals = structure_residuals(flat);
    let mut checks = Vec::new();
    let family = matches!(spec.label, super::Label::VItGeneral);
    for r in residuals {
        if family && r.group != "structure" {
            continue;
        }
        let (residual, exact) = if let Some(map) = spec.substitution() {
            let s = r.residual.substitute(&map)?;
            let scale = s.terms().flat_map(|(_, p)| p.terms().map(|(_, c)| c.to_c64().norm())).fold(0.0, f64::max);
            (scale, s.is_zero())
        } else {
            let vals = spec.numeric_values().expect("numeric model");
            (numeric_residual(&r.residual, &vals), false)
        };
        let pass = exact || residual <= cfg.catalog_tol;
        checks.push(StructureCheck { name: r.name.clone(), group: r.group.into(), residual, exact, pass });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(StructureReport { label: spec.label.as_str().into(), checks, pass })
}
