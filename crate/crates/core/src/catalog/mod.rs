//! The catalog of homogeneous Levi-nondegenerate CR 3-folds.

pub mod model;
pub mod structure;

pub use model::{catalog_space, model, six_e_m, six_e_m_squared_roots, CatalogSpace, Label, ModelSpec, ModelValues};
pub use structure::{
    connection_forms, fsixse_table, gamma, gamma_algebra_residual, higher_coeffs, verify_structure, ConnectionForms,
    StructureCheck, StructureReport,
};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::config::Config;
use crate::exterior::{ExteriorError, FormParser, ScalarPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("parameter error: {0}")]
    Param(String),
    #[error("relations fail: {0}")]
    Relations(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// The three algebraic relations on `A, B, C, S`.
pub const RELATIONS: [(&str, &str); 3] = [
    ("B_real", "B - conj(B)"),
    ("AB_eq_AbarC", "A*B - Abar*C"),
    ("hidden", "40A**3*Abar - 10A**2*B - 28A*Abar*C + 9B*C - 6S"),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub residual: f64,
    pub exact: bool,
    /// Residual polynomial for symbolic families.
    pub polynomial: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub label: String,
    pub constants: BTreeMap<String, String>,
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
}

fn relation_polys() -> Vec<(&'static str, ScalarPoly)> {
    let p: FormParser = catalog_space().parser();
    RELATIONS.iter().map(|&(n, s)| (n, p.scalar(s).expect("static relation"))).collect()
}

pub fn check_homogeneous_relations(spec: &ModelSpec, cfg: &Config) -> RelationReport {
    let table = catalog_space().space.symbols().clone();
    let mut checks = Vec::new();
    for (name, poly) in relation_polys() {
        let check = if let Some(map) = spec.substitution() {
            let r = poly.substitute(&map).expect("monomial inverses only");
            let residual = r.terms().map(|(_, c)| c.to_c64().norm()).fold(0.0, f64::max);
            let exact = r.is_zero();
            let polynomial = matches!(spec.values, ModelValues::Symbolic { .. }).then(|| r.display(&table));
            RelationCheck { name: name.into(), residual, exact, polynomial, pass: exact }
        } else {
            let vals = spec.numeric_values().expect("numeric model");
            let residual = poly.eval(&vals).norm();
            RelationCheck { name: name.into(), residual, exact: false, polynomial: None, pass: residual <= cfg.catalog_tol }
        };
        checks.push(check);
    }
    let pass = checks.iter().all(|c| c.pass);
    RelationReport { label: spec.label.as_str().into(), constants: spec.constants(), checks, pass }
}

/// `alpha, beta, sigma` at the constants of `spec`, refused when the relations fail.
pub fn connection_forms_for(spec: &ModelSpec, cfg: &Config) -> Result<ConnectionForms, CatalogError> {
    let rel = check_homogeneous_relations(spec, cfg);
    if !rel.pass {
        let bad: Vec<String> = rel.checks.iter().filter(|c| !c.pass).map(|c| format!("{}={:e}", c.name, c.residual)).collect();
        return Err(CatalogError::Relations(bad.join(", ")));
    }
    let c = connection_forms();
    match spec.substitution() {
        Some(map) => Ok(ConnectionForms {
            alpha: c.alpha.substitute(&map)?,
            beta: c.beta.substitute(&map)?,
            sigma: c.sigma.substitute(&map)?,
        }),
        None => Ok(c),
    }
}

/// Every label with default parameters, plus sample values for families.
pub fn default_models() -> Vec<ModelSpec> {
    let p = |kv: &[(&str, f64)]| kv.iter().map(|&(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>();
    let mut out = Vec::new();
    for l in Label::ALL {
        let params = match l {
            Label::VIItH => p(&[("t", 1.0)]),
            Label::VItE => p(&[("t", 2.0)]),
            _ => BTreeMap::new(),
        };
        out.push(model(l, &params).expect("default parameters are admissible"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::GaussRat;

    fn params(kv: &[(&str, f64)]) -> BTreeMap<String, f64> {
        kv.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn every_default_model_satisfies_relations() {
        let cfg = Config::default();
        for m in default_models() {
            let r = check_homogeneous_relations(&m, &cfg);
            assert!(r.pass, "{}: {:?}", m.label, r.checks);
        }
    }

    #[test]
    fn curved_families_at_samples() {
        let cfg = Config::default();
        for t in [0.3, 0.7, 1.0, 2.5, 10.0] {
            let h = model(Label::VIItH, &params(&[("t", t)])).unwrap();
            assert!(check_homogeneous_relations(&h, &cfg).pass);
            assert!(verify_structure(&h, &cfg).unwrap().pass);
        }
        for (t, i2) in [(0.5, 1.0), (2.0, 1.0), (5.0, 1.0), (3.0f64.sqrt() * 2.5, -1.0), (4.0, -1.0)] {
            let e = model(Label::VItE, &params(&[("t", t), ("iota2", i2)])).unwrap();
            assert!(check_homogeneous_relations(&e, &cfg).pass, "t={t}");
            assert!(verify_structure(&e, &cfg).unwrap().pass, "t={t}");
        }
    }

    #[test]
    fn mutated_constants_fail() {
        let cfg = Config::default();
        let mut m = model(Label::VIIIK, &params(&[("B", -2.0)])).unwrap();
        if let ModelValues::Exact { c, .. } = &mut m.values {
            *c = GaussRat::ratio(-1, 2);
        }
        assert!(!check_homogeneous_relations(&m, &cfg).pass);
        assert!(!verify_structure(&m, &cfg).unwrap().pass);
        assert!(connection_forms_for(&m, &cfg).is_err());
    }

    #[test]
    fn symbolic_families_vanish_identically() {
        let cfg = Config::default();
        for i2 in [1.0, -1.0] {
            let g = model(Label::VItGeneral, &params(&[("iota2", i2)])).unwrap();
            let r = check_homogeneous_relations(&g, &cfg);
            assert!(r.checks.iter().all(|c| c.exact), "{:?}", r.checks);
            assert!(verify_structure(&g, &cfg).unwrap().checks.iter().all(|c| c.exact));
        }
        for l in [Label::VIIIK, Label::IXL] {
            let k = model(l, &BTreeMap::new()).unwrap();
            assert!(check_homogeneous_relations(&k, &cfg).pass);
            let s = verify_structure(&k, &cfg).unwrap();
            assert!(s.checks.iter().all(|c| c.exact), "{:?}", s.checks);
        }
    }

    #[test]
    fn connection_examples() {
        let cfg = Config::default();
        let cs = catalog_space();
        let p = cs.parser();
        let c = connection_forms_for(&model(Label::VIIIC, &BTreeMap::new()).unwrap(), &cfg).unwrap();
        assert_eq!(c.alpha, p.f("3i/4*kappa"));
        assert_eq!(c.beta, p.f("-i/4*eta"));
        assert_eq!(c.sigma, p.f("1/16*kappa"));
        let a = connection_forms_for(&model(Label::IIA, &BTreeMap::new()).unwrap(), &cfg).unwrap();
        assert!(a.alpha.is_zero() && a.beta.is_zero() && a.sigma.is_zero());
        let l = connection_forms_for(&model(Label::IXL, &BTreeMap::new()).unwrap(), &cfg).unwrap();
        assert_eq!(l.beta, p.f("i*B/4*eta + 2i/3*B**-1*etabar"));
    }
}
