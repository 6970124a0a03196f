//! Levi-flat coframe over `H^2`, its structure equations and jet rules.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, MUTATION_FLOOR};
use crate::exterior::{pit, Form, FormParser, PitReport, Space, StructureTable, SymbolTable};
use crate::unitary_frames::{build_mu, mc_expand};

use super::LfError;

/// Sign of the split hyperquadric.
pub const EPSILON: i64 = -1;

pub const LF_GENERATORS: [&str; 10] =
    ["kappa", "eta", "etabar", "phi1", "phi1bar", "xi", "xibar", "lambda", "lambdabar", "psi"];

/// Jet symbols: `(name, complex)`.
pub const LF_JETS: [(&str, bool); 10] = [
    ("a", true),
    ("b", false),
    ("u0", false),
    ("u1", true),
    ("v0", false),
    ("v1", true),
    ("w0", false),
    ("w1", true),
    ("z0", false),
    ("z1", true),
];

/// Coframe `kappa, eta, phi1, xi, lambda, psi` with the jets, the renamed
/// imaginary parts `u, v, z`, the real part `x` of `z1` and `s2 = sqrt 2`.
pub fn lf_space() -> Arc<Space> {
    static CELL: OnceLock<Arc<Space>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut t = SymbolTable::new();
        for (s, complex) in LF_JETS {
            if complex {
                t.declare_complex_bar(s).expect("fresh");
            } else {
                t.declare_real(s).expect("fresh");
            }
        }
        for s in ["u", "v", "z", "x", "s2"] {
            t.declare_real(s).expect("fresh");
        }
        Space::builder(Arc::new(t))
            .real("kappa")
            .complex_bar("eta")
            .complex_bar("phi1")
            .complex_bar("xi")
            .complex_bar("lambda")
            .real("psi")
            .build()
            .expect("fresh")
    })
    .clone()
}

pub fn lf_parser() -> FormParser {
    FormParser::new(&lf_space())
}

/// The printed structure equations over `H^2`.
pub const LF_H2_MC: [(&str, &str); 6] = [
    ("kappa", "(lambda + lambdabar)^kappa"),
    ("eta", "-xi^kappa + 1/2*(phi1 + phi1bar + 3lambda - lambdabar)^eta - i/2*b*kappa^eta"),
    ("phi1", "-phi1^phi1bar + i*xi^etabar + i*xibar^eta - i*b*phi1^kappa - i*a*kappa^etabar + b*eta^etabar"),
    ("xi", "1/2*(phi1 + phi1bar + lambda - 3lambdabar)^xi + psi^eta + (i/2*b*xi - a*phi1bar)^kappa - i*b*phi1bar^eta"),
    ("lambda", "-psi^kappa + i*abar*kappa^eta - b*eta^etabar"),
    (
        "psi",
        "-(lambda + lambdabar)^psi + i*(a*xibar - abar*xi)^kappa - b*(xi^etabar + xibar^eta) \
         + b*kappa^(abar*eta + a*etabar) + i*b**2*eta^etabar",
    ),
];

/// `phi2` and `rho` in terms of the coframe and `a, b`.
pub const LF_II_COEFF: [(&str, &str); 2] =
    [("phi2", "-xi + a*kappa + i*b*eta"), ("rho", "i/2*(phi1 - phi1bar + lambda - lambdabar) + b/2*kappa")];

/// Printed jet rules, one per symbol with its own conjugate handled by
/// the table.
pub const LF_JET_RULES: [(&str, &str); 10] = [
    ("b", "-(phi1 + phi1bar + lambda + lambdabar)*b + u0*kappa"),
    ("a", "2i*xi*b - 1/2*(phi1 + phi1bar + lambda + 5lambdabar)*a + u1*kappa + (i*u0 + b**2)*eta"),
    (
        "u0",
        "-(phi1 + phi1bar + 2(lambda + lambdabar))*u0 - 2b*psi + i*b*(-b*phi1 + b*phi1bar) \
         + i*(-2abar*b*eta + 2a*b*etabar) + v0*kappa",
    ),
    (
        "u1",
        "3i*xi*u0 - 1/2*(phi1 + phi1bar + 3lambda + 7lambdabar)*u1 - 3a*psi + 2b**2*xi \
         + i*b*(-1/2*a*phi1 + 5/2*a*phi1bar) + i*(-a*abar*eta + 3a**2*etabar) \
         + v1*kappa + (i*v0 + 5/2*b*u0 - i/2*b**3)*eta",
    ),
    (
        "v0",
        "-(phi1 + phi1bar + 3(lambda + lambdabar))*v0 - 6u0*psi - 4i*abar*b*xi + 4i*a*b*xibar \
         + b*(b**2 - 3i*u0)*phi1 + b*(b**2 + 3i*u0)*phi1bar \
         - (4abar*b**2 + 5i*abar*u0 + 2i*b*u1bar)*eta - (4a*b**2 - 5i*a*u0 - 2i*b*u1)*etabar + w0*kappa",
    ),
    (
        "v1",
        "4i*xi*v0 - 1/2*(phi1 + phi1bar + 5lambda + 9lambdabar)*v1 - 8u1*psi \
         + (-3i/2*b**3 - 4i*a*abar + 8b*u0)*xi + 6i*a**2*xibar \
         + (1/2*a*(b**2 - i*u0) - i*b*u1)*phi1 + (1/2*a*(9b**2 + 11i*u0) + 3i*b*u1)*phi1bar \
         - (6a*abar*b + 3i*abar*u1 + i*a*u1bar)*eta - (5a**2*b - 10i*a*u1)*etabar \
         + w1*kappa + (i*w0 + 5/2*u0**2 + 3b*v0 - 11i/4*b**2*u0 - 1/4*b**4)*eta",
    ),
    (
        "w0",
        "-(phi1 + phi1bar + 4(lambda + lambdabar))*w0 \
         - (12v0*psi + (6abar*b**2 + 15i*abar*u0 + 6i*b*u1bar)*xi + (6a*b**2 - 15i*a*u0 - 6i*b*u1)*xibar) \
         + i*b*(4a*abar + b**3 - 4v0)*phi1 - i*b*(4a*abar + b**3 - 4v0)*phi1bar \
         + 3u0*(2b**2 - i*u0)*phi1 + 3u0*(2b**2 + i*u0)*phi1bar \
         - (3abar*b*(13/2*u0 - i*b**2) + u1bar*(5b**2 + 7i*u0) + 9i*abar*v0 + 2i*b*v1bar)*eta \
         - (3a*b*(13/2*u0 + i*b**2) + u1*(5b**2 - 7i*u0) - 9i*a*v0 - 2i*b*v1)*etabar + z0*kappa",
    ),
    (
        "w1",
        "5i*xi*w0 - 1/2*(phi1 + phi1bar + 7lambda + 11lambdabar)*w1 \
         - (15v1*psi + (b*(b**3 + 8a*abar - 13v0) + 5i*(3abar*u1 + a*u1bar + 9/4*b**2*u0) - 21/2*u0**2)*xi \
            + (8a**2*b - 30i*a*u1)*xibar) \
         + i*a*(6a*abar + 1/2*(b**3 - v0))*phi1 - i*a*(4a*abar + 6b**3 - 19/2*v0)*phi1bar \
         + 3/2*(b*(a*u0 + b*u1 - i*v1) - i*u0*u1)*phi1 + 1/2*(b*(45a*u0 + 15b*u1 + 7i*v1) + 17i*u0*u1)*phi1bar \
         - (1/2*(23a*abar*u0 + b*(37abar*u1 + 13a*u1bar)) + i*(6abar*v1 + a*v1bar + 4u1*u1bar))*eta \
         - (3a*b*(8u1 + i*a*b) + 11/2*a**2*u0 - 15i*a*v1 - 10i*u1**2)*etabar \
         + z1*kappa + (i*z0 - 27i/4*b*u0**2 + 8u0*v0 + 7/2*b*w0 + i/2*b**2*(15a*abar - 17/2*v0) \
            - 19/8*b**3*u0 + i/8*b**5)*eta",
    ),
    ("z0", ""),
    ("z1", ""),
];

/// Which generator rules to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LfRules {
    Printed,
    /// Pulled back from the trace-free Maurer-Cartan table.
    Derived,
}

/// Images of the trace-free coframe under `zeta = eta` and the second
/// fundamental form.
pub fn lf_images(p: &FormParser, mu_space: &Arc<Space>) -> Result<Vec<Form>, LfError> {
    let coeff: BTreeMap<&str, &str> = LF_II_COEFF.into_iter().collect();
    mu_space
        .names()
        .map(|g| {
            Ok(match g {
                "zeta" => p.parse("eta")?,
                "zetabar" => p.parse("etabar")?,
                "phi2" | "rho" => p.parse(coeff[g])?,
                "phi2bar" => p.parse(coeff["phi2"])?.conj(),
                _ => p.parse(g)?,
            })
        })
        .collect()
}

pub fn derived_lf_rules() -> Result<BTreeMap<String, Form>, LfError> {
    let mu = build_mu(EPSILON, true)?;
    let mc = mc_expand(&mu)?;
    let p = lf_parser();
    let images = lf_images(&p, &mu.space)?;
    let mut out = BTreeMap::new();
    for g in LF_GENERATORS {
        out.insert(g.to_string(), mc.table.gen_rule(g)?.pullback(&p.space, &images)?);
    }
    Ok(out)
}

/// Table with generator rules, jet rules through `w` and `z` open. A rule
/// may be replaced through `overrides`.
pub fn lf_table_with(rules: LfRules, overrides: &[(&str, &str)]) -> Result<StructureTable, LfError> {
    let p = lf_parser();
    let mut t = StructureTable::new(&p.space);
    let over: BTreeMap<&str, &str> = overrides.iter().copied().collect();
    let gens: Vec<(String, Form, bool)> = match rules {
        LfRules::Printed => LF_H2_MC.iter().map(|(g, r)| Ok((g.to_string(), p.parse(r)?, true))).collect::<Result<_, LfError>>()?,
        LfRules::Derived => derived_lf_rules()?.into_iter().map(|(g, r)| (g, r, false)).collect(),
    };
    for (g, r, conj) in gens {
        let r = match over.get(g.as_str()) {
            Some(src) => p.parse(src)?,
            None => r,
        };
        if conj {
            t.set_gen_conj(&g, r)?;
        } else {
            t.set_gen(&g, r)?;
        }
    }
    for (s, rule) in LF_JET_RULES {
        let complex = LF_JETS.iter().any(|(n, c)| *n == s && *c);
        if rule.is_empty() {
            t.mark_open(s)?;
            if complex {
                t.mark_open(&format!("{s}bar"))?;
            }
            continue;
        }
        let f = p.parse(over.get(s).copied().unwrap_or(rule))?;
        if complex {
            t.set_scalar_conj(s, f)?;
        } else {
            t.set_scalar(s, f)?;
        }
    }
    Ok(t)
}

pub fn lf_table(rules: LfRules) -> Result<StructureTable, LfError> {
    lf_table_with(rules, &[])
}

pub fn lf_table_cached(rules: LfRules) -> Result<&'static StructureTable, LfError> {
    static CELLS: OnceLock<[OnceLock<StructureTable>; 2]> = OnceLock::new();
    let cells = CELLS.get_or_init(Default::default);
    let i = usize::from(rules == LfRules::Derived);
    if let Some(t) = cells[i].get() {
        return Ok(t);
    }
    let t = lf_table(rules)?;
    Ok(cells[i].get_or_init(|| t))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LfCheck {
    pub name: String,
    pub max_rel: f64,
    pub max_abs: f64,
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LfClosureReport {
    pub rules: LfRules,
    pub checks: Vec<LfCheck>,
    /// Rules not checked because they need undeclared differentials.
    pub cut: Vec<String>,
    pub pass: bool,
}

fn lf_check(name: &str, f: &Form, cfg: &Config) -> LfCheck {
    let r = pit(f, &cfg.seeds, &BTreeMap::new());
    let exact = f.is_zero();
    LfCheck { name: name.into(), max_rel: r.max_rel, max_abs: r.max_abs, exact, pass: exact || r.passes(cfg.pit_tol) }
}

/// `d^2 = 0` on every rule, the conjugation coherence of every rule, and
/// the consistency of `d(phi2), d(zeta - eta), d(rho)` with the
/// Maurer-Cartan table.
pub fn lf_verify_closure_with(table: &StructureTable, rules: LfRules, cfg: &Config) -> Result<LfClosureReport, LfError> {
    let p = lf_parser();
    let d2 = table.check_d_squared()?;
    let mut checks: Vec<LfCheck> = d2.entries.par_iter().map(|e| lf_check(&format!("d2_{}", e.name), &e.residual, cfg)).collect();
    let s = &p.space;
    for i in 0..s.len() {
        let j = s.conj(i);
        if j != i {
            let r = table.gen_rule(s.name(j))?.sub(&table.gen_rule(s.name(i))?.conj())?;
            checks.push(lf_check(&format!("conj_{}", s.name(i)), &r, cfg));
        } else {
            let r = table.gen_rule(s.name(i))?;
            checks.push(lf_check(&format!("real_{}", s.name(i)), &r.sub(&r.conj())?, cfg));
        }
    }
    for (sym, complex) in LF_JETS {
        let Some(rule) = table.scalar_rule(sym) else { continue };
        let r = if complex {
            match table.scalar_rule(&format!("{sym}bar")) {
                Some(c) => c.sub(&rule.conj())?,
                None => continue,
            }
        } else {
            rule.sub(&rule.conj())?
        };
        checks.push(lf_check(&format!("conj_d{sym}"), &r, cfg));
    }
    let mu = build_mu(EPSILON, true)?;
    let mc = mc_expand(&mu)?;
    let images = lf_images(&p, &mu.space)?;
    for (g, img) in [("zeta", "eta"), ("phi2", LF_II_COEFF[0].1), ("rho", LF_II_COEFF[1].1)] {
        let lhs = table.d(&p.parse(img)?)?;
        let rhs = mc.table.gen_rule(g)?.pullback(s, &images)?;
        checks.push(lf_check(&format!("adapted_d{g}"), &lhs.sub(&rhs)?, cfg));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(LfClosureReport { rules, checks, cut: d2.skipped.clone(), pass })
}

pub fn lf_verify_closure(rules: LfRules, cfg: &Config) -> Result<LfClosureReport, LfError> {
    lf_verify_closure_with(lf_table_cached(rules)?, rules, cfg)
}

/// The `d(lambda)` rule without its `-b eta^etabar` term.
pub const MUTATED_DLAMBDA: &str = "-psi^kappa + i*abar*kappa^eta";

/// `d^2 lambda` with the mutated rule; detection means a residual above the floor.
pub fn lf_mutation_control(cfg: &Config) -> Result<(PitReport, bool), LfError> {
    let t = lf_table_with(LfRules::Printed, &[("lambda", MUTATED_DLAMBDA)])?;
    let p = lf_parser();
    let r = t.d(&t.d(&p.parse("lambda")?)?)?;
    let rep = pit(&r, &cfg.seeds, &BTreeMap::new());
    let detected = rep.max_abs > MUTATION_FLOOR;
    Ok((rep, detected))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_rules_equal_printed() {
        let p = lf_parser();
        let d = derived_lf_rules().unwrap();
        for (g, r) in LF_H2_MC {
            assert!(d[g].sub(&p.f(r)).unwrap().is_zero(), "d{g}");
        }
    }

    #[test]
    fn both_rule_sets_close() {
        for rules in [LfRules::Printed, LfRules::Derived] {
            let rep = lf_verify_closure(rules, &Config::default()).unwrap();
            let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
            assert!(rep.pass, "{rules:?}: {failed:?}");
            assert!(rep.checks.iter().any(|c| c.name == "adapted_dphi2"));
            assert!(rep.checks.iter().any(|c| c.name == "d2_lambda"));
        }
    }

    #[test]
    fn mutation_is_detected() {
        let (rep, detected) = lf_mutation_control(&Config::default()).unwrap();
        assert!(detected, "{rep:?}");
        let t = lf_table_cached(LfRules::Printed).unwrap();
        let p = lf_parser();
        assert!(t.d(&t.d(&p.f("lambda")).unwrap()).unwrap().is_zero());
    }
}
