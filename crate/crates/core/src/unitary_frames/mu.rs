//! The Maurer-Cartan matrix of `U(3-d,1+d)` and its structure equations.

use std::sync::Arc;

use crate::exterior::{ExteriorError, Form, FormParser, GaussRat, Space, StructureTable, SymbolTable};

use super::hermitian::HermitianForm;
use super::FramesError;

pub const GENERATORS: [&str; 16] = [
    "kappa", "eta", "etabar", "zeta", "zetabar", "lambda", "lambdabar", "rho", "tau", "xi", "xibar", "phi1",
    "phi1bar", "phi2", "phi2bar", "psi",
];

/// Builds the coframe space of `mu`; without `tau` when `trace_free`.
pub fn mu_space(trace_free: bool) -> Arc<Space> {
    let mut b = Space::builder(Arc::new(SymbolTable::new()))
        .real("kappa")
        .complex_bar("eta")
        .complex_bar("zeta")
        .complex_bar("lambda")
        .real("rho");
    if !trace_free {
        b = b.real("tau");
    }
    b.complex_bar("xi").complex_bar("phi1").complex_bar("phi2").real("psi").build().expect("static generator list")
}

#[derive(Clone, Debug)]
pub struct MuMatrix {
    pub epsilon: i64,
    pub trace_free: bool,
    pub space: Arc<Space>,
    pub entries: [[Form; 4]; 4],
}

const MU_TEXT: [[&str; 4]; 4] = [
    ["lambda", "-i*xibar", "-i*phi2bar", "psi"],
    ["eta", "i*rho", "-phi1bar", "xi"],
    ["zeta", "eps*phi1", "i*TAU", "eps*phi2"],
    ["kappa", "i*etabar", "eps*i*zetabar", "-lambdabar"],
];

impl MuMatrix {
    pub fn parser(&self) -> FormParser {
        FormParser::new(&self.space).with_const("eps", self.epsilon)
    }
}

fn check_eps(epsilon: i64) -> Result<(), FramesError> {
    if epsilon == 1 || epsilon == -1 {
        Ok(())
    } else {
        Err(FramesError::Input(format!("epsilon must be +1 or -1, got {epsilon}")))
    }
}

pub fn build_mu(epsilon: i64, trace_free: bool) -> Result<MuMatrix, FramesError> {
    check_eps(epsilon)?;
    let space = mu_space(trace_free);
    let p = FormParser::new(&space).with_const("eps", epsilon);
    let tau = if trace_free { "(-rho + i*lambda - i*lambdabar)" } else { "tau" };
    let entries = std::array::from_fn(|i| std::array::from_fn(|j| p.f(&MU_TEXT[i][j].replace("TAU", tau))));
    Ok(MuMatrix { epsilon, trace_free, space, entries })
}

fn mat_wedge(a: &[[Form; 4]; 4], b: &[[Form; 4]; 4]) -> Result<[[Form; 4]; 4], ExteriorError> {
    let space = a[0][0].space().clone();
    let mut out: [[Form; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Form::zero(&space)));
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] = out[i][j].add(&a[i][k].wedge(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

/// `conj(mu)^t h + h mu` as a matrix of forms.
pub fn algebra_residual(mu: &MuMatrix, h: &HermitianForm) -> Result<[[Form; 4]; 4], ExteriorError> {
    let s = &mu.space;
    let hm: [[Form; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| Form::constant(s, h.matrix.0[i][j].clone())));
    let adj: [[Form; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| mu.entries[j][i].conj()));
    let a = mat_wedge(&adj, &hm)?;
    let b = mat_wedge(&hm, &mu.entries)?;
    let mut out = a.clone();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i][j].add(&b[i][j])?;
        }
    }
    Ok(out)
}

pub fn trace(mu: &MuMatrix) -> Result<Form, ExteriorError> {
    (0..4).try_fold(Form::zero(&mu.space), |acc, i| acc.add(&mu.entries[i][i]))
}

/// Structure table read off from `d mu = -mu ^ mu`, with per-entry
/// consistency residuals.
#[derive(Clone, Debug)]
pub struct McExpansion {
    pub table: StructureTable,
    /// `d(mu_ij) + (mu ^ mu)_ij` computed from the table, per entry.
    pub entry_residuals: Vec<((usize, usize), Form)>,
}

pub fn mc_expand(mu: &MuMatrix) -> Result<McExpansion, FramesError> {
    let s = &mu.space;
    let mm = mat_wedge(&mu.entries, &mu.entries)?;
    let rhs: [[Form; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| mm[i][j].neg()));
    let mut table = StructureTable::new(s);
    for g in 0..s.len() {
        let target = Form::gen_index(s, g);
        let mut found = None;
        'search: for i in 0..4 {
            for j in 0..4 {
                let e = &mu.entries[i][j];
                if e.num_terms() != 1 {
                    continue;
                }
                let (idx, c) = e.terms().next().expect("one term");
                if idx.len() == 1 && idx[0] as usize == g {
                    let c = c.as_constant().ok_or_else(|| FramesError::Internal("non-constant entry".into()))?;
                    found = Some((i, j, c));
                    break 'search;
                }
            }
        }
        let (i, j, c) =
            found.ok_or_else(|| FramesError::Internal(format!("generator {} not an entry", s.name(g))))?;
        let inv: GaussRat = c.inv().expect("nonzero");
        debug_assert_eq!(target.scale_const(&c), mu.entries[i][j]);
        table.set_gen(s.name(g), rhs[i][j].scale_const(&inv))?;
    }
    let mut entry_residuals = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let d = table.d(&mu.entries[i][j])?;
            entry_residuals.push(((i, j), d.sub(&rhs[i][j])?));
        }
    }
    Ok(McExpansion { table, entry_residuals })
}

/// The ten printed Maurer-Cartan equations, keyed by generator.
pub const UMC_EQ: [(&str, &str); 10] = [
    ("kappa", "i*eta^etabar + (lambda+lambdabar)^kappa + eps*i*zeta^zetabar"),
    ("eta", "(lambda - i*rho)^eta - xi^kappa + phi1bar^zeta"),
    ("psi", "psi^(lambda+lambdabar) - i*xi^xibar - eps*i*phi2^phi2bar"),
    ("xi", "psi^eta + xi^(lambdabar + i*rho) + eps*phi1bar^phi2"),
    ("lambda", "i*xibar^eta + i*phi2bar^zeta - psi^kappa"),
    ("rho", "eps*i*phi1^phi1bar - xibar^eta - xi^etabar"),
    ("phi1", "eps*i*zeta^xibar + i*(rho-tau)^phi1 - i*phi2^etabar"),
    ("phi2", "eps*psi^zeta + phi2^(lambdabar + i*tau) + xi^phi1"),
    ("zeta", "(lambda - i*tau)^zeta - eps*phi1^eta - eps*phi2^kappa"),
    ("tau", "zeta^phi2bar + zetabar^phi2 - eps*i*phi1^phi1bar"),
];

/// Printed table on the full (non trace-free) coframe.
pub fn umc_table(epsilon: i64) -> Result<StructureTable, FramesError> {
    check_eps(epsilon)?;
    let s = mu_space(false);
    let p = FormParser::new(&s).with_const("eps", epsilon);
    let mut t = StructureTable::new(&s);
    for (g, rule) in UMC_EQ {
        t.set_gen_conj(g, p.f(rule))?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mc_matches_printed_table() {
        for eps in [1, -1] {
            let mu = build_mu(eps, false).unwrap();
            let mc = mc_expand(&mu).unwrap();
            let printed = umc_table(eps).unwrap();
            for g in mu.space.names() {
                assert_eq!(mc.table.gen_rule(g).unwrap(), printed.gen_rule(g).unwrap(), "d{g}, eps={eps}");
            }
            assert!(mc.entry_residuals.iter().all(|(_, r)| r.is_zero()));
            assert!(mc.table.check_d_squared().unwrap().all_zero());
        }
    }

    #[test]
    fn algebra_condition_and_trace() {
        for eps in [1, -1] {
            let h = HermitianForm::new(eps, 1).unwrap();
            for tf in [false, true] {
                let mu = build_mu(eps, tf).unwrap();
                let r = algebra_residual(&mu, &h).unwrap();
                assert!(r.iter().flatten().all(|f| f.is_zero()));
                assert_eq!(trace(&mu).unwrap().is_zero(), tf);
            }
        }
    }

    #[test]
    fn trace_free_consistency() {
        let mu = build_mu(-1, true).unwrap();
        let mc = mc_expand(&mu).unwrap();
        assert!(mc.entry_residuals.iter().all(|(_, r)| r.is_zero()));
        assert_eq!(mu.space.len(), 15);
    }

    #[test]
    fn bad_epsilon() {
        assert!(build_mu(0, false).is_err());
    }
}
