//! Jet coordinates of the second fundamental form over `H^2` and their
//! differential tables.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::exterior::{FMat, Form, FormParser, Space, StructureTable, SymbolTable};
use crate::unitary_frames::{build_mu, mc_expand};

use super::LnError;

/// Jet symbols in order of differential level.
pub const JET_LEVELS: [&[&str]; 5] = [
    &["a", "b", "c"],
    &["u1", "u2", "u3", "u4"],
    &["v1", "v2", "v3", "v4", "v5"],
    &["w1", "w2", "w3", "w4", "w5", "w6"],
    &["z1", "z2", "z3", "z4", "z5", "z6", "z7"],
];

pub const H2_GENERATORS: [&str; 9] = ["kappa", "eta", "etabar", "lambda", "lambdabar", "rho", "xi", "xibar", "psi"];

/// Coframe `kappa, eta, lambda, rho, xi, psi` of `H^2` with every jet symbol
/// declared, followed by the constants `A, B, C` of homogeneous models.
pub fn h2_space() -> Arc<Space> {
    static CELL: OnceLock<Arc<Space>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut t = SymbolTable::new();
        for level in JET_LEVELS {
            for s in level {
                t.declare_complex_bar(s).expect("fresh");
            }
        }
        t.declare_complex_bar("A").expect("fresh");
        t.declare_real("B").expect("fresh");
        t.declare_real("C").expect("fresh");
        Space::builder(Arc::new(t))
            .real("kappa")
            .complex_bar("eta")
            .complex_bar("lambda")
            .real("rho")
            .complex_bar("xi")
            .real("psi")
            .build()
            .expect("fresh")
    })
    .clone()
}

pub fn parser(epsilon: i64) -> FormParser {
    FormParser::new(&h2_space()).with_const("eps", epsilon)
}

/// The printed Maurer-Cartan equations over `H^2`.
pub const LN_H2_MC: [(&str, &str); 6] = [
    ("kappa", "i*eta^etabar + (lambda + lambdabar)^kappa"),
    ("eta", "(lambda - i*rho)^eta - xi^kappa"),
    ("psi", "psi^(lambda + lambdabar) - i*xi^xibar + eps*i*kappa^(b*cbar*eta - bbar*c*etabar) - eps*i*b*bbar*eta^etabar"),
    ("xi", "psi^eta + xi^(lambdabar + i*rho) + eps*kappa^(b*bbar*eta - a*c*etabar) - eps*abar*b*eta^etabar"),
    ("lambda", "i*xibar^eta - psi^kappa"),
    ("rho", "-xibar^eta - xi^etabar - eps*i*kappa^(a*bbar*eta + abar*b*etabar) + eps*i*a*abar*eta^etabar"),
];

/// Second fundamental form coefficients `phi1 = a eta + b kappa`, `phi2 = b eta + c kappa`.
pub const II_COEFF: [(&str, &str); 2] = [("phi1", "a*eta + b*kappa"), ("phi2", "b*eta + c*kappa")];

/// Rows `(diag, sub, psi/xibar block, eta/kappa/etabar block)` text for a jet level.
fn level_rules(p: &FormParser, level: usize) -> Result<Vec<(String, Form)>, LnError> {
    let names = JET_LEVELS[level];
    let n = names.len();
    let s = p.space.clone();
    let lam = level as i64;
    let mut lin = Vec::with_capacity(n);
    for (j, name) in names.iter().enumerate() {
        let k = j as i64 + 1;
        let diag = format!("({}i*rho - {k}*lambdabar - {lam}*lambda)*{name}", n as i64 + 1 - k);
        let mut f = p.parse(&diag)?;
        if j > 0 {
            f = f.add(&p.parse(&format!("{j}*xi*{}", names[j - 1]))?)?;
        }
        lin.push(f);
    }
    let (px, eta_block): (FMat, FMat) = match level {
        0 => (
            FMat::zeros(&s, 3, 1),
            FMat::parse(p, &[&["u1", "u2", "2i*b"], &["u2", "u3", "i*c"], &["u3", "u4", "0"]])?,
        ),
        1 => {
            let px = FMat::parse(p, &[&["0", "3i*a"], &["-a", "2i*b"], &["-2b", "i*c"], &["-3c", "0"]])?;
            let v = FMat::parse(p, &[&["v1", "v2", "3i*u2"], &["v2", "v3", "2i*u3"], &["v3", "v4", "i*u4"], &["v4", "v5", "0"]])?;
            let m = FMat::parse(p, &[&["0", "3a"], &["a", "2b"], &["2b", "c"], &["3c", "0"]])?;
            let k = FMat::parse(p, &[&["0", "b*bbar", "abar*b"], &["0", "a*bbar", "a*abar"]])?;
            (px, v.sub(&m.mul(&k)?.scale(&p.parse("eps")?)?)?)
        }
        2 => {
            let px = FMat::parse(
                p,
                &[&["0", "8i*u1"], &["-2u1", "6i*u2"], &["-4u2", "4i*u3"], &["-6u3", "2i*u4"], &["-8u4", "0"]],
            )?;
            let w = FMat::parse(
                p,
                &[
                    &["w1", "w2", "4i*v2"],
                    &["w2", "w3", "3i*v3"],
                    &["w3", "w4", "2i*v4"],
                    &["w4", "w5", "i*v5"],
                    &["w5", "w6", "0"],
                ],
            )?;
            let m1 = FMat::parse(
                p,
                &[
                    &["0", "0", "10u1"],
                    &["0", "4u1", "6u2"],
                    &["u1", "6u2", "3u3"],
                    &["3u2", "6u3", "u4"],
                    &["6u3", "4u4", "0"],
                ],
            )?;
            let m2 = FMat::parse(
                p,
                &[&["0", "0", "6a"], &["0", "3a", "3b"], &["a", "4b", "c"], &["3b", "3c", "0"], &["6c", "0", "0"]],
            )?;
            let corr = m1.mul(&k1(p)?)?.sub(&m2.mul(&k2(p)?)?.scale(&p.parse("i")?)?)?;
            (px, w.sub(&corr.scale(&p.parse("eps")?)?)?)
        }
        3 => {
            let px = FMat::parse(
                p,
                &[
                    &["0", "15i*v1"],
                    &["-3v1", "12i*v2"],
                    &["-6v2", "9i*v3"],
                    &["-9v3", "6i*v4"],
                    &["-12v4", "3i*v5"],
                    &["-15v5", "0"],
                ],
            )?;
            let z = FMat::parse(
                p,
                &[
                    &["z1", "z2", "5i*w2"],
                    &["z2", "z3", "4i*w3"],
                    &["z3", "z4", "3i*w4"],
                    &["z4", "z5", "2i*w5"],
                    &["z5", "z6", "i*w6"],
                    &["z6", "z7", "0"],
                ],
            )?;
            let col = FMat::parse(
                p,
                &[
                    &["10u1**2"],
                    &["10u1*u2"],
                    &["4u1*u3 + 6u2**2"],
                    &["u1*u4 + 9u2*u3"],
                    &["4u2*u4 + 6u3**2"],
                    &["10u3*u4"],
                ],
            )?;
            let row = FMat::parse(p, &[&["0", "bbar", "abar"]])?;
            let z = z.sub(&col.mul(&row)?.scale(&p.parse("eps")?)?)?;
            let m1 = FMat::parse(
                p,
                &[
                    &["0", "0", "15v1"],
                    &["0", "5v1", "10v2"],
                    &["v1", "8v2", "6v3"],
                    &["3v2", "9v3", "3v4"],
                    &["6v3", "8v4", "v5"],
                    &["10v4", "5v5", "0"],
                ],
            )?;
            let m2 = FMat::parse(
                p,
                &[
                    &["0", "0", "30u1"],
                    &["0", "12u1", "18u2"],
                    &["3u1", "18u2", "9u3"],
                    &["9u2", "18u3", "3u4"],
                    &["18u3", "12u4", "0"],
                    &["30u4", "0", "0"],
                ],
            )?;
            let corr = m1.mul(&k1(p)?)?.sub(&m2.mul(&k2(p)?)?.scale(&p.parse("i")?)?)?;
            (px, z.sub(&corr.scale(&p.parse("eps")?)?)?)
        }
        _ => return Err(LnError::Input(format!("no printed rules at jet level {level}"))),
    };
    let pxv = FMat::column(p, &["psi", "xibar"])?;
    let ekv = FMat::column(p, &["eta", "kappa", "etabar"])?;
    let a = if level == 0 { FMat::zeros(&s, n, 1) } else { px.mul(&pxv)? };
    let b = eta_block.mul(&ekv)?;
    let mut out = Vec::new();
    for (j, name) in names.iter().enumerate() {
        let f = lin[j].add(&a.rows[j][0])?.add(&b.rows[j][0])?;
        out.push((name.to_string(), f));
    }
    Ok(out)
}

fn k1(p: &FormParser) -> Result<FMat, LnError> {
    Ok(FMat::parse(p, &[&["0", "bbar*c", "abar*c"], &["0", "b*bbar", "abar*b"], &["0", "a*bbar", "a*abar"]])?)
}

fn k2(p: &FormParser) -> Result<FMat, LnError> {
    Ok(FMat::parse(p, &[&["0", "c*cbar", "bbar*c"], &["0", "b*cbar", "b*bbar"], &["0", "a*cbar", "a*bbar"]])?)
}

/// Which table of generator rules to use over `H^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum H2Rules {
    /// As printed.
    Printed,
    /// Pulled back from the trace-free Maurer-Cartan equations.
    Derived,
}

/// Generator rules over `H^2` pulled back from the trace-free Maurer-Cartan
/// table with `zeta = 0` and the second fundamental form substituted.
pub fn derived_generator_rules(epsilon: i64) -> Result<BTreeMap<String, Form>, LnError> {
    let mu = build_mu(epsilon, true)?;
    let mc = mc_expand(&mu)?;
    let p = parser(epsilon);
    let images = h2_images(&p, &mu.space)?;
    let s = h2_space();
    let mut out = BTreeMap::new();
    for g in H2_GENERATORS {
        let rule = mc.table.gen_rule(g)?;
        out.insert(g.to_string(), rule.pullback(&s, &images)?);
    }
    Ok(out)
}

/// Images in `H^2` of the trace-free coframe.
pub fn h2_images(p: &FormParser, mu_space: &Arc<Space>) -> Result<Vec<Form>, LnError> {
    let coeff: BTreeMap<&str, &str> = II_COEFF.into_iter().collect();
    let mut images = Vec::new();
    for g in mu_space.names() {
        let f = match g {
            "zeta" | "zetabar" => Form::zero(&p.space),
            "phi1" | "phi2" => p.parse(coeff[g])?,
            "phi1bar" | "phi2bar" => p.parse(coeff[&g[..4]])?.conj(),
            _ => p.parse(g)?,
        };
        images.push(f);
    }
    Ok(images)
}

/// The `H^2` table: generator rules plus jet rules up to `w`; `z` open.
pub fn h2_table(epsilon: i64, rules: H2Rules) -> Result<StructureTable, LnError> {
    let p = parser(epsilon);
    let mut t = StructureTable::new(&p.space);
    match rules {
        H2Rules::Printed => {
            for (g, r) in LN_H2_MC {
                t.set_gen_conj(g, p.parse(r)?)?;
            }
        }
        H2Rules::Derived => {
            for (g, r) in derived_generator_rules(epsilon)? {
                t.set_gen(&g, r)?;
            }
        }
    }
    for level in 0..4 {
        for (name, rule) in level_rules(&p, level)? {
            t.set_scalar_conj(&name, rule)?;
        }
    }
    for z in JET_LEVELS[4] {
        t.mark_open(z)?;
        t.mark_open(&format!("{z}bar"))?;
    }
    Ok(t)
}

/// Cached tables keyed by `(epsilon, rules)`.
pub fn h2_table_cached(epsilon: i64, rules: H2Rules) -> Result<&'static StructureTable, LnError> {
    static CELLS: OnceLock<[OnceLock<StructureTable>; 4]> = OnceLock::new();
    let cells = CELLS.get_or_init(Default::default);
    let i = usize::from(epsilon < 0) * 2 + usize::from(rules == H2Rules::Derived);
    if let Some(t) = cells[i].get() {
        return Ok(t);
    }
    let t = h2_table(epsilon, rules)?;
    Ok(cells[i].get_or_init(|| t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_and_printed_rules_agree_except_listed() {
        for eps in [1, -1] {
            let p = parser(eps);
            let derived = derived_generator_rules(eps).unwrap();
            let mut differ = Vec::new();
            for (g, r) in LN_H2_MC {
                if derived[g] != p.f(r) {
                    differ.push(g);
                }
            }
            assert_eq!(differ, super::super::PRINTED_H2_DISCREPANCIES, "eps={eps}");
        }
    }

    #[test]
    fn second_fundamental_form_is_consistent() {
        for eps in [1, -1] {
            let p = parser(eps);
            let mu = build_mu(eps, true).unwrap();
            let mc = mc_expand(&mu).unwrap();
            let images = h2_images(&p, &mu.space).unwrap();
            let t = h2_table(eps, H2Rules::Derived).unwrap();
            for (g, src) in [("zeta", "0"), ("phi1", II_COEFF[0].1), ("phi2", II_COEFF[1].1)] {
                let lhs = t.d(&p.f(src)).unwrap();
                let rhs = mc.table.gen_rule(g).unwrap().pullback(&p.space, &images).unwrap();
                assert!(lhs.sub(&rhs).unwrap().is_zero(), "d{g}, eps={eps}");
            }
        }
    }

    #[test]
    fn derived_table_closes_through_v() {
        for eps in [1, -1] {
            let t = h2_table(eps, H2Rules::Derived).unwrap();
            let r = t.check_d_squared().unwrap();
            assert!(r.all_zero(), "eps={eps}: {:?}", r.nonzero());
            assert!(r.skipped.iter().any(|s| s.starts_with('w')));
        }
    }
}
