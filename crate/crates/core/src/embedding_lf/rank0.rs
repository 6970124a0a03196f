//! `II = 0`: the null-frame conjugation of the Maurer-Cartan form and the
//! flag-stabilizer pattern.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exterior::table::ClosureEntry;
use crate::exterior::{Form, FormParser, GaussRat, Monomial, ScalarPoly, StructureTable, Sym};
use crate::unitary_frames::build_mu;

use super::table::{LF_GENERATORS, lf_images, lf_parser, lf_table_cached, LfRules, EPSILON};
use super::LfError;

/// `sqrt 2 U` for the null rearrangement `U`.
pub const U_SCALED: [[&str; 4]; 4] =
    [["0", "s2", "0", "0"], ["1", "0", "0", "-1"], ["1", "0", "0", "1"], ["0", "0", "s2", "0"]];

/// The printed conjugated Maurer-Cartan matrix, `s2 = sqrt 2`.
pub const LF_MC_TRANS: [[&str; 4]; 4] = [
    [
        "-1/2*(phi1 + phi1bar + lambda - lambdabar)",
        "s2*eta",
        "s2*xi - s2/2*(a*kappa + i*b*eta)",
        "phi1 - phi1bar - i/2*b*kappa",
    ],
    ["-s2/2*(b*etabar + i*abar*kappa)", "lambda", "psi", "s2*i*xibar - s2/2*(b*etabar + i*abar*kappa)"],
    ["0", "kappa", "-lambdabar", "-i*s2*etabar"],
    ["-i/2*b*kappa", "0", "-s2/2*(a*kappa + i*b*eta)", "1/2*(phi1 + phi1bar - lambda + lambdabar)"],
];

/// Entries that vanish on the stabilizer of `<n1> in <n1, n2, n3>`.
pub const FLAG_ZEROS: [(usize, usize); 5] = [(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)];

/// Replaces `s2^e` by `2^(e div 2) s2^(e mod 2)`.
pub fn reduce_sqrt2(p: &ScalarPoly, s2: Sym) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(s2);
        let rest = m.mul(&Monomial::var(s2, -e)).mul(&Monomial::var(s2, e.rem_euclid(2)));
        let k = GaussRat::from(2).pow(e.div_euclid(2)).expect("nonzero");
        out.add_term(rest, &(c * &k));
    }
    out
}

fn reduce_form(f: &Form, s2: Sym) -> Form {
    f.map_coeffs(|c| reduce_sqrt2(c, s2))
}

/// `U^-1 mu U` on `H^2` with the Levi-flat adaptation.
pub fn conjugated_mu() -> Result<[[Form; 4]; 4], LfError> {
    let p = lf_parser();
    let mu = build_mu(EPSILON, true)?;
    let images = lf_images(&p, &mu.space)?;
    let pulled: Vec<Vec<Form>> = mu
        .entries
        .iter()
        .map(|row| row.iter().map(|f| f.pullback(&p.space, &images)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let n: Vec<Vec<Form>> = U_SCALED.iter().map(|row| row.iter().map(|s| p.parse(s)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let s2 = p.space.sym("s2")?;
    let half = GaussRat::ratio(1, 2);
    let mut out: [[Form; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Form::zero(&p.space)));
    for (i, row) in out.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let mut acc = Form::zero(&p.space);
            for k in 0..4 {
                for l in 0..4 {
                    acc = acc.add(&n[k][i].wedge(&pulled[k][l])?.wedge(&n[l][j])?)?;
                }
            }
            *e = reduce_form(&acc.scale_const(&half), s2);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rank0Certificate {
    /// Entries where the computed matrix differs from the printed one.
    pub mismatches: Vec<(usize, usize, String)>,
    /// Flag-stabilizer entries that fail to vanish at `a = b = 0`.
    pub flag_violations: Vec<(usize, usize)>,
    /// `U^-1 = conj(U)^t`.
    pub unitary: bool,
    /// Real dimension of the coframe.
    pub dimension: usize,
    /// `d^2 = 0` on the table at `a = b = 0`.
    pub closes: bool,
    pub pass: bool,
}

fn zero_ab(p: &FormParser) -> Result<BTreeMap<Sym, ScalarPoly>, LfError> {
    ["a", "abar", "b"].iter().map(|n| Ok((p.space.sym(n)?, ScalarPoly::zero()))).collect()
}

fn unitary_check() -> bool {
    let r2 = std::f64::consts::SQRT_2;
    let u: Vec<Vec<f64>> = U_SCALED
        .iter()
        .map(|row| row.iter().map(|s| match *s { "s2" => 1.0, "1" => 1.0 / r2, "-1" => -1.0 / r2, _ => 0.0 }).collect())
        .collect();
    (0..4).all(|i| {
        (0..4).all(|j| {
            let dot: f64 = (0..4).map(|k| u[k][i] * u[k][j]).sum();
            (dot - f64::from(u8::from(i == j))).abs() < 1e-15
        })
    })
}

/// The `II = 0` table and its membership in the flag stabilizer.
pub fn lf_rank0_structure() -> Result<(StructureTable, Rank0Certificate), LfError> {
    let p = lf_parser();
    let m = conjugated_mu()?;
    let mut mismatches = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let diff = m[i][j].sub(&p.parse(LF_MC_TRANS[i][j])?)?;
            if !diff.is_zero() {
                mismatches.push((i, j, diff.display()));
            }
        }
    }
    let zero = zero_ab(&p)?;
    let flag_violations: Vec<(usize, usize)> =
        FLAG_ZEROS.iter().copied().filter(|&(i, j)| !m[i][j].substitute(&zero).map(|f| f.is_zero()).unwrap_or(false)).collect();
    let table = lf_table_cached(LfRules::Printed)?.substitute(&zero)?;
    let d2 = table.check_d_squared()?;
    let gens: Vec<&ClosureEntry> = d2.entries.iter().filter(|e| LF_GENERATORS.contains(&e.name.as_str())).collect();
    let closes = gens.len() == LF_GENERATORS.len() && gens.iter().all(|e| e.residual.is_zero());
    let dimension = p.space.len();
    let unitary = unitary_check();
    let pass = mismatches.is_empty() && flag_violations.is_empty() && unitary && closes && dimension == 10;
    Ok((table, Rank0Certificate { mismatches, flag_violations, unitary, dimension, closes, pass }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugated_matrix_matches_print() {
        let (_, cert) = lf_rank0_structure().unwrap();
        assert!(cert.mismatches.is_empty(), "{:?}", cert.mismatches);
        assert!(cert.pass, "{cert:?}");
        assert_eq!(cert.dimension, 10);
    }

    #[test]
    fn flag_entries() {
        let p = lf_parser();
        let m = conjugated_mu().unwrap();
        assert!(m[2][0].is_zero());
        assert_eq!(m[3][0], p.f("-i/2*b*kappa"));
        let zero = zero_ab(&p).unwrap();
        assert!(m[3][0].substitute(&zero).unwrap().is_zero());
        assert!(!m[0][1].is_zero());
    }

    #[test]
    fn sqrt2_reduction() {
        let p = lf_parser();
        let s2 = p.space.sym("s2").unwrap();
        let x = p.scalar("s2**3 + s2**-1 + s2**2").unwrap();
        assert_eq!(reduce_sqrt2(&x, s2), p.scalar("2s2 + s2/2 + 2").unwrap());
    }
}
