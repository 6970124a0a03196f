//! Rank-one reduction `H^5 -> M` and its homogeneous model.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::config::Config;
use crate::embedding_ln::reduce::Reduction;
use crate::exterior::{Form, GaussRat, Monomial, ScalarPoly, StructureTable, Sym};

use super::table::{lf_parser, lf_table_cached, LfRules, EPSILON};
use super::LfError;

pub const RANK1_LAMBDA: &str = "-1/6*(phi1 + phi1bar) - 1/12*(u1 - 5u1bar)*kappa";
pub const RANK1_PSI: &str = "1/3*(u**2*kappa - 2i*eta + 2i*etabar)";
pub const RANK1_XI: &str = "1/30*(40u**3 + 6i*w1 - 9i*w1bar)*kappa + i/15*(11u*eta + u*etabar)";
pub const RANK1_DW1: &str = "(6i + w1)*phi1 + (w1 - 4i)*phi1bar + (z1 - 80/3*u**4 - 8i*u*w1 + 3i*u*w1bar)*kappa \
    + i/3*u**2*(16eta + 38etabar)";
pub const RANK1_PHI1: &str = "-i/30*(80u**4 - 9z1 + 6z1bar)*kappa - 1/15*u**2*(62eta + 73etabar)";
pub const RANK1_DU: &str = "-1/3*u*z*kappa + (1 - 3u**3)*eta + (1 - 3u**3)*etabar";
/// What is left of the structure equations.
pub const LF_RANK_ONE: [(&str, &str); 2] = [
    ("kappa", "3u**2*(eta + etabar)^kappa"),
    ("eta", "3u**2*eta^etabar - 1/15*(4i*u + 5z)*kappa^eta + i/15*u*kappa^etabar"),
];
/// The type V model with derivation `cbrt 3 diag(1, -1)`, `c = cbrt 3`.
pub const V_B_ZERO: [(&str, &str); 2] =
    [("kappa", "c*(eta + etabar)^kappa"), ("eta", "c*eta^etabar + i/(15c)*(4eta - etabar)^kappa")];

/// Intermediate and final data of the rank-one reduction.
#[derive(Clone, Debug)]
pub struct RankOneReduction {
    /// Solved forms and identities, keyed as `lambda`, `psi`, `xi`, `dw1`, `phi1`, `du`.
    /// `dw1` and `xi` are taken on `H^4`, before `w1 = 0`.
    pub derived: BTreeMap<String, Form>,
    /// Derived minus printed for each entry of `derived` and of `structure`.
    pub residuals: BTreeMap<String, Form>,
    /// `dkappa, deta` on `H^5`.
    pub structure: BTreeMap<String, Form>,
    /// Remaining restricted differentials of the normalized jets; all vanish.
    pub constraints: BTreeMap<String, Form>,
}

fn real_imag(r: &mut Reduction, complex: &str, re: ScalarPoly, im: &str) -> Result<(), LfError> {
    let s = r.sym(complex)?;
    let sb = r.parser.space.symbols().conj(s);
    let im = ScalarPoly::var(r.sym(im)?);
    let i = ScalarPoly::i();
    let z = &re + &(&i * &im);
    let zb = &re - &(&i * &im);
    r.fix_many(&[(s, z), (sb, zb)])?;
    Ok(())
}

/// Runs the reductions `a = 1`, `Re u1 = 0 = v1`, `w1 = 0` on the derived table.
pub fn lf_rank1_reduce() -> Result<RankOneReduction, LfError> {
    let p = lf_parser();
    let table = lf_table_cached(LfRules::Derived)?;
    let mut r = Reduction::from_table(EPSILON, p.clone(), table);
    let zero = ScalarPoly::zero();
    for n in ["b", "u0", "v0", "w0", "z0"] {
        r.fix(n, zero.clone())?;
    }
    r.fix_conj("a", ScalarPoly::one())?;
    let mut derived = BTreeMap::new();
    let mut residuals = BTreeMap::new();
    let mut record = |r: &Reduction, k: &str, f: Form, printed: &str| -> Result<(), LfError> {
        let f = r.restrict(&f)?;
        residuals.insert(k.to_string(), f.sub(&r.restrict(&p.parse(printed)?)?)?);
        derived.insert(k.to_string(), f);
        Ok(())
    };
    let g = |r: &Reduction, n: &str| -> Result<Form, LfError> {
        r.gen(n)?.cloned().ok_or_else(|| LfError::Invariant(format!("{n} not solved")))
    };
    let da = r.d_jet("a")?;
    let lambda = r.solve_gen_mixed(&da, "lambda")?;
    record(&r, "lambda", lambda, RANK1_LAMBDA)?;
    real_imag(&mut r, "u1", zero.clone(), "u")?;
    r.fix_conj("v1", zero.clone())?;
    let re_du1 = r.d_jet("u1")?.add(&r.d_jet("u1bar")?)?;
    r.solve_gen(&re_du1, "psi")?;
    let dv1 = r.d_jet("v1")?;
    r.solve_gen_mixed(&dv1, "xi")?;
    record(&r, "psi", g(&r, "psi")?, RANK1_PSI)?;
    record(&r, "xi", g(&r, "xi")?, RANK1_XI)?;
    record(&r, "dw1", r.d_jet("w1")?, RANK1_DW1)?;
    r.fix_conj("w1", zero.clone())?;
    let dw1 = r.d_jet("w1")?;
    r.solve_gen_mixed(&dw1, "phi1")?;
    let x = ScalarPoly::var(r.sym("x")?);
    real_imag(&mut r, "z1", x, "z")?;
    record(&r, "phi1", g(&r, "phi1")?, RANK1_PHI1)?;
    let minus_i = ScalarPoly::i().scale(&GaussRat::from(-1));
    record(&r, "du", r.d_jet("u1")?.scale(&minus_i), RANK1_DU)?;
    let mut structure = BTreeMap::new();
    for (gname, printed) in LF_RANK_ONE {
        let s = r.structure(gname)?;
        residuals.insert(format!("d{gname}"), s.sub(&p.parse(printed)?)?);
        structure.insert(gname.to_string(), s);
    }
    let mut constraints = BTreeMap::new();
    for n in ["a", "b", "u0", "v0", "w0", "v1", "w1"] {
        constraints.insert(format!("d{n}"), r.d_jet(n)?);
    }
    constraints.insert("Re du1".into(), r.d_jet("u1")?.add(&r.d_jet("u1bar")?)?);
    Ok(RankOneReduction { derived, residuals, structure, constraints })
}

/// Replaces `s^e` by `value^(e div n) s^(e mod n)`.
pub fn reduce_power(p: &ScalarPoly, s: Sym, n: i32, value: &GaussRat) -> ScalarPoly {
    let mut out = ScalarPoly::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(s);
        let rest = m.mul(&Monomial::var(s, -e)).mul(&Monomial::var(s, e.rem_euclid(n)));
        let k = value.pow(e.div_euclid(n)).expect("nonzero");
        out.add_term(rest, &(c * &k));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankOneModelCheck {
    pub u: f64,
    /// Exact match with `u^3 = 1/3`, `z = 0`, `c = 1/u`.
    pub exact: bool,
    pub max_abs: f64,
    /// `d^2 kappa` with the `du` rule.
    pub d2_kappa_zero: bool,
    /// Both `du` coefficients vanish at `u^3 = 1/3`, `z = 0`.
    pub du_vanishes: bool,
    pub pass: bool,
}

/// Compares the reduced table at `u = 3^(-1/3)`, `z = 0` with the type V model.
pub fn rank_one_model_check(red: &RankOneReduction, cfg: &Config) -> Result<RankOneModelCheck, LfError> {
    let p = lf_parser();
    let t = p.space.symbols().clone();
    let (u, z, x) = (t.get("u")?, t.get("z")?, t.get("x")?);
    let third = GaussRat::ratio(1, 3);
    let mut at = BTreeMap::new();
    at.insert(z, ScalarPoly::zero());
    let cube = |f: &Form| f.map_coeffs(|c| reduce_power(c, u, 3, &third));
    let u0 = 3f64.powf(-1.0 / 3.0);
    let mut vals = vec![Complex64::new(0.0, 0.0); t.len()];
    vals[u as usize] = Complex64::new(u0, 0.0);
    vals[x as usize] = Complex64::new(0.7, 0.0);
    let mut exact = true;
    let mut max_abs = 0.0f64;
    for (g, src) in V_B_ZERO {
        // c = cbrt 3 = 1/u at the homogeneous point
        let model = p.parse(&src.replace("i/(15c)", "i/15*u").replace('c', "u**-1"))?;
        let ours = red.structure[g].substitute(&at)?;
        exact &= cube(&ours.sub(&model)?).is_zero();
        let (a, b) = (ours.eval(&vals), model.eval(&vals));
        for k in a.keys().chain(b.keys()) {
            let d = a.get(k).copied().unwrap_or_default() - b.get(k).copied().unwrap_or_default();
            max_abs = max_abs.max(d.norm());
        }
    }
    let mut tab = StructureTable::new(&lf_parser().space);
    tab.set_gen_conj("kappa", red.structure["kappa"].clone())?;
    tab.set_gen_conj("eta", red.structure["eta"].clone())?;
    tab.set_scalar("u", red.derived["du"].clone())?;
    tab.mark_open("z")?;
    tab.mark_open("x")?;
    let pk = lf_parser().parse("kappa")?;
    let d2_kappa_zero = tab.d(&tab.d(&pk)?)?.is_zero();
    let du0 = cube(&red.derived["du"].substitute(&at)?);
    let du_vanishes = du0.is_zero();
    let pass = exact && max_abs <= cfg.rank_tol && d2_kappa_zero && du_vanishes;
    Ok(RankOneModelCheck { u: u0, exact, max_abs, d2_kappa_zero, du_vanishes, pass })
}
