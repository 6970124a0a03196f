//! Rank-two reductions: `H^3` with `b = +-1`, the `u1 = 0` branch with its
//! `sl2R + su(p,q)` blocks, and the `u1 = 1` branch with its identities.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::Config;
use crate::embedding_ln::reduce::Reduction;
use crate::exterior::{pit, Form, GaussRat, ScalarPoly, StructureTable, Sym};

use super::table::{lf_parser, lf_table_cached, LfCheck, LfRules, EPSILON};
use super::LfError;

pub const H3_PHI1: &str = "-1/2*(lambda + lambdabar) + i*b**-1*psi - 1/2*v0*b**-2*kappa";
pub const H3_XI: &str = "i/2*b*eta + i/2*u1*b**-1*kappa";
pub const H3_DU1: &str = "-u1*(lambda + 3lambdabar) + (v1 + i*b*u1)*kappa + i*(v0 + 1/2*b**3)*eta";
/// `phi1` with the factor `i` on the `kappa` term.
pub const H3_PHI1_CORRECTED: &str = "-1/2*(lambda + lambdabar) + i*b**-1*psi - i/2*v0*b**-2*kappa";

pub const LF_RANK_TWO_MC: [(&str, &str); 4] = [
    ("kappa", "(lambda + lambdabar)^kappa"),
    ("eta", "(lambda - lambdabar)^eta"),
    ("lambda", "-psi^kappa - b*eta^etabar"),
    ("psi", "psi^(lambda + lambdabar)"),
];
/// `sl2R` block.
pub const SL2R_BLOCK: [[&str; 2]; 2] = [["1/2*(lambda + lambdabar)", "psi"], ["kappa", "-1/2*(lambda + lambdabar)"]];
/// `su(p,q)` block with `R = sqrt b`.
pub const SU_PQ_BLOCK: [[&str; 2]; 2] = [["1/2*(lambda - lambdabar)", "-R*etabar"], ["R*eta", "-1/2*(lambda - lambdabar)"]];

pub const H4_LAMBDA: &str = "-i/2*(b + v)*kappa - i/16*(b**3 + 2v0)*eta - 3i/16*(b**3 + 2v0)*etabar";
pub const H4_PSI: &str = "1/16*(v*b**3 + b**4 + 2b*v0 + 2v0*v + 2i*w0)*eta \
    + 1/16*(v*b**3 + b**4 + 2b*v0 + 2v0*v - 2i*w0)*etabar \
    + 1/16*b**-1*(4v**2*b + 4v*b**2 + 3b**3 + 2b*w1bar + 2b*w1 - 16v0)*kappa";
pub const LF_R2U1: [(&str, &str); 2] = [
    ("kappa", "i/8*(b**3 + 2v0)*(eta - etabar)^kappa"),
    ("eta", "i/4*(b**3 + 2v0)*eta^etabar - i*(b + v)*kappa^eta"),
];
pub const LF_R2U1_ID: [(&str, &str); 2] = [
    (
        "v0",
        "w0*kappa - i/8*(b**6 + 4b**3*v0 + 4v0**2 + 16b)*eta + i/8*(b**6 + 4b**3*v0 + 4v0**2 + 16b)*etabar",
    ),
    (
        "v",
        "i/2*(w1bar - w1)*kappa - i/8*(3v*b**3 + 3b**4 + 6v0*v + 4i*w0 + 6b*v0)*eta \
         + i/8*(3v*b**3 + 3b**4 + 6v0*v - 4i*w0 + 6b*v0)*etabar",
    ),
];
/// The type V model with derivation `diag(1, 2)`.
pub const V_B_NONZERO: [(&str, &str); 2] = [("kappa", "i/2*(eta - etabar)^kappa"), ("eta", "i*eta^etabar")];

fn minus_i() -> ScalarPoly {
    ScalarPoly::i().scale(&GaussRat::from(-1))
}

fn gen_of(r: &Reduction, n: &str) -> Result<Form, LfError> {
    r.gen(n)?.cloned().ok_or_else(|| LfError::Invariant(format!("{n} not solved")))
}

/// `H^3` with `b` kept as a nonzero real symbol.
#[derive(Clone, Debug)]
pub struct RankTwoH3 {
    pub reduction: Reduction,
    /// `phi1`, `xi`, `du1`.
    pub derived: BTreeMap<String, Form>,
    /// Derived minus printed.
    pub residuals: BTreeMap<String, Form>,
    /// Restricted `da, db, du0`.
    pub constraints: BTreeMap<String, Form>,
}

/// `a = u0 = 0`, `db = 0`: `xi` from `da`, `phi1` from `db` and `du0`.
pub fn lf_rank2_h3() -> Result<RankTwoH3, LfError> {
    let p = lf_parser();
    let mut r = Reduction::from_table(EPSILON, p.clone(), lf_table_cached(LfRules::Derived)?);
    r.fix_conj("a", ScalarPoly::zero())?;
    r.fix("u0", ScalarPoly::zero())?;
    let da = r.d_jet("a")?;
    r.solve_gen(&da, "xi")?;
    let b = ScalarPoly::var(r.sym("b")?);
    let b_inv = b.inverse().expect("monomial");
    let b_inv2 = b_inv.pow(2).expect("monomial");
    // (-1/(2b)) db + (i/(2b^2)) du0 = phi1 + ...
    let eq = r
        .d_jet("b")?
        .scale(&b_inv.scale(&GaussRat::ratio(-1, 2)))
        .add(&r.d_jet("u0")?.scale(&b_inv2.scale(&GaussRat::complex_ratio(0, 1, 1, 2))))?;
    r.solve_gen(&eq, "phi1")?;
    let mut derived = BTreeMap::new();
    derived.insert("phi1".to_string(), gen_of(&r, "phi1")?);
    derived.insert("xi".to_string(), gen_of(&r, "xi")?);
    derived.insert("du1".to_string(), r.d_jet("u1")?);
    let printed = [("phi1", H3_PHI1), ("xi", H3_XI), ("du1", H3_DU1)];
    let mut residuals = BTreeMap::new();
    for (k, src) in printed {
        residuals.insert(k.to_string(), derived[k].sub(&r.restrict(&p.parse(src)?)?)?);
    }
    let corrected = derived["phi1"].sub(&r.restrict(&p.parse(H3_PHI1_CORRECTED)?)?)?;
    residuals.insert("phi1_corrected".to_string(), corrected);
    let mut constraints = BTreeMap::new();
    for n in ["a", "b", "u0"] {
        constraints.insert(format!("d{n}"), r.d_jet(n)?);
    }
    Ok(RankTwoH3 { reduction: r, derived, residuals, constraints })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankTwoBranch {
    #[serde(rename = "u1=0")]
    U1Zero,
    #[serde(rename = "u1=1")]
    U1Nonzero,
}

/// Exact checks of the two blocks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockCheck {
    /// `dA + A^A = 0` for both blocks.
    pub maurer_cartan: bool,
    pub trace_zero: bool,
    /// Real entries for `sl2R`, `conj(X)^t h + h X = 0` with `h = diag(1, b)`.
    pub compatible: bool,
    /// `d^2 = 0` on the reduced table.
    pub closes: bool,
    pub algebra: String,
    pub pass: bool,
}

/// The `u1 = 0` branch for `b = +-1`.
#[derive(Clone, Debug)]
pub struct RankTwoFlat {
    pub b: i64,
    /// `v0, v1, w0, w1, z0, z1` as solved.
    pub jets: BTreeMap<String, ScalarPoly>,
    /// `dkappa, deta, dlambda, dpsi`.
    pub structure: BTreeMap<String, Form>,
    /// Derived minus printed structure.
    pub residuals: BTreeMap<String, Form>,
    /// Restricted differentials of every jet; all vanish.
    pub constraints: BTreeMap<String, Form>,
    pub blocks: BlockCheck,
}

fn check_b(b: i64) -> Result<(), LfError> {
    if b == 1 || b == -1 {
        Ok(())
    } else {
        Err(LfError::Input(format!("b must be normalized to 1 or -1, got {b}")))
    }
}

fn solve_coeff(r: &mut Reduction, form: &Form, gen: &str, var: &str, conj: bool) -> Result<(), LfError> {
    let c = form.coeff(&[gen])?;
    r.solve_jet(&c, var, conj)?;
    Ok(())
}

/// Small table on the reduced coframe.
fn reduced_table(structure: &BTreeMap<String, Form>, scalars: &[(&str, Form)], open: &[&str]) -> Result<StructureTable, LfError> {
    let p = lf_parser();
    let mut t = StructureTable::new(&p.space);
    for (g, f) in structure {
        t.set_gen_conj(g, f.clone())?;
    }
    for (s, f) in scalars {
        t.set_scalar(s, f.clone())?;
    }
    for s in open {
        t.mark_open(s)?;
    }
    Ok(t)
}

fn mat(src: &[[&str; 2]; 2], r: &str) -> Result<[[Form; 2]; 2], LfError> {
    let p = lf_parser();
    let f = |s: &str| p.parse(&s.replace('R', &format!("({r})")));
    Ok([[f(src[0][0])?, f(src[0][1])?], [f(src[1][0])?, f(src[1][1])?]])
}

fn mc_residual(t: &StructureTable, a: &[[Form; 2]; 2]) -> Result<bool, LfError> {
    for i in 0..2 {
        for j in 0..2 {
            let mut e = t.d(&a[i][j])?;
            for k in 0..2 {
                e = e.add(&a[i][k].wedge(&a[k][j])?)?;
            }
            if !e.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn block_check(b: i64, structure: &BTreeMap<String, Form>) -> Result<BlockCheck, LfError> {
    let zero_b = Form::zero(&lf_parser().space);
    let t = reduced_table(structure, &[("b", zero_b)], &[])?;
    let sl = mat(&SL2R_BLOCK, "1")?;
    let su = mat(&SU_PQ_BLOCK, if b == 1 { "1" } else { "i" })?;
    let maurer_cartan = mc_residual(&t, &sl)? && mc_residual(&t, &su)?;
    let trace_zero = sl[0][0].add(&sl[1][1])?.is_zero() && su[0][0].add(&su[1][1])?.is_zero();
    let real = sl.iter().flatten().all(|e| e.sub(&e.conj()).map(|d| d.is_zero()).unwrap_or(false));
    let h = [1i64, b];
    let mut herm = true;
    for i in 0..2 {
        for j in 0..2 {
            let lhs = su[j][i].conj().scale_const(&GaussRat::from(h[j]));
            let rhs = su[i][j].scale_const(&GaussRat::from(h[i]));
            herm &= lhs.add(&rhs)?.is_zero();
        }
    }
    let compatible = real && herm;
    let p = lf_parser();
    let mut closes = true;
    for g in ["kappa", "eta", "lambda", "psi"] {
        closes &= t.d(&t.d(&p.parse(g)?)?)?.is_zero();
    }
    let algebra = if b == 1 { "sl2R + su(2)" } else { "sl2R + su(1,1)" }.to_string();
    let pass = maurer_cartan && trace_zero && compatible && closes;
    Ok(BlockCheck { maurer_cartan, trace_zero, compatible, closes, algebra, pass })
}

fn structure_of(r: &Reduction, gens: &[&str]) -> Result<BTreeMap<String, Form>, LfError> {
    gens.iter().map(|g| Ok((g.to_string(), r.structure(g)?))).collect()
}

/// `u1 = 0`: `v0, v1` from `du1`, then `w`, `z` from `dv`, `dw`.
pub fn lf_rank2_flat(h3: &RankTwoH3, b: i64) -> Result<RankTwoFlat, LfError> {
    check_b(b)?;
    let p = lf_parser();
    let mut r = h3.reduction.clone();
    r.fix("b", ScalarPoly::int(b))?;
    r.fix_conj("u1", ScalarPoly::zero())?;
    let du1 = r.d_jet("u1")?;
    solve_coeff(&mut r, &du1, "eta", "v0", false)?;
    solve_coeff(&mut r, &du1, "kappa", "v1", true)?;
    let dv0 = r.d_jet("v0")?;
    solve_coeff(&mut r, &dv0, "kappa", "w0", false)?;
    let dv1 = r.d_jet("v1")?;
    solve_coeff(&mut r, &dv1, "kappa", "w1", true)?;
    let dw0 = r.d_jet("w0")?;
    solve_coeff(&mut r, &dw0, "kappa", "z0", false)?;
    let dw1 = r.d_jet("w1")?;
    solve_coeff(&mut r, &dw1, "kappa", "z1", true)?;
    let mut jets = BTreeMap::new();
    for n in ["v0", "v1", "w0", "w1", "z0", "z1"] {
        jets.insert(n.to_string(), r.jet(n)?.cloned().unwrap_or_else(ScalarPoly::zero));
    }
    let structure = structure_of(&r, &["kappa", "eta", "lambda", "psi"])?;
    let bval: BTreeMap<Sym, ScalarPoly> = [(p.space.sym("b")?, ScalarPoly::int(b))].into();
    let mut residuals = BTreeMap::new();
    for (g, src) in LF_RANK_TWO_MC {
        residuals.insert(g.to_string(), structure[g].sub(&p.parse(src)?.substitute(&bval)?)?);
    }
    let mut constraints = BTreeMap::new();
    for n in ["a", "b", "u0", "u1", "v0", "v1", "w0", "w1"] {
        constraints.insert(format!("d{n}"), r.d_jet(n)?);
    }
    let blocks = block_check(b, &structure)?;
    Ok(RankTwoFlat { b, jets, structure, residuals, constraints, blocks })
}

/// The `u1 = 1`, `v1 = i v` branch with `b` symbolic.
#[derive(Clone, Debug)]
pub struct RankTwoGeneric {
    pub reduction: Reduction,
    /// `lambda`, `psi`, `dv0`, `dv`.
    pub derived: BTreeMap<String, Form>,
    /// `dkappa`, `deta`.
    pub structure: BTreeMap<String, Form>,
    /// Derived minus printed for `derived` and `structure`.
    pub residuals: BTreeMap<String, Form>,
    /// Restricted `du1` and `Re dv1`; both vanish.
    pub constraints: BTreeMap<String, Form>,
}

pub fn lf_rank2_generic(h3: &RankTwoH3) -> Result<RankTwoGeneric, LfError> {
    let p = lf_parser();
    let mut r = h3.reduction.clone();
    r.fix_conj("u1", ScalarPoly::one())?;
    let v = ScalarPoly::var(r.sym("v")?);
    let iv = &ScalarPoly::i() * &v;
    r.fix_conj("v1", iv)?;
    let du1 = r.d_jet("u1")?;
    r.solve_gen_mixed(&du1, "lambda")?;
    let re_dv1 = r.d_jet("v1")?.add(&r.d_jet("v1bar")?)?;
    r.solve_gen(&re_dv1, "psi")?;
    let mut derived = BTreeMap::new();
    derived.insert("lambda".to_string(), gen_of(&r, "lambda")?);
    derived.insert("psi".to_string(), gen_of(&r, "psi")?);
    derived.insert("dv0".to_string(), r.d_jet("v0")?);
    derived.insert("dv".to_string(), r.d_jet("v1")?.scale(&minus_i()));
    let structure = structure_of(&r, &["kappa", "eta"])?;
    let mut residuals = BTreeMap::new();
    for (k, src) in [("lambda", H4_LAMBDA), ("psi", H4_PSI), ("dv0", LF_R2U1_ID[0].1), ("dv", LF_R2U1_ID[1].1)] {
        residuals.insert(k.to_string(), derived[k].sub(&p.parse(src)?)?);
    }
    for (g, src) in LF_R2U1 {
        residuals.insert(format!("d{g}"), structure[g].sub(&p.parse(src)?)?);
    }
    let mut constraints = BTreeMap::new();
    constraints.insert("du1".to_string(), r.d_jet("u1")?);
    constraints.insert("Re dv1".to_string(), r.d_jet("v1")?.add(&r.d_jet("v1bar")?)?);
    Ok(RankTwoGeneric { reduction: r, derived, structure, residuals, constraints })
}

/// `d^2` of `kappa, eta, v0, v` on `H^4` with `dw0, dw1` restricted and
/// `z0, z1` open.
pub fn lf_r2u1_identity_checks(g: &RankTwoGeneric, cfg: &Config) -> Result<Vec<LfCheck>, LfError> {
    let p = lf_parser();
    let zero = Form::zero(&p.space);
    let r = &g.reduction;
    let w1 = r.d_jet("w1")?;
    let scalars = [
        ("b", zero),
        ("v0", g.derived["dv0"].clone()),
        ("v", g.derived["dv"].clone()),
        ("w0", r.d_jet("w0")?),
        ("w1", w1.clone()),
        ("w1bar", w1.conj()),
    ];
    let t = reduced_table(&g.structure, &scalars, &["z0", "z1"])?;
    let mut out = Vec::new();
    for n in ["kappa", "eta", "v0", "v"] {
        let f = t.d(&t.d(&p.parse(n)?)?)?;
        let rep = pit(&f, &cfg.seeds, &BTreeMap::new());
        let exact = f.is_zero();
        out.push(LfCheck { name: format!("d2_{n}"), max_rel: rep.max_rel, max_abs: rep.max_abs, exact, pass: exact || rep.passes(cfg.pit_tol) });
    }
    Ok(out)
}

/// A homogeneous point of the `u1 = 1` branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankTwoHomogeneous {
    pub b: i64,
    pub v: i64,
    pub v0: f64,
    /// `2 v0`.
    pub two_v0: i64,
    pub w0: i64,
    /// `dv0, dv` vanish once `w1` is real.
    pub identities_vanish: bool,
    /// `(s_kappa, s_eta)` with `kappa -> s_kappa kappa`, `eta -> s_eta eta`.
    pub flip: Option<(i64, i64)>,
}

/// `dv = 0` forces `w0 = 0` and `(v + b)(b^3 + 2v0) = 0`; `b^3 + 2v0 = 0`
/// leaves `dv0 = 2i b (etabar - eta)`, so `v = -b` and
/// `(b^3 + 2v0)^2 = -16b`, which needs `b = -1`, `v0 = (1 +- 4)/2`.
pub fn rank_two_homogeneous_points(g: &RankTwoGeneric) -> Result<Vec<RankTwoHomogeneous>, LfError> {
    let p = lf_parser();
    let s = |n: &str| p.space.sym(n);
    let mut out = Vec::new();
    for b in [1i64, -1] {
        let disc = -16 * b;
        if disc < 0 {
            continue;
        }
        let root = (disc as f64).sqrt() as i64;
        for sign in [1i64, -1] {
            let num = -b * b * b + sign * root;
            let v0 = GaussRat::ratio(num, 2);
            let v = -b;
            let mut at: BTreeMap<Sym, ScalarPoly> = BTreeMap::new();
            at.insert(s("b")?, ScalarPoly::int(b));
            at.insert(s("v")?, ScalarPoly::int(v));
            at.insert(s("v0")?, ScalarPoly::constant(v0));
            at.insert(s("w0")?, ScalarPoly::zero());
            at.insert(s("w1bar")?, ScalarPoly::var(s("w1")?));
            let identities_vanish = g.derived["dv0"].substitute(&at)?.is_zero() && g.derived["dv"].substitute(&at)?.is_zero();
            let structure: BTreeMap<String, Form> =
                g.structure.iter().map(|(k, f)| Ok((k.clone(), f.substitute(&at)?))).collect::<Result<_, LfError>>()?;
            let flip = match_up_to_sign(&structure, &V_B_NONZERO)?;
            out.push(RankTwoHomogeneous { b, v, v0: num as f64 / 2.0, two_v0: num, w0: 0, identities_vanish, flip });
        }
    }
    Ok(out)
}

/// First `(s_kappa, s_eta)` under which `structure` equals `model`.
pub fn match_up_to_sign(structure: &BTreeMap<String, Form>, model: &[(&str, &str)]) -> Result<Option<(i64, i64)>, LfError> {
    let p = lf_parser();
    let s = &p.space;
    for (sk, se) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let sign = |g: &str| match g {
            "kappa" => sk,
            "eta" | "etabar" => se,
            _ => 1,
        };
        let images: Vec<Form> =
            (0..s.len()).map(|i| Form::gen_index(s, i).scale_const(&GaussRat::from(sign(s.name(i))))).collect();
        let mut ok = true;
        for (g, src) in model {
            let f = structure
                .get(*g)
                .ok_or_else(|| LfError::Input(format!("no rule for {g}")))?
                .pullback(s, &images)?
                .scale_const(&GaussRat::from(sign(g)));
            ok &= f.sub(&p.parse(src)?)?.is_zero();
        }
        if ok {
            return Ok(Some((sk, se)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_zero(m: &BTreeMap<String, Form>) {
        for (k, v) in m {
            assert!(v.is_zero(), "{k}: {}", v.display());
        }
    }

    #[test]
    fn h3_relations() {
        let h3 = lf_rank2_h3().unwrap();
        all_zero(&h3.constraints);
        for k in ["xi", "du1", "phi1_corrected"] {
            assert!(h3.residuals[k].is_zero(), "{k}");
        }
        let p = lf_parser();
        let expect = h3.reduction.restrict(&p.f("(1/2 - i/2)*b**-2*v0*kappa")).unwrap();
        assert_eq!(h3.residuals["phi1"], expect);
    }

    #[test]
    fn flat_branch_blocks() {
        let h3 = lf_rank2_h3().unwrap();
        for (b, algebra) in [(1, "sl2R + su(2)"), (-1, "sl2R + su(1,1)")] {
            let f = lf_rank2_flat(&h3, b).unwrap();
            all_zero(&f.residuals);
            all_zero(&f.constraints);
            assert!(f.blocks.pass, "{:?}", f.blocks);
            assert_eq!(f.blocks.algebra, algebra);
            assert_eq!(f.jets["v0"], ScalarPoly::constant(GaussRat::ratio(-b, 2)));
            for n in ["v1", "w0", "w1", "z1"] {
                assert!(f.jets[n].is_zero(), "{n}");
            }
        }
        assert!(lf_rank2_flat(&h3, 2).is_err());
    }

    #[test]
    fn wrong_root_breaks_the_unitary_block() {
        let h3 = lf_rank2_h3().unwrap();
        let f = lf_rank2_flat(&h3, -1).unwrap();
        let t = reduced_table(&f.structure, &[("b", Form::zero(&lf_parser().space))], &[]).unwrap();
        assert!(!mc_residual(&t, &mat(&SU_PQ_BLOCK, "1").unwrap()).unwrap());
    }

    #[test]
    fn generic_branch_matches_print() {
        let h3 = lf_rank2_h3().unwrap();
        let g = lf_rank2_generic(&h3).unwrap();
        all_zero(&g.residuals);
        all_zero(&g.constraints);
        let checks = lf_r2u1_identity_checks(&g, &Config::default()).unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(|c| c.pass && c.exact), "{checks:?}");
    }

    #[test]
    fn homogeneous_points_are_type_v() {
        let h3 = lf_rank2_h3().unwrap();
        let g = lf_rank2_generic(&h3).unwrap();
        let pts = rank_two_homogeneous_points(&g).unwrap();
        let got: Vec<(i64, i64, i64, Option<(i64, i64)>)> = pts.iter().map(|h| (h.b, h.v, h.two_v0, h.flip)).collect();
        assert_eq!(got, vec![(-1, 1, 5, Some((1, 1))), (-1, 1, -3, Some((1, -1)))]);
        assert!(pts.iter().all(|h| h.identities_vanish));
    }

    #[test]
    fn type_v_model_closes() {
        let p = lf_parser();
        let mut t = StructureTable::new(&p.space);
        for (g, src) in V_B_NONZERO {
            t.set_gen_conj(g, p.f(src)).unwrap();
        }
        for g in ["kappa", "eta"] {
            assert!(t.d(&t.d(&p.f(g)).unwrap()).unwrap().is_zero());
        }
    }
}
