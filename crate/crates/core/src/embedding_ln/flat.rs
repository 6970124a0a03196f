//! Flat Levi-nondegenerate 3-folds: normalization of the second fundamental
//! form, rank branches and constant-coefficient embeddings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{model, structure::FSIXSE, Label, ModelValues};
use crate::exterior::{Form, GaussRat, ScalarPoly};

use super::coeffs::curvature_from_jet_symbolic;
use super::reduce::Reduction;
use super::state::{exact_string, JetState};
use super::LnError;

/// How an equation fixes its target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Solve {
    /// Target and, from the conjugate equation, its conjugate.
    Conj,
    /// Real part of the target.
    RealPart,
    /// Target alone.
    Single,
}

/// Equations `coefficient = 0` and the jet coordinate each is solved for.
pub const FLAT_SOLVE_ORDER: [(&str, &str, Solve); 16] = [
    ("S", "v1bar", Solve::Conj),
    ("P", "v2bar", Solve::Conj),
    ("R", "v3", Solve::RealPart),
    ("Q", "w1bar", Solve::Conj),
    ("U", "w2bar", Solve::Conj),
    ("V", "u4", Solve::Conj),
    ("W", "w3bar", Solve::Conj),
    ("R1p", "v4", Solve::Conj),
    ("R1pp", "w5", Solve::Conj),
    ("R0p", "w4bar", Solve::Single),
    ("R0pp", "w4", Solve::Single),
    ("Qp", "z1bar", Solve::Conj),
    ("U1p", "z2bar", Solve::Conj),
    ("U2p", "v5", Solve::Conj),
    ("Vp", "z3bar", Solve::Conj),
    ("Wp", "z4bar", Solve::Conj),
];

/// Compatibility of the rank-two reduction.
pub const FLATCOMP: &str = "eps*(9c*u1 - u1**3) - 18c**2*u1bar + 2c*u1bar*u1**2 + 54c*u3bar - 6u3bar*u1**2";

/// One solved jet coordinate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolvedJet {
    pub equation: String,
    pub target: String,
    pub value: String,
    pub terms: usize,
}

/// Runs the fixed solve order with the given coefficient values.
pub fn solve_coefficients(
    r: &mut Reduction,
    targets: &BTreeMap<&str, ScalarPoly>,
) -> Result<Vec<SolvedJet>, LnError> {
    let coeffs = curvature_from_jet_symbolic(r.epsilon)?;
    let table = r.parser.space.symbols().clone();
    let mut out = Vec::new();
    for (eq, var, how) in FLAT_SOLVE_ORDER {
        let mut e = coeffs[eq].as_scalar().unwrap_or_default();
        if let Some(v) = targets.get(eq) {
            e = &e - v;
        }
        let v = match how {
            Solve::Conj => r.solve_jet(&e, var, true)?,
            Solve::Single => r.solve_jet(&e, var, false)?,
            Solve::RealPart => r.solve_real_part(&e, var)?,
        };
        let target = if how == Solve::RealPart { format!("Re {var}") } else { var.to_string() };
        out.push(SolvedJet { equation: eq.into(), target, value: v.display(&table), terms: v.len() });
    }
    Ok(out)
}

/// `H^4`: `a = 1, b = 0`, every coefficient zero, `lambda, xi` from
/// `da = db = 0` and `psi` from `Re u2 = 0`.
pub fn flat_h4(epsilon: i64) -> Result<(Reduction, Vec<SolvedJet>), LnError> {
    let mut r = Reduction::new(epsilon)?;
    r.fix_conj("a", ScalarPoly::one())?;
    r.fix_conj("b", ScalarPoly::zero())?;
    let solved = solve_coefficients(&mut r, &BTreeMap::new())?;
    let da = r.table().scalar_rule("a").cloned().ok_or_else(|| LnError::Invariant("no rule for a".into()))?;
    r.solve_gen(&da, "lambdabar")?;
    let db = r.table().scalar_rule("b").cloned().ok_or_else(|| LnError::Invariant("no rule for b".into()))?;
    r.solve_gen(&db, "xi")?;
    let u2 = ScalarPoly::var(r.sym("u2")?);
    r.fix("u2bar", -&u2)?;
    let du2 = r.table().d(&r.f("u2 + u2bar")?)?;
    r.solve_gen(&du2, "psi")?;
    Ok((r, solved))
}

/// Sets `Im v3 = 0`.
fn real_v3(r: &mut Reduction) -> Result<(), LnError> {
    let re = r.restrict_poly(&r.parser.scalar("1/2*(v3 + v3bar)")?)?;
    let (v, vb) = (r.sym("v3")?, r.sym("v3bar")?);
    r.fix_many(&[(v, re.clone()), (vb, re)])
}

fn structure(r: &Reduction, gens: &[&str]) -> Result<BTreeMap<String, Form>, LnError> {
    gens.iter().map(|g| Ok((g.to_string(), r.structure(g)?))).collect()
}

/// `c = 0`: conditions from `dc, du1, du2` and the structure equations.
#[derive(Clone, Debug)]
pub struct FlatRankOne {
    /// `(name, restricted differential before the condition is imposed)`.
    pub conditions: Vec<(String, Form)>,
    /// Restricted differentials of `a, b, c, u1, u2, u3` after all conditions.
    pub closure: Vec<(String, Form)>,
    pub structure: BTreeMap<String, Form>,
}

pub fn flat_rank_one(h4: &Reduction) -> Result<FlatRankOne, LnError> {
    let mut r = h4.clone();
    let eps = r.epsilon;
    r.fix_conj("c", ScalarPoly::zero())?;
    let mut conditions = vec![("dc".to_string(), r.d_jet("c")?)];
    r.fix_conj("u1", ScalarPoly::zero())?;
    r.fix_conj("u3", ScalarPoly::zero())?;
    conditions.push(("du1".into(), r.d_jet("u1")?));
    let u2 = ScalarPoly::constant(GaussRat::complex_ratio(0, 1, -eps, 2));
    r.fix("u2", u2.clone())?;
    r.fix("u2bar", -&u2)?;
    conditions.push(("du2".into(), r.d_jet("u2")?));
    real_v3(&mut r)?;
    let closure = ["a", "b", "c", "u1", "u2", "u3"]
        .iter()
        .map(|n| Ok((format!("d{n}"), r.d_jet(n)?)))
        .collect::<Result<_, LnError>>()?;
    Ok(FlatRankOne { conditions, closure, structure: structure(&r, &["kappa", "eta", "rho"])? })
}

/// `c` real and nonzero: `rho` solved, structure equations and the
/// compatibility residual from differentiating `rho`.
#[derive(Clone, Debug)]
pub struct FlatRankTwo {
    pub reduction: Reduction,
    pub rho: Form,
    pub structure: BTreeMap<String, Form>,
    /// `d(rho) - (drho)` on `H^5`.
    pub compatibility: Form,
}

pub fn flat_rank_two(h4: &Reduction) -> Result<FlatRankTwo, LnError> {
    let mut r = h4.clone();
    let c = ScalarPoly::var(r.sym("c")?);
    r.fix("cbar", c)?;
    let eq = r.table().d(&r.f("c - cbar")?)?;
    let rho = r.solve_gen(&eq, "rho")?;
    let compatibility = r.d(&rho)?.sub(&r.structure("rho")?)?;
    Ok(FlatRankTwo { rho, structure: structure(&r, &["kappa", "eta"])?, compatibility, reduction: r })
}

/// Constant-coefficient rank-two embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatConstant {
    pub epsilon: i64,
    pub u1: GaussRat,
    pub c: GaussRat,
    pub u2: GaussRat,
    pub u3: GaussRat,
    /// Every restricted differential of `c, u1, u2, u3` and the
    /// compatibility residual vanish identically.
    pub exact: bool,
}

impl FlatConstant {
    pub fn to_json(&self) -> Value {
        json!({
            "epsilon": self.epsilon,
            "u1": exact_string(&self.u1),
            "c": exact_string(&self.c),
            "u2": exact_string(&self.u2),
            "u3": exact_string(&self.u3),
            "exact": self.exact,
        })
    }
}

/// `c = u1^2/9, u3 = u1^3/3, u2 = -i(3eps + |u1|^2)/6, Im v3 = 0` with `u1`
/// real (`imaginary = false`) or imaginary, `u1` left symbolic.
fn constant_ansatz(two: &FlatRankTwo, imaginary: bool) -> Result<Reduction, LnError> {
    let mut r = two.reduction.clone();
    let eps = r.epsilon;
    let u1 = ScalarPoly::var(r.sym("u1")?);
    let sign = if imaginary { -1 } else { 1 };
    r.fix("u1bar", u1.scale(&GaussRat::from(sign)))?;
    r.fix("c", r.parser.scalar("1/9*u1**2")?)?;
    r.fix("u3", r.parser.scalar("1/3*u1**3")?)?;
    r.fix("u3bar", r.parser.scalar(&format!("{sign}/3*u1**3"))?)?;
    let u2 = r.parser.scalar(&format!("-i/6*(3*{eps} + {sign}*u1**2)"))?;
    r.fix("u2", u2.clone())?;
    r.fix("u2bar", -&u2)?;
    real_v3(&mut r)?;
    Ok(r)
}

/// Coefficients of a univariate polynomial in `x`, lowest degree first.
fn univariate(p: &ScalarPoly, x: crate::exterior::Sym) -> Option<Vec<GaussRat>> {
    let mut out: Vec<GaussRat> = Vec::new();
    for (m, c) in p.terms() {
        if m.0.iter().any(|&(s, _)| s != x) {
            return None;
        }
        let e = usize::try_from(m.exponent(x)).ok()?;
        if out.len() <= e {
            out.resize(e + 1, GaussRat::from(0));
        }
        out[e] = &out[e] + c;
    }
    Some(out)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

fn components(f: &Form) -> Vec<ScalarPoly> {
    f.terms().map(|(_, p)| p.clone()).collect()
}

/// Constant solutions of the rank-two reduction.
pub fn flat_constant_solutions(two: &FlatRankTwo) -> Result<Vec<FlatConstant>, LnError> {
    let eps = two.reduction.epsilon;
    let mut out = Vec::new();
    for imaginary in [false, true] {
        let r = constant_ansatz(two, imaginary)?;
        let x = r.sym("u1")?;
        let mut residuals = Vec::new();
        for n in ["c", "u1", "u2", "u3"] {
            residuals.extend(components(&r.d_jet(n)?));
        }
        let comp = r.restrict(&two.compatibility)?;
        residuals.extend(components(&comp));
        // Each residual is u1^k (p + q u1^2); solve the first nontrivial one for u1^2.
        let mut u1_sq: Option<GaussRat> = None;
        for res in &residuals {
            let Some(coeffs) = univariate(res, x) else {
                return Err(LnError::Invariant("constant ansatz leaves free jets".into()));
            };
            let nz: Vec<(usize, &GaussRat)> = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if nz.len() == 2 && nz[1].0 == nz[0].0 + 2 {
                u1_sq = Some(-&(nz[0].1 / nz[1].1));
                break;
            }
        }
        let Some(q) = u1_sq else { continue };
        if !q.im.is_zero() {
            continue;
        }
        // |u1|^2 must be positive: u1^2 > 0 when real, < 0 when imaginary.
        let q_abs = if imaginary { -q.re.clone() } else { q.re.clone() };
        let Some(root) = rational_sqrt(&q_abs) else { continue };
        if root.is_zero() {
            continue;
        }
        for s in [1i64, -1] {
            let mag = &root * BigRational::from_integer(BigInt::from(s));
            let u1 = if imaginary { GaussRat::new(BigRational::zero(), mag) } else { GaussRat::new(mag, BigRational::zero()) };
            let at: BTreeMap<_, _> = [(x, ScalarPoly::constant(u1.clone()))].into();
            let exact = residuals
                .iter()
                .all(|p| p.substitute(&at).is_some_and(|v| v.is_zero()));
            let val = |name: &str| -> Result<GaussRat, LnError> {
                let p = r.jet(name)?.cloned().unwrap_or_default().substitute(&at).unwrap_or_default();
                Ok(if p.is_zero() { GaussRat::from(0) } else { p.as_constant().unwrap_or_else(|| GaussRat::from(0)) })
            };
            out.push(FlatConstant { epsilon: eps, c: val("c")?, u2: val("u2")?, u3: val("u3")?, u1, exact });
        }
    }
    Ok(out)
}

/// Printed compatibility polynomial at exact values.
pub fn flatcomp_value(epsilon: i64, u1: &GaussRat, c: &GaussRat, u3: &GaussRat) -> Result<GaussRat, LnError> {
    let mut r = Reduction::new(epsilon)?;
    r.fix_conj("u1", ScalarPoly::constant(u1.clone()))?;
    r.fix_conj("c", ScalarPoly::constant(c.clone()))?;
    r.fix_conj("u3", ScalarPoly::constant(u3.clone()))?;
    let v = r.restrict_poly(&r.parser.scalar(FLATCOMP)?)?;
    Ok(if v.is_zero() { GaussRat::from(0) } else { v.as_constant().unwrap_or_else(|| GaussRat::from(0)) })
}

/// Result of carrying a constant solution to the catalog coframe.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformCheck {
    pub label: String,
    /// Residuals of `dkappa'` and `deta'` against the catalog structure equations.
    pub residuals: BTreeMap<String, String>,
    pub exact: bool,
    pub pass: bool,
}

/// Applies `(2/9) [[2|u1|^2, 0], [-9i|u1|^2, 3u1]]` to `(kappa, eta)` and
/// compares with the structure equations of `(VI_3, E)`.
pub fn transform_to_vi3e(two: &FlatRankTwo, sol: &FlatConstant) -> Result<TransformCheck, LnError> {
    let mut r = two.reduction.clone();
    r.fix_conj("u1", ScalarPoly::constant(sol.u1.clone()))?;
    r.fix("c", ScalarPoly::constant(sol.c.clone()))?;
    r.fix_conj("u3", ScalarPoly::constant(sol.u3.clone()))?;
    r.fix("u2", ScalarPoly::constant(sol.u2.clone()))?;
    r.fix("u2bar", ScalarPoly::constant(-&sol.u2))?;
    real_v3(&mut r)?;
    let n = sol.u1.norm_sqr();
    let n = GaussRat::new(n, BigRational::zero());
    let k = |g: GaussRat| format!("({})", exact_string(&g));
    let two9 = GaussRat::ratio(2, 9);
    let kp = format!("{}*kappa", k(&(&two9 * &GaussRat::from(2)) * &n));
    let ep = format!(
        "{}*kappa + {}*eta",
        k(&(&two9 * &GaussRat::from_ints(0, -9)) * &n),
        k(&two9 * &(&GaussRat::from(3) * &sol.u1))
    );
    let spec = model(Label::VI3E, &BTreeMap::new()).map_err(|e| LnError::Input(e.to_string()))?;
    let ModelValues::Exact { a, b, c, .. } = &spec.values else {
        return Err(LnError::Invariant("(VI_3, E) is not exact".into()));
    };
    let mut p = r.parser.clone();
    p.bind("A", crate::exterior::Form::constant(&p.space, a.clone()));
    p.bind("Abar", crate::exterior::Form::constant(&p.space, a.conj()));
    p.bind("B", crate::exterior::Form::constant(&p.space, b.clone()));
    p.bind("C", crate::exterior::Form::constant(&p.space, c.clone()));
    let kappa_p = p.parse(&kp)?;
    let eta_p = p.parse(&ep)?;
    p.bind("kappa", kappa_p.clone()).bind("eta", eta_p.clone()).bind("etabar", eta_p.conj());
    let mut residuals = BTreeMap::new();
    let mut exact = true;
    for ((g, rhs), lhs) in FSIXSE.iter().zip([&kappa_p, &eta_p]) {
        let res = r.d(lhs)?.sub(&r.restrict(&p.parse(rhs)?)?)?;
        exact &= res.is_zero();
        residuals.insert(format!("d{g}"), res.display());
    }
    Ok(TransformCheck { label: Label::VI3E.to_string(), residuals, exact, pass: exact })
}

/// Outcome of the flat classification.
#[derive(Clone, Debug)]
pub struct FlatEmbedding {
    pub epsilon: i64,
    pub solved: Vec<SolvedJet>,
    pub lambda: Form,
    pub xi: Form,
    pub psi: Form,
    pub rank_one: FlatRankOne,
    pub rank_two: FlatRankTwo,
    pub constant: Vec<FlatConstant>,
}

/// Classifies flat embeddings; refuses states with `a = 0`.
pub fn solve_flat(state: &JetState) -> Result<FlatEmbedding, LnError> {
    state.validate()?;
    if state.get("a").is_zero() {
        return Err(LnError::Input("a = 0: the second fundamental form vanishes".into()));
    }
    let (h4, solved) = flat_h4(state.epsilon)?;
    let g = |n: &str| -> Result<Form, LnError> {
        h4.gen(n)?.cloned().ok_or_else(|| LnError::Invariant(format!("{n} not solved")))
    };
    let (lambda, xi, psi) = (g("lambda")?, g("xi")?, g("psi")?);
    let rank_one = flat_rank_one(&h4)?;
    let rank_two = flat_rank_two(&h4)?;
    let constant = flat_constant_solutions(&rank_two)?;
    Ok(FlatEmbedding { epsilon: state.epsilon, solved, lambda, xi, psi, rank_one, rank_two, constant })
}

fn forms_json(m: &BTreeMap<String, Form>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), json!(v.display()))).collect())
}

fn pairs_json(v: &[(String, Form)]) -> Value {
    Value::Object(v.iter().map(|(k, f)| (k.clone(), json!(f.display()))).collect())
}

impl FlatEmbedding {
    pub fn to_json(&self) -> Value {
        json!({
            "epsilon": self.epsilon,
            "solved": self.solved,
            "lambda": self.lambda.display(),
            "xi": self.xi.display(),
            "psi": self.psi.display(),
            "rank_one": {
                "conditions": pairs_json(&self.rank_one.conditions),
                "structure": forms_json(&self.rank_one.structure),
            },
            "rank_two": {
                "rho": self.rank_two.rho.display(),
                "structure": forms_json(&self.rank_two.structure),
                "compatibility": self.rank_two.compatibility.display(),
            },
            "constant": self.constant.iter().map(FlatConstant::to_json).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding_ln::jet::parser;

    fn flat(eps: i64) -> FlatEmbedding {
        solve_flat(&JetState::symbolic(eps).unwrap()).unwrap()
    }

    #[test]
    fn normalized_forms_match_printed() {
        for eps in [1, -1] {
            let f = flat(eps);
            let p = parser(eps);
            let p4 = |s: &str| f.rank_two.reduction.restrict(&p.f(s)).unwrap();
            assert_eq!(f.lambda, p.f("-3i*rho + u1bar*etabar + u2bar*kappa").substitute(&[(p.space.sym("u2bar").unwrap(), -&p.scalar("u2").unwrap())].into()).unwrap());
            assert_eq!(f.xi, p.f("-i*c*etabar - u2*eta - u3*kappa"));
            let psi = p.f(
                "(5/4 + 7c*cbar + eps*5/12*u1*u1bar - 3u2**2 - i/6*u2*(8u1*u1bar + 27eps) - c*u1**2 - cbar*u1bar**2 \
                 + 1/2*u1*u3 + 1/2*u1bar*u3bar)*kappa \
                 + i/4*(8cbar*u1bar - 5eps*u1 + 8i*u1*u2 - 10u3bar)*eta \
                 - i/4*(8c*u1 - 5eps*u1bar + 8i*u1bar*u2 - 10u3)*etabar",
            );
            assert_eq!(f.psi, psi, "eps={eps}");
            let rho = p4(
                "1/96*c**-1*(eps*(18c + u1**2 + u1bar**2) + 6(u1*u3bar + u1bar*u3) - 4c*u1*u1bar)*kappa \
                 + i/16*c**-1*(3u1*c - u3)*eta - i/16*c**-1*(3u1bar*c - u3bar)*etabar",
            );
            assert_eq!(f.rank_two.rho, rho);
            let dk = p4("i*eta^etabar - kappa^(u1*eta + u1bar*etabar)");
            let de = p4(
                "-1/4*c**-1*(c*u1bar + u3bar)*eta^etabar \
                 - i/24*c**-1*(eps*(18c + u1**2 + u1bar**2) + 6(u1*u3bar + u1bar*u3) - 4c*u1*u1bar - 48i*c*u2)*kappa^eta \
                 - i*c*kappa^etabar",
            );
            assert_eq!(f.rank_two.structure["kappa"], dk);
            assert_eq!(f.rank_two.structure["eta"], de);
        }
    }

    #[test]
    fn compatibility_is_the_printed_polynomial() {
        for eps in [1, -1] {
            let f = flat(eps);
            let r = &f.rank_two.reduction;
            let p = parser(eps);
            let fc = r.restrict_poly(&p.scalar(FLATCOMP).unwrap()).unwrap();
            let c_inv = p.scalar("-1/48*c**-1").unwrap();
            let want = r.restrict(&p.f("kappa^eta")).unwrap().scale(&(&fc * &c_inv));
            let want = want.add(&want.conj()).unwrap();
            let want = r.restrict(&want).unwrap();
            assert_eq!(f.rank_two.compatibility, want, "eps={eps}");
        }
    }

    #[test]
    fn rank_one_branch() {
        for eps in [1, -1] {
            let f = flat(eps);
            let p = parser(eps);
            let one = &f.rank_one;
            assert_eq!(one.conditions[0].1, p.f("(i*u1bar*u3 + eps*i/6*u1bar**2)*kappa + u3*eta"));
            assert_eq!(one.conditions[1].1, p.f("(-3eps + 6i*u2)*etabar"));
            assert_eq!(one.conditions[2].1, p.f("1/2*(v3 - v3bar)*kappa"));
            assert!(one.closure.iter().all(|(_, f)| f.is_zero()));
            assert_eq!(one.structure["kappa"], p.f("i*eta^etabar"));
            assert_eq!(one.structure["eta"], p.f("i*(eps*kappa - 4rho)^eta"));
            assert!(one.structure["rho"].is_zero());
        }
    }

    #[test]
    fn constant_solutions_only_for_split_signature() {
        assert!(flat(1).constant.is_empty());
        let f = flat(-1);
        let mut u1s: Vec<String> = f.constant.iter().map(|s| s.u1.to_string()).collect();
        u1s.sort();
        assert_eq!(u1s, ["-3/4", "-3/4i", "3/4", "3/4i"]);
        for s in &f.constant {
            assert!(s.exact);
            assert_eq!(&s.c, &(&(&s.u1 * &s.u1) / &GaussRat::from(9)));
            assert_eq!(&s.u3, &(&(&(&s.u1 * &s.u1) * &s.u1) / &GaussRat::from(3)));
        }
    }

    #[test]
    fn flatcomp_vanishes_at_the_constant_solution() {
        let v = flatcomp_value(-1, &GaussRat::ratio(3, 4), &GaussRat::ratio(1, 16), &GaussRat::ratio(9, 64)).unwrap();
        assert!(v.is_zero());
        let w = flatcomp_value(-1, &GaussRat::ratio(3, 4), &GaussRat::ratio(1, 8), &GaussRat::ratio(9, 64)).unwrap();
        assert!(!w.is_zero());
    }

    #[test]
    fn constant_solution_is_vi3e() {
        let f = flat(-1);
        for s in &f.constant {
            let t = transform_to_vi3e(&f.rank_two, s).unwrap();
            if s.u1 == GaussRat::ratio(3, 4) {
                assert!(t.pass, "{t:?}");
            }
        }
    }

    #[test]
    fn zero_leading_coefficient_is_refused() {
        let s = JetState::symbolic(1).unwrap().with("a", 0).unwrap();
        assert!(matches!(solve_flat(&s), Err(LnError::Input(_))));
    }
}
