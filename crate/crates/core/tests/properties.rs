//! Invariants checked on random inputs.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crembed::cli::{Check, Report, Status};
use crembed::config::Config;
use crembed::exterior::{Form, GaussRat, ScalarPoly, Space, StructureTable, SymbolTable};
use crembed::kerr::congruence::twistor;
use crembed::kerr::metric::{flat_fixture, heisenberg_fixture, metric, transform_check, Coframe};
use crembed::kerr::{lift_metric, quadric_image, solve_zeta_any, Adapted, CongruenceSpec, HPoly, MinkowskiPoint};
use crembed::unitary_frames::{random_p0_params, subgroup_membership, GroupElement, Subgroup};

fn gr(re: i64, im: i64, den: i64) -> GaussRat {
    GaussRat::complex_ratio(re, den, im, den)
}

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-20i64..20, -20i64..20, 1i64..9).prop_map(|(r, i, d)| gr(r, i, d))
}

/// Heisenberg coframe with a real function `x`, `dx = eta + etabar`.
fn heisenberg() -> (Arc<Space>, StructureTable) {
    let mut syms = SymbolTable::new();
    syms.declare_real("x").unwrap();
    let s = Space::builder(Arc::new(syms)).real("kappa").complex_bar("eta").build().unwrap();
    let mut t = StructureTable::new(&s);
    let e = Form::gen(&s, "eta").unwrap();
    let eb = Form::gen(&s, "etabar").unwrap();
    t.set_gen("kappa", e.wedge(&eb).unwrap().scale(&ScalarPoly::i())).unwrap();
    t.set_gen_conj("eta", Form::zero(&s)).unwrap();
    t.set_scalar("x", e.add(&eb).unwrap()).unwrap();
    (s, t)
}

/// `sum_k c_k x^k` for `k < coeffs.len()`.
fn poly_in_x(s: &Arc<Space>, coeffs: &[GaussRat]) -> ScalarPoly {
    let x = ScalarPoly::var(s.sym("x").unwrap());
    let mut p = ScalarPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        p = &p + &x.pow(k as i32).unwrap().scale(c);
    }
    p
}

/// One-form `p0 kappa + p1 eta + p2 etabar` with polynomial coefficients.
fn one_form(s: &Arc<Space>, c: &[Vec<GaussRat>; 3]) -> Form {
    let mut f = Form::zero(s);
    for (g, cs) in ["kappa", "eta", "etabar"].iter().zip(c) {
        f = f.add(&Form::gen(s, g).unwrap().scale(&poly_in_x(s, cs))).unwrap();
    }
    f
}

fn coeff_triple() -> impl Strategy<Value = [Vec<GaussRat>; 3]> {
    [prop::collection::vec(gauss(), 0..3), prop::collection::vec(gauss(), 0..3), prop::collection::vec(gauss(), 0..3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_rationals_form_a_field(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv().unwrap(), GaussRat::one());
        }
        let z = a.to_c64() * b.to_c64();
        prop_assert!(((a * b).to_c64() - z).norm() <= 1e-12 * z.norm().max(1.0));
    }

    #[test]
    fn wedge_is_graded_commutative(p in coeff_triple(), q in coeff_triple()) {
        let (s, _) = heisenberg();
        let (a, b) = (one_form(&s, &p), one_form(&s, &q));
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().neg());
        prop_assert!(a.wedge(&a).unwrap().is_zero());
        prop_assert_eq!(a.wedge(&b).unwrap().conj(), a.conj().wedge(&b.conj()).unwrap());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn d_squared_vanishes_and_leibniz_holds(p in coeff_triple(), f in prop::collection::vec(gauss(), 0..4)) {
        let (s, t) = heisenberg();
        let a = one_form(&s, &p);
        let g = Form::scalar(&s, poly_in_x(&s, &f));
        prop_assert!(t.d(&t.d(&a).unwrap()).unwrap().is_zero());
        prop_assert!(t.d(&t.d(&g).unwrap()).unwrap().is_zero());
        let lhs = t.d(&g.wedge(&a).unwrap()).unwrap();
        let rhs = t.d(&g).unwrap().wedge(&a).unwrap().add(&g.wedge(&t.d(&a).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn p0_samples_are_members(seed in any::<u64>(), split in any::<bool>(), flip in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (eps, sign) = if split { (-1, if flip { -1 } else { 1 }) } else { (1, 1) };
        let p = random_p0_params(&mut rng, eps, sign);
        let g = GroupElement::p0(eps, &p).unwrap();
        prop_assert_eq!(g.isometry_residual(sign), 0.0);
        prop_assert!(subgroup_membership(&g, Subgroup::P0, 0.0).unwrap().member);
    }
}

fn point() -> impl Strategy<Value = MinkowskiPoint> {
    (-2.0f64..2.0, 0.2f64..2.0, -2.0f64..2.0, -2.0f64..2.0).prop_map(|(u, v, x, y)| MinkowskiPoint::new(u, v, Complex64::new(x, y)))
}

fn disk(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0f64..r, 0.0f64..std::f64::consts::TAU).prop_map(|(m, t)| Complex64::from_polar(m, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_twistor_lies_on_the_quadric(p in point(), zeta in disk(3.0)) {
        let q = quadric_image(&p, zeta);
        let scale = (1.0 + zeta.norm()).powi(2) * (1.0 + p.u.abs() + p.v.abs() + p.w.norm());
        prop_assert!(q.residual <= 1e-15 * scale, "{}", q.residual);
        let z = twistor(&p, zeta);
        let direct = Complex64::new(0.0, 1.0) * (z[0] - z[0].conj() + z[1] * z[2].conj() - z[2] * z[1].conj());
        prop_assert!((direct.norm() - q.residual).abs() <= 1e-15 * scale);
    }

    #[test]
    fn printed_h_parses_back(seed in any::<u64>(), deg in 1u32..4, z in [disk(2.0), disk(2.0), disk(2.0)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = HPoly::random(&mut rng, deg);
        let back = HPoly::parse(&h.to_string()).unwrap();
        let (a, b) = (h.eval(z), back.eval(z));
        prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1.0), "{} vs {}", a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linear_congruences_solve_h(seed in any::<u64>(), p in point()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = HPoly::random(&mut rng, 1);
        let Ok(spec) = CongruenceSpec::implicit(h.clone()) else { return Ok(()) };
        if let Ok(zeta) = solve_zeta_any(&spec, &p, None) {
            let z = twistor(&p, zeta);
            prop_assert!(h.eval(z).norm() <= 1e-10);
            prop_assert!(quadric_image(&p, zeta).residual <= 1e-12 * (1.0 + zeta.norm_sqr()));
        }
    }

    #[test]
    fn lifted_flat_metric_is_lorentzian(zeta in disk(3.0), seed in any::<u64>()) {
        let r = lift_metric(&flat_fixture(zeta), 8, seed, None, &Config::default()).unwrap();
        prop_assert!(r.signature_ok);
        prop_assert_eq!(r.signature, Some((1, 3)));
        prop_assert!(r.null_residual == 0.0 && r.contraction_residual == 0.0);
        prop_assert!(r.lie_kappa == 0.0 && r.lie_eta == 0.0);
    }

    #[test]
    fn adapted_change_is_conformal_plus_kappa_term(
        u in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0],
        a in disk(2.0).prop_filter("a != 0", |a| a.norm() > 0.05),
        b in disk(2.0),
        x in [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0],
    ) {
        let v = heisenberg_fixture().at(x);
        let t = Adapted::new(u, a, b).unwrap();
        let g0 = metric(&v);
        let g1 = metric(&t.apply(&v));
        let f = a.norm_sqr();
        let xi: [f64; 4] = std::array::from_fn(|i| {
            (u - f) * v.rho[i] - b.norm_sqr() * v.kappa[i] - 2.0 * (a * b.conj() * v.eta[i]).re
        });
        for i in 0..4 {
            for j in 0..4 {
                let want = f * g0[(i, j)] + v.kappa[i] * xi[j] + xi[i] * v.kappa[j];
                prop_assert!((g1[(i, j)] - want).abs() <= 1e-10 * (1.0 + want.abs()), "({i},{j})");
            }
        }
        let chk = transform_check(&v, &t);
        prop_assert_eq!(chk.f, f);
        prop_assert!(chk.residual <= 1e-10);
    }

    #[test]
    fn reports_sort_and_round_trip(
        rows in prop::collection::vec(("[a-z]{1,6}", 0.0f64..2.0, prop::option::of(0.0f64..1.0)), 0..12),
        seed in any::<u64>(),
    ) {
        let checks: Vec<Check> = rows.iter().map(|(n, r, t)| match t {
            Some(t) => Check::within(n.clone(), *r, *t),
            None => Check::skipped(n.clone()),
        }).collect();
        let any_fail = checks.iter().any(|c| c.status == Status::Fail);
        let rep = Report::new("prop".into(), &json!({"n": rows.len()}), seed, checks, json!({"seed": seed}));
        prop_assert!(rep.checks.windows(2).all(|w| w[0].name <= w[1].name));
        prop_assert_eq!(rep.exit_code(), i32::from(any_fail));
        let text = rep.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(&back, &rep);
    }
}
