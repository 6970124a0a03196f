//! Model records of the homogeneous catalog.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exterior::{FormParser, GaussRat, ScalarPoly, Space, Sym, SymbolTable};

use super::CatalogError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    IIA,
    IIIB,
    IVF,
    VI3E,
    VItE,
    VItGeneral,
    VIItH,
    VIIIC,
    VIIIK,
    IXD,
    IXL,
}

impl Label {
    pub const ALL: [Label; 11] = [
        Label::IIA,
        Label::IIIB,
        Label::IVF,
        Label::VI3E,
        Label::VItE,
        Label::VItGeneral,
        Label::VIItH,
        Label::VIIIC,
        Label::VIIIK,
        Label::IXD,
        Label::IXL,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::IIA => "II,A",
            Label::IIIB => "III,B",
            Label::IVF => "IV,F",
            Label::VI3E => "VI_3,E",
            Label::VItE => "VI_t,E",
            Label::VItGeneral => "VI_t,general",
            Label::VIItH => "VII_t,H",
            Label::VIIIC => "VIII,C",
            Label::VIIIK => "VIII,K",
            Label::IXD => "IX,D",
            Label::IXL => "IX,L",
        }
    }

    pub fn bianchi(self) -> &'static str {
        match self {
            Label::IIA => "II",
            Label::IIIB => "III",
            Label::IVF => "IV",
            Label::VI3E | Label::VItE | Label::VItGeneral => "VI_t",
            Label::VIItH => "VII_t",
            Label::VIIIC | Label::VIIIK => "VIII",
            Label::IXD | Label::IXL => "IX",
        }
    }

    pub fn cartan(self) -> &'static str {
        match self {
            Label::IIA => "A",
            Label::IIIB => "B",
            Label::IVF => "F",
            Label::VI3E | Label::VItE | Label::VItGeneral => "E",
            Label::VIItH => "H",
            Label::VIIIC => "C",
            Label::VIIIK => "K",
            Label::IXD => "D",
            Label::IXL => "L",
        }
    }

    pub fn is_flat(self) -> bool {
        matches!(self, Label::IIA | Label::IIIB | Label::VI3E | Label::VIIIC | Label::IXD)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '.' { ',' } else { c })
            .collect::<String>()
            .to_ascii_uppercase();
        Label::ALL
            .into_iter()
            .find(|l| l.as_str().to_ascii_uppercase() == norm || (norm == "III=VI_1,B" && *l == Label::IIIB))
            .ok_or_else(|| CatalogError::UnknownLabel(s.to_string()))
    }
}

/// Constants `A, B, C, S` of a model.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelValues {
    Exact { a: GaussRat, b: GaussRat, c: GaussRat, s: GaussRat },
    /// Polynomials in the catalog symbols (`B`, or `t` and `m`).
    Symbolic { a: ScalarPoly, b: ScalarPoly, c: ScalarPoly, s: ScalarPoly },
    Numeric { a: Complex64, b: f64, c: f64, s: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub label: Label,
    pub params: BTreeMap<String, f64>,
    pub values: ModelValues,
}

/// Symbols `A, Abar, B, C, t, m, S, Sbar` and the coframe `kappa, eta, etabar`.
pub struct CatalogSpace {
    pub space: Arc<Space>,
    pub a: Sym,
    pub abar: Sym,
    pub b: Sym,
    pub c: Sym,
    pub t: Sym,
    pub m: Sym,
    pub s: Sym,
    pub sbar: Sym,
}

pub fn catalog_space() -> &'static CatalogSpace {
    static CELL: OnceLock<CatalogSpace> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut t = SymbolTable::new();
        let (a, abar) = t.declare_complex("A", "Abar").expect("fresh");
        let b = t.declare_real("B").expect("fresh");
        let c = t.declare_real("C").expect("fresh");
        let tt = t.declare_real("t").expect("fresh");
        let m = t.declare_real("m").expect("fresh");
        let (s, sbar) = t.declare_complex("S", "Sbar").expect("fresh");
        let space = Space::builder(Arc::new(t)).real("kappa").complex_bar("eta").build().expect("fresh");
        CatalogSpace { space, a, abar, b, c, t: tt, m, s, sbar }
    })
}

impl CatalogSpace {
    pub fn parser(&self) -> FormParser {
        FormParser::new(&self.space)
    }
}

fn exact(v: f64) -> Result<BigRational, CatalogError> {
    BigRational::from_float(v).ok_or_else(|| CatalogError::Param(format!("non-finite value {v}")))
}

fn require(params: &BTreeMap<String, f64>, key: &str) -> Result<f64, CatalogError> {
    params.get(key).copied().ok_or_else(|| CatalogError::Param(format!("missing parameter {key}")))
}

/// Roots `m^2 > 0` of `i^2 (t^2 - m^2)(t^2 - 9 m^2) = 96`, descending.
pub fn six_e_m_squared_roots(t: f64, iota2: f64) -> Vec<f64> {
    let disc = 64.0 * t.powi(4) + 3456.0 * iota2;
    if disc < 0.0 {
        return vec![];
    }
    let r = disc.sqrt();
    [(10.0 * t * t + r) / 18.0, (10.0 * t * t - r) / 18.0].into_iter().filter(|&x| x > 0.0).collect()
}

/// Default root: the larger `m^2` for `iota = 1`, the smaller for `iota = i`.
pub fn six_e_m(t: f64, iota2: f64, root: usize) -> Result<f64, CatalogError> {
    let roots = six_e_m_squared_roots(t, iota2);
    let order: Vec<f64> = if iota2 > 0.0 { roots } else { roots.into_iter().rev().collect() };
    order
        .get(root)
        .map(|x| x.sqrt())
        .ok_or_else(|| CatalogError::Param(format!("no root {root} with S = 1 at t = {t}, iota^2 = {iota2}")))
}

fn iota2(params: &BTreeMap<String, f64>) -> Result<f64, CatalogError> {
    let v = params.get("iota2").copied().unwrap_or(1.0);
    if v == 1.0 || v == -1.0 {
        Ok(v)
    } else {
        Err(CatalogError::Param("iota2 must be 1 or -1".into()))
    }
}

pub fn model(label: Label, params: &BTreeMap<String, f64>) -> Result<ModelSpec, CatalogError> {
    let ex = |a: GaussRat, b: i64, c: i64, s: i64| ModelValues::Exact {
        a,
        b: GaussRat::from(b),
        c: GaussRat::from(c),
        s: GaussRat::from(s),
    };
    let cs = catalog_space();
    let values = match label {
        Label::IIA => ex(GaussRat::from(0), 0, 0, 0),
        Label::IIIB => ex(GaussRat::from(1), 2, 2, 0),
        Label::VI3E => ex(GaussRat::from(3), 20, 20, 0),
        Label::VIIIC => ex(GaussRat::from(0), -1, 0, 0),
        Label::IXD => ex(GaussRat::from(0), 1, 0, 0),
        Label::IVF => {
            let six = 6f64;
            ModelValues::Numeric { a: Complex64::new(2.0 * six.powf(0.25), 0.0), b: 9.0 * six.sqrt(), c: 9.0 * six.sqrt(), s: 1.0 }
        }
        Label::VIItH => {
            let t = require(params, "t")?;
            if t <= 0.0 {
                return Err(CatalogError::Param("t must be positive".into()));
            }
            let q = 6.0 * t.powi(4) + 60.0 * t * t + 54.0;
            let a = 2.0 * t * 6f64.sqrt() / q.powf(0.25);
            let bc = (54.0 * t * t + 6.0) / q.sqrt();
            ModelValues::Numeric { a: Complex64::new(a, 0.0), b: bc, c: bc, s: 1.0 }
        }
        Label::VIIIK | Label::IXL => {
            let sign = if label == Label::VIIIK { -1.0 } else { 1.0 };
            match params.get("B") {
                None => {
                    let b = ScalarPoly::var(cs.b);
                    let c = b.inverse().expect("monomial").scale(&GaussRat::ratio(2, 3));
                    ModelValues::Symbolic { a: ScalarPoly::zero(), b, c, s: ScalarPoly::one() }
                }
                Some(&bv) => {
                    if bv * sign <= 0.0 {
                        return Err(CatalogError::Param(format!("B has the wrong sign for {label}")));
                    }
                    let b = GaussRat::from(exact(bv)?);
                    let c = &GaussRat::ratio(2, 3) / &b;
                    ModelValues::Exact { a: GaussRat::from(0), b, c, s: GaussRat::from(1) }
                }
            }
        }
        Label::VItE => {
            let t = require(params, "t")?;
            if t <= 0.0 || t == 1.0 || t == 3.0 {
                return Err(CatalogError::Param("t must be positive and different from 1 and 3".into()));
            }
            let i2 = iota2(params)?;
            let root = params.get("root").copied().unwrap_or(0.0) as usize;
            let m = six_e_m(t, i2, root)?;
            let a = if i2 > 0.0 { Complex64::new(t, 0.0) } else { Complex64::new(0.0, t) };
            let b = (9.0 * t * t - m * m) / 4.0;
            ModelValues::Numeric { a, b, c: i2 * b, s: 1.0 }
        }
        Label::VItGeneral => {
            let i2 = iota2(params)? as i64;
            let p = cs.parser().with_const("iota", if i2 > 0 { GaussRat::from(1) } else { GaussRat::i() }).with_const("iota2", i2);
            let sc = |s: &str| p.scalar(s).expect("static expression");
            ModelValues::Symbolic {
                a: sc("iota*t"),
                b: sc("(9t**2 - m**2)/4"),
                c: sc("iota2*(9t**2 - m**2)/4"),
                s: sc("iota2*(t**2 - m**2)*(t**2 - 9m**2)/96"),
            }
        }
    };
    Ok(ModelSpec { label, params: params.clone(), values })
}

impl ModelSpec {
    /// Numeric `(A, B, C, S)`; symbolic entries need their free symbols in `at`.
    pub fn numeric(&self, at: &BTreeMap<Sym, f64>) -> (Complex64, f64, f64, f64) {
        match &self.values {
            ModelValues::Exact { a, b, c, s } => (a.to_c64(), b.to_c64().re, c.to_c64().re, s.to_c64().re),
            ModelValues::Numeric { a, b, c, s } => (*a, *b, *c, *s),
            ModelValues::Symbolic { a, b, c, s } => {
                let cs = catalog_space();
                let mut vals = vec![Complex64::zero(); cs.space.symbols().len()];
                for (&k, &v) in at {
                    vals[k as usize] = Complex64::new(v, 0.0);
                }
                (a.eval(&vals), b.eval(&vals).re, c.eval(&vals).re, s.eval(&vals).re)
            }
        }
    }

    /// Substitution `A, Abar, B, C, S, Sbar` for exact and symbolic models.
    pub fn substitution(&self) -> Option<BTreeMap<Sym, ScalarPoly>> {
        let cs = catalog_space();
        let table = cs.space.symbols();
        let (a, b, c, s) = match &self.values {
            ModelValues::Exact { a, b, c, s } => (
                ScalarPoly::constant(a.clone()),
                ScalarPoly::constant(b.clone()),
                ScalarPoly::constant(c.clone()),
                ScalarPoly::constant(s.clone()),
            ),
            ModelValues::Symbolic { a, b, c, s } => (a.clone(), b.clone(), c.clone(), s.clone()),
            ModelValues::Numeric { .. } => return None,
        };
        Some(BTreeMap::from([
            (cs.abar, a.conj(table)),
            (cs.a, a),
            (cs.b, b),
            (cs.c, c),
            (cs.sbar, s.conj(table)),
            (cs.s, s),
        ]))
    }

    /// Symbol values for numeric evaluation.
    pub fn numeric_values(&self) -> Option<Vec<Complex64>> {
        let cs = catalog_space();
        let ModelValues::Numeric { a, b, c, s } = &self.values else { return None };
        let mut v = vec![Complex64::zero(); cs.space.symbols().len()];
        v[cs.a as usize] = *a;
        v[cs.abar as usize] = a.conj();
        v[cs.b as usize] = Complex64::new(*b, 0.0);
        v[cs.c as usize] = Complex64::new(*c, 0.0);
        v[cs.s as usize] = Complex64::new(*s, 0.0);
        v[cs.sbar as usize] = Complex64::new(*s, 0.0);
        Some(v)
    }

    pub fn is_flat(&self) -> bool {
        match &self.values {
            ModelValues::Exact { s, .. } => s.is_zero(),
            ModelValues::Symbolic { s, .. } => s.is_zero(),
            ModelValues::Numeric { s, .. } => *s == 0.0,
        }
    }

    /// `S = 1` exactly or numerically.
    pub fn is_normalized_curved(&self) -> bool {
        match &self.values {
            ModelValues::Exact { s, .. } => s.is_one(),
            ModelValues::Symbolic { s, .. } => s.as_constant().is_some_and(|c| c.is_one()),
            ModelValues::Numeric { s, .. } => *s == 1.0,
        }
    }

    /// Constants as display strings.
    pub fn constants(&self) -> BTreeMap<String, String> {
        let table = catalog_space().space.symbols();
        let (a, b, c, s) = match &self.values {
            ModelValues::Exact { a, b, c, s } => (a.to_string(), b.to_string(), c.to_string(), s.to_string()),
            ModelValues::Symbolic { a, b, c, s } => (a.display(table), b.display(table), c.display(table), s.display(table)),
            ModelValues::Numeric { a, b, c, s } => (
                if a.im == 0.0 { format!("{:.15e}", a.re) } else { format!("{:.15e}+{:.15e}i", a.re, a.im) },
                format!("{b:.15e}"),
                format!("{c:.15e}"),
                format!("{s:.15e}"),
            ),
        };
        BTreeMap::from([("A".into(), a), ("B".into(), b), ("C".into(), c), ("S".into(), s)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for l in Label::ALL {
            assert_eq!(l.as_str().parse::<Label>().unwrap(), l);
        }
        assert_eq!("iii=vi_1,b".parse::<Label>().unwrap(), Label::IIIB);
        assert!("X,Z".parse::<Label>().is_err());
    }

    #[test]
    fn parameter_validation() {
        let p = |k: &str, v: f64| BTreeMap::from([(k.to_string(), v)]);
        assert!(model(Label::VIIIK, &p("B", 1.0)).is_err());
        assert!(model(Label::IXL, &p("B", -1.0)).is_err());
        assert!(model(Label::VIItH, &BTreeMap::new()).is_err());
        assert!(model(Label::VItE, &p("t", 3.0)).is_err());
        let k = model(Label::VIIIK, &p("B", -2.0)).unwrap();
        assert_eq!(k.values, ModelValues::Exact { a: 0.into(), b: (-2).into(), c: GaussRat::ratio(-1, 3), s: 1.into() });
    }

    #[test]
    fn six_e_root_gives_unit_curvature() {
        for (t, i2) in [(0.5, 1.0), (2.0, 1.0), (4.0, -1.0)] {
            for root in 0..2 {
                if let Ok(m) = six_e_m(t, i2, root) {
                    let s = i2 * (t * t - m * m) * (t * t - 9.0 * m * m) / 96.0;
                    assert!((s - 1.0).abs() < 1e-12);
                }
            }
        }
        assert!(six_e_m(1.0, -1.0, 0).is_err());
    }
}
