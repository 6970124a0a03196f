//! Jet states of the second fundamental form: rank, curvature evaluation
//! and the conformal behaviour of the determinant.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::config::RANK_TOL;
use crate::exterior::{Form, GaussRat, ScalarPoly, Sym};

use super::coeffs::curvature_from_jet_symbolic;
use super::jet::{parser, JET_LEVELS};
use super::LnError;

/// Value of one jet coordinate.
#[derive(Clone, Debug, PartialEq)]
pub enum JetValue {
    Symbolic,
    Exact(GaussRat),
    Numeric(Complex64),
}

impl JetValue {
    /// Zero test: exact for exact values, `RANK_TOL` for floats, never for symbols.
    pub fn is_zero(&self) -> bool {
        match self {
            JetValue::Symbolic => false,
            JetValue::Exact(g) => g == &GaussRat::from(0),
            JetValue::Numeric(z) => z.norm() <= RANK_TOL,
        }
    }

    pub fn to_c64(&self) -> Option<Complex64> {
        match self {
            JetValue::Symbolic => None,
            JetValue::Exact(g) => Some(g.to_c64()),
            JetValue::Numeric(z) => Some(*z),
        }
    }
}

impl From<GaussRat> for JetValue {
    fn from(g: GaussRat) -> Self {
        JetValue::Exact(g)
    }
}

impl From<i64> for JetValue {
    fn from(v: i64) -> Self {
        JetValue::Exact(GaussRat::from(v))
    }
}

impl From<Complex64> for JetValue {
    fn from(z: Complex64) -> Self {
        JetValue::Numeric(z)
    }
}

impl From<f64> for JetValue {
    fn from(x: f64) -> Self {
        JetValue::Numeric(Complex64::new(x, 0.0))
    }
}

/// Exact values are written as `"(re) + (im)*i"` strings, floats as
/// `[re, im]` and symbols as `null`.
impl Serialize for JetValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            JetValue::Symbolic => s.serialize_none(),
            JetValue::Exact(g) => s.serialize_str(&exact_string(g)),
            JetValue::Numeric(z) => [z.re, z.im].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for JetValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        jet_value_from_json(&v).map_err(D::Error::custom)
    }
}

pub fn exact_string(g: &GaussRat) -> String {
    let (re, im) = (&g.re, &g.im);
    format!("({re}) + ({im})*i")
}

/// Parses an exact constant such as `"3/4"` or `"-3i/4"`.
pub fn parse_exact(src: &str) -> Result<GaussRat, LnError> {
    let p = parser(1);
    let s = p.scalar(src)?;
    if s.is_zero() {
        return Ok(GaussRat::from(0));
    }
    s.as_constant().ok_or_else(|| LnError::Input(format!("not a constant: {src}")))
}

fn jet_value_from_json(v: &Value) -> Result<JetValue, String> {
    match v {
        Value::Null => Ok(JetValue::Symbolic),
        Value::String(s) if s == "symbolic" => Ok(JetValue::Symbolic),
        Value::String(s) => parse_exact(s).map(JetValue::Exact).map_err(|e| e.to_string()),
        Value::Number(n) => n.as_f64().map(JetValue::from).ok_or_else(|| "bad number".to_string()),
        Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(JetValue::Numeric(Complex64::new(re, im))),
            _ => Err("expected [re, im]".into()),
        },
        _ => Err(format!("cannot read jet value {v}")),
    }
}

/// Jet coordinates `a, b, c, u1.., v1.., w1.., z1..` over a fiber; unlisted
/// coordinates are symbolic and conjugates are implied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetState {
    pub epsilon: i64,
    #[serde(default)]
    pub values: BTreeMap<String, JetValue>,
}

pub fn jet_names() -> impl Iterator<Item = &'static str> {
    JET_LEVELS.iter().flat_map(|l| l.iter().copied())
}

impl JetState {
    pub fn symbolic(epsilon: i64) -> Result<JetState, LnError> {
        if epsilon.abs() != 1 {
            return Err(LnError::Input(format!("epsilon must be 1 or -1, got {epsilon}")));
        }
        Ok(JetState { epsilon, values: BTreeMap::new() })
    }

    pub fn with(mut self, name: &str, v: impl Into<JetValue>) -> Result<JetState, LnError> {
        if !jet_names().any(|n| n == name) {
            return Err(LnError::Input(format!("unknown jet coordinate {name}")));
        }
        self.values.insert(name.to_string(), v.into());
        Ok(self)
    }

    pub fn get(&self, name: &str) -> JetValue {
        self.values.get(name).cloned().unwrap_or(JetValue::Symbolic)
    }

    pub fn validate(&self) -> Result<(), LnError> {
        if self.epsilon.abs() != 1 {
            return Err(LnError::Input(format!("epsilon must be 1 or -1, got {}", self.epsilon)));
        }
        for k in self.values.keys() {
            if !jet_names().any(|n| n == k) {
                return Err(LnError::Input(format!("unknown jet coordinate {k}")));
            }
        }
        Ok(())
    }

    /// Exact substitution for every exactly known coordinate and its conjugate.
    pub fn exact_substitution(&self) -> Result<BTreeMap<Sym, ScalarPoly>, LnError> {
        let p = parser(self.epsilon);
        let t = p.space.symbols();
        let mut out = BTreeMap::new();
        for (k, v) in &self.values {
            if let JetValue::Exact(g) = v {
                let s = t.get(k)?;
                out.insert(s, ScalarPoly::constant(g.clone()));
                out.insert(t.conj(s), ScalarPoly::constant(g.conj()));
            }
        }
        Ok(out)
    }

    /// Numeric values indexed by symbol, or the first symbolic coordinate
    /// among `needed`.
    fn numeric_point(&self, needed: &[Sym]) -> Result<Vec<Complex64>, LnError> {
        let p = parser(self.epsilon);
        let t = p.space.symbols();
        let mut vals = vec![Complex64::new(0.0, 0.0); t.len()];
        for (k, v) in &self.values {
            if let Some(z) = v.to_c64() {
                let s = t.get(k)?;
                vals[s as usize] = z;
                vals[t.conj(s) as usize] = z.conj();
            }
        }
        for &s in needed {
            let name = t.name(s);
            let base = name.strip_suffix("bar").unwrap_or(name);
            if matches!(self.get(base), JetValue::Symbolic) {
                return Err(LnError::Input(format!("jet coordinate {base} is symbolic")));
            }
        }
        Ok(vals)
    }

    fn any_numeric(&self) -> bool {
        self.values.values().any(|v| matches!(v, JetValue::Numeric(_)))
    }
}

/// Rank of the second fundamental form `a eta^2 + 2b eta kappa + c kappa^2`.
pub fn ii_rank(state: &JetState) -> Result<u8, LnError> {
    state.validate()?;
    let (a, b, c) = (state.get("a"), state.get("b"), state.get("c"));
    if a.is_zero() {
        if !b.is_zero() || !c.is_zero() {
            return Err(LnError::Invariant("a vanishes but b or c does not".into()));
        }
        return Ok(0);
    }
    let det_zero = match (&a, &b, &c) {
        (_, JetValue::Symbolic, _) => false,
        (JetValue::Symbolic, _, JetValue::Symbolic) => false,
        (JetValue::Symbolic, b, c) | (c, b, JetValue::Symbolic) => c.is_zero() && b.is_zero(),
        (JetValue::Exact(a), JetValue::Exact(b), JetValue::Exact(c)) => a * c == b * b,
        _ => {
            let (a, b, c) = (a.to_c64().expect("known"), b.to_c64().expect("known"), c.to_c64().expect("known"));
            let scale = (a * c).norm().max((b * b).norm()).max(1.0);
            (a * c - b * b).norm() <= RANK_TOL * scale
        }
    };
    Ok(if det_zero { 1 } else { 2 })
}

/// One curvature coefficient: a polynomial in the symbolic jets (constant
/// when every jet is exact) or a float.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffValue {
    Exact(ScalarPoly),
    Numeric(Complex64),
}

impl CoeffValue {
    pub fn to_c64(&self) -> Option<Complex64> {
        match self {
            CoeffValue::Exact(p) if p.is_zero() => Some(Complex64::new(0.0, 0.0)),
            CoeffValue::Exact(p) => p.as_constant().map(|g| g.to_c64()),
            CoeffValue::Numeric(z) => Some(*z),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CoeffValue::Exact(p) => json!(p.display(parser(1).space.symbols())),
            CoeffValue::Numeric(z) => json!([z.re, z.im]),
        }
    }
}

/// `S, P, R, Q, U, V, W, R0p, R0pp, R1p, R1pp, Qp, U1p, U2p, Vp, Wp`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureCoeffs {
    pub epsilon: i64,
    pub entries: BTreeMap<String, CoeffValue>,
}

impl CurvatureCoeffs {
    pub fn get(&self, name: &str) -> Option<&CoeffValue> {
        self.entries.get(name)
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = self.entries.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        json!({"epsilon": self.epsilon, "coefficients": m})
    }
}

/// Evaluates every curvature coefficient at a jet state. With any float
/// value every coordinate a coefficient depends on must be known.
pub fn curvature_from_jet(state: &JetState) -> Result<CurvatureCoeffs, LnError> {
    state.validate()?;
    let sym = curvature_from_jet_symbolic(state.epsilon)?;
    let mut entries = BTreeMap::new();
    for (k, f) in sym {
        entries.insert(k.to_string(), evaluate(state, &f.as_scalar().unwrap_or_default())?);
    }
    Ok(CurvatureCoeffs { epsilon: state.epsilon, entries })
}

/// One named curvature coefficient.
pub fn curvature_coefficient(state: &JetState, name: &str) -> Result<CoeffValue, LnError> {
    state.validate()?;
    let sym = curvature_from_jet_symbolic(state.epsilon)?;
    let f = sym.get(name).ok_or_else(|| LnError::Input(format!("unknown coefficient {name}")))?;
    evaluate(state, &f.as_scalar().unwrap_or_default())
}

fn evaluate(state: &JetState, p: &ScalarPoly) -> Result<CoeffValue, LnError> {
    if state.any_numeric() {
        let vals = state.numeric_point(&p.symbols())?;
        Ok(CoeffValue::Numeric(p.eval(&vals)))
    } else {
        let sub = state.exact_substitution()?;
        let v = p.substitute(&sub).ok_or_else(|| LnError::Invariant("division by zero".into()))?;
        Ok(CoeffValue::Exact(v))
    }
}

/// `d(ac - b^2) - 4(ac - b^2)(i rho - lambdabar)` modulo `kappa, eta`.
pub fn det_ii_residual(epsilon: i64) -> Result<Form, LnError> {
    let t = super::jet::h2_table_cached(epsilon, super::jet::H2Rules::Derived)?;
    let p = parser(epsilon);
    let det = p.parse("a*c - b**2")?;
    let r = t.d(&det)?.sub(&p.parse("4*(a*c - b**2)*(i*rho - lambdabar)")?)?;
    Ok(r.modulo(&[p.space.index("kappa")?, p.space.index("eta")?]))
}
