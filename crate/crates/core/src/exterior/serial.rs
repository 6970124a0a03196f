//! JSON text format for forms and structure tables.
//!
//! ```text
//! { "generators": [{"name": "kappa", "conj": "kappa"}, ...],
//!   "symbols":    [{"name": "a", "conj": "abar"}, ...],
//!   "terms":      [[i0, i1, re_num, re_den, im_num, im_den, {"a": 1}], ...] }
//! ```
//!
//! A term lists generator indices, then the coefficient as four integers,
//! then an optional object of symbol exponents. Integers that do not fit in
//! 64 bits are written as decimal strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use super::form::{Form, Idx, Space};
use super::gauss::GaussRat;
use super::poly::{Monomial, ScalarPoly};
use super::symbols::SymbolTable;
use super::table::StructureTable;
use super::ExteriorError;

fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_parse(v: &Value) -> Result<BigInt, ExteriorError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer expected")),
        Value::String(s) => s.parse().map_err(|_| bad("integer string expected")),
        _ => Err(bad("integer expected")),
    }
}

fn bad(msg: &str) -> ExteriorError {
    ExteriorError::Parse(msg.to_string())
}

fn header(space: &Space) -> (Value, Value) {
    let gens: Vec<Value> = (0..space.len())
        .map(|i| json!({"name": space.name(i), "conj": space.name(space.conj(i))}))
        .collect();
    let t = space.symbols();
    let syms: Vec<Value> = t
        .entries()
        .iter()
        .map(|e| json!({"name": e.name, "conj": t.name(e.conj)}))
        .collect();
    (Value::Array(gens), Value::Array(syms))
}

fn terms_value(f: &Form) -> Value {
    let t = f.space().symbols();
    let mut out = Vec::new();
    for (idx, p) in f.terms() {
        for (m, c) in p.terms() {
            let mut row: Vec<Value> = idx.iter().map(|&g| json!(g)).collect();
            let (a, b, cc, d) = c.parts();
            row.extend([int_value(&a), int_value(&b), int_value(&cc), int_value(&d)]);
            if !m.is_one() {
                let mut mono = Map::new();
                for &(s, e) in &m.0 {
                    mono.insert(t.name(s).to_string(), json!(e));
                }
                row.push(Value::Object(mono));
            }
            out.push(Value::Array(row));
        }
    }
    Value::Array(out)
}

pub fn form_to_json(f: &Form) -> Value {
    let (g, s) = header(f.space());
    json!({"generators": g, "symbols": s, "terms": terms_value(f)})
}

fn space_from_json(v: &Value) -> Result<Arc<Space>, ExteriorError> {
    let mut table = SymbolTable::new();
    for e in v["symbols"].as_array().ok_or_else(|| bad("symbols array expected"))? {
        let name = e["name"].as_str().ok_or_else(|| bad("symbol name"))?;
        let conj = e["conj"].as_str().ok_or_else(|| bad("symbol conj"))?;
        if name == conj {
            table.declare_real(name)?;
        } else if table.lookup(name).is_none() {
            table.declare_complex(name, conj)?;
        }
    }
    let mut b = Space::builder(Arc::new(table));
    let gens = v["generators"].as_array().ok_or_else(|| bad("generators array expected"))?;
    let mut seen = std::collections::HashSet::new();
    for e in gens {
        let name = e["name"].as_str().ok_or_else(|| bad("generator name"))?;
        let conj = e["conj"].as_str().ok_or_else(|| bad("generator conj"))?;
        if seen.contains(name) {
            continue;
        }
        if name == conj {
            b = b.real(name);
        } else {
            b = b.complex(name, conj);
            seen.insert(conj.to_string());
        }
        seen.insert(name.to_string());
    }
    let space = b.build()?;
    let order: Vec<&str> = gens.iter().filter_map(|e| e["name"].as_str()).collect();
    if order != space.names().collect::<Vec<_>>() {
        return Err(bad("a complex generator must be followed by its conjugate"));
    }
    Ok(space)
}

fn terms_from_json(space: &Arc<Space>, v: &Value) -> Result<Form, ExteriorError> {
    let mut f = Form::zero(space);
    for row in v.as_array().ok_or_else(|| bad("terms array expected"))? {
        let row = row.as_array().ok_or_else(|| bad("term array expected"))?;
        let (mono, nums) = match row.last() {
            Some(Value::Object(o)) => (Some(o), &row[..row.len() - 1]),
            _ => (None, &row[..]),
        };
        if nums.len() < 4 {
            return Err(bad("term too short"));
        }
        let k = nums.len() - 4;
        let idx: Idx = nums[..k]
            .iter()
            .map(|x| x.as_u64().filter(|&g| (g as usize) < space.len()).map(|g| g as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("generator index"))?;
        let p: Vec<BigInt> = nums[k..].iter().map(int_parse).collect::<Result<_, _>>()?;
        if p[1].is_zero() || p[3].is_zero() {
            return Err(bad("zero denominator"));
        }
        let c = GaussRat::new(BigRational::new(p[0].clone(), p[1].clone()), BigRational::new(p[2].clone(), p[3].clone()));
        let mut m = Monomial::one();
        if let Some(o) = mono {
            for (name, e) in o {
                let s = space.sym(name)?;
                let e = e.as_i64().ok_or_else(|| bad("exponent"))? as i32;
                m = m.mul(&Monomial::var(s, e));
            }
        }
        let mut sorted = idx.clone();
        let sign = super::form::sort_sign(&mut sorted).ok_or_else(|| bad("repeated generator"))?;
        let c = if sign < 0 { -c } else { c };
        f.add_term(sorted, &ScalarPoly::term(m, c));
    }
    Ok(f)
}

pub fn form_from_json(v: &Value) -> Result<Form, ExteriorError> {
    let space = space_from_json(v)?;
    terms_from_json(&space, &v["terms"])
}

pub fn table_to_json(t: &StructureTable) -> Value {
    let space = t.space();
    let (g, s) = header(space);
    let mut rules = Map::new();
    for name in space.names() {
        if let Ok(r) = t.gen_rule(name) {
            rules.insert(name.to_string(), terms_value(r));
        }
    }
    let mut scalar_rules = Map::new();
    for e in space.symbols().entries() {
        if let Some(r) = t.scalar_rule(&e.name) {
            scalar_rules.insert(e.name.clone(), terms_value(r));
        }
    }
    json!({"generators": g, "symbols": s, "rules": rules, "scalar_rules": scalar_rules})
}

pub fn table_from_json(v: &Value) -> Result<StructureTable, ExteriorError> {
    let space = space_from_json(v)?;
    let mut t = StructureTable::new(&space);
    let empty = Map::new();
    for (name, terms) in v["rules"].as_object().unwrap_or(&empty) {
        t.set_gen(name, terms_from_json(&space, terms)?)?;
    }
    for (name, terms) in v["scalar_rules"].as_object().unwrap_or(&empty) {
        t.set_scalar(name, terms_from_json(&space, terms)?)?;
    }
    Ok(t)
}

/// Exponent map of a monomial by symbol name, for reports.
pub fn monomial_names(table: &SymbolTable, m: &Monomial) -> BTreeMap<String, i32> {
    m.0.iter().map(|&(s, e)| (table.name(s).to_string(), e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse::FormParser;

    #[test]
    fn round_trip() {
        let mut t = SymbolTable::new();
        t.declare_complex_bar("a").unwrap();
        t.declare_real("b").unwrap();
        let s = Space::builder(Arc::new(t)).real("kappa").complex_bar("eta").build().unwrap();
        let p = FormParser::new(&s);
        let f = p.f("(3/4 - 2i/5)*a**2*b^kappa^eta + i*eta^etabar - b**-1*kappa^etabar");
        let back = form_from_json(&form_to_json(&f)).unwrap();
        assert_eq!(back.display(), f.display());

        let mut table = StructureTable::new(&s);
        table.set_gen("kappa", p.f("i*eta^etabar")).unwrap();
        table.set_gen_conj("eta", p.f("a*kappa^eta")).unwrap();
        table.set_scalar("b", p.f("kappa")).unwrap();
        let v = table_to_json(&table);
        let back = table_from_json(&v).unwrap();
        assert_eq!(table_to_json(&back), v);
    }

    #[test]
    fn huge_integers_as_strings() {
        let n: BigInt = BigInt::from(i64::MAX) * 10;
        assert!(int_value(&n).is_string());
        assert_eq!(int_parse(&int_value(&n)).unwrap(), n);
    }
}
