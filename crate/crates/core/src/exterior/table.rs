//! Structure tables: `d` on generators and scalars, extended by Leibniz.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::form::{Form, Idx, Space};
use super::poly::ScalarPoly;
use super::symbols::Sym;
use super::ExteriorError;

#[derive(Clone, Debug)]
pub struct StructureTable {
    space: Arc<Space>,
    gen_rules: Vec<Option<Form>>,
    scalar_rules: BTreeMap<Sym, Form>,
    open: BTreeSet<Sym>,
}

/// One `d(d x)` residual.
#[derive(Clone, Debug)]
pub struct ClosureEntry {
    pub name: String,
    pub residual: Form,
}

#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub entries: Vec<ClosureEntry>,
    /// Objects whose `d d` needs rules the table does not carry.
    pub skipped: Vec<String>,
}

impl ClosureReport {
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|e| e.residual.is_zero())
    }

    pub fn nonzero(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.residual.is_zero()).map(|e| e.name.as_str()).collect()
    }
}

impl StructureTable {
    pub fn new(space: &Arc<Space>) -> Self {
        StructureTable {
            space: space.clone(),
            gen_rules: vec![None; space.len()],
            scalar_rules: BTreeMap::new(),
            open: BTreeSet::new(),
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    fn check_rule(&self, rule: &Form, deg: usize) -> Result<(), ExteriorError> {
        if !Space::compatible(&self.space, rule.space()) {
            return Err(ExteriorError::SpaceMismatch);
        }
        match rule.degree() {
            None if rule.is_zero() => Ok(()),
            Some(d) if d == deg => Ok(()),
            _ => Err(ExteriorError::Config(format!("rule must be a {deg}-form"))),
        }
    }

    pub fn set_gen(&mut self, name: &str, rule: Form) -> Result<(), ExteriorError> {
        self.check_rule(&rule, 2)?;
        let i = self.space.index(name)?;
        self.gen_rules[i] = Some(rule);
        Ok(())
    }

    /// Sets the rule for `name` and the conjugate rule for its conjugate.
    pub fn set_gen_conj(&mut self, name: &str, rule: Form) -> Result<(), ExteriorError> {
        let i = self.space.index(name)?;
        let j = self.space.conj(i);
        let cj = rule.conj();
        self.set_gen(name, rule)?;
        if j != i {
            let cname = self.space.name(j).to_string();
            self.set_gen(&cname, cj)?;
        }
        Ok(())
    }

    pub fn set_scalar(&mut self, name: &str, rule: Form) -> Result<(), ExteriorError> {
        self.check_rule(&rule, 1)?;
        let s = self.space.sym(name)?;
        self.open.remove(&s);
        self.scalar_rules.insert(s, rule);
        Ok(())
    }

    pub fn set_scalar_conj(&mut self, name: &str, rule: Form) -> Result<(), ExteriorError> {
        let s = self.space.sym(name)?;
        let t = self.space.symbols().conj(s);
        let cj = rule.conj();
        self.set_scalar(name, rule)?;
        if t != s {
            let cname = self.space.symbols().name(t).to_string();
            self.set_scalar(&cname, cj)?;
        }
        Ok(())
    }

    /// Marks a symbol (and its conjugate) as having unknown `d`.
    pub fn mark_open(&mut self, name: &str) -> Result<(), ExteriorError> {
        let s = self.space.sym(name)?;
        let t = self.space.symbols().conj(s);
        for x in [s, t] {
            self.scalar_rules.remove(&x);
            self.open.insert(x);
        }
        Ok(())
    }

    pub fn gen_rule(&self, name: &str) -> Result<&Form, ExteriorError> {
        let i = self.space.index(name)?;
        self.gen_rules[i].as_ref().ok_or_else(|| ExteriorError::MissingRule(name.to_string()))
    }

    pub fn scalar_rule(&self, name: &str) -> Option<&Form> {
        self.space.sym(name).ok().and_then(|s| self.scalar_rules.get(&s))
    }

    pub fn d_scalar(&self, p: &ScalarPoly) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(&self.space);
        for s in p.symbols() {
            if self.open.contains(&s) {
                return Err(ExteriorError::MissingRule(self.space.symbols().name(s).to_string()));
            }
            if let Some(rule) = self.scalar_rules.get(&s) {
                out = out.add(&rule.scale(&p.derivative(s)))?;
            }
        }
        Ok(out)
    }

    fn d_basis(&self, idx: &Idx) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(&self.space);
        for j in 0..idx.len() {
            let g = idx[j] as usize;
            let dg = self.gen_rules[g]
                .as_ref()
                .ok_or_else(|| ExteriorError::MissingRule(self.space.name(g).to_string()))?;
            let left = Form::basis(&self.space, idx[..j].iter().copied().collect());
            let right = Form::basis(&self.space, idx[j + 1..].iter().copied().collect());
            let mut t = left.wedge(dg)?.wedge(&right)?;
            if j % 2 == 1 {
                t = t.neg();
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Exterior derivative by the graded Leibniz rule.
    pub fn d(&self, f: &Form) -> Result<Form, ExteriorError> {
        if !Space::compatible(&self.space, f.space()) {
            return Err(ExteriorError::SpaceMismatch);
        }
        let mut out = Form::zero(&self.space);
        for (idx, p) in f.terms() {
            let basis = Form::basis(&self.space, idx.clone());
            let dp = self.d_scalar(p)?;
            out = out.add(&dp.wedge(&basis)?)?;
            if !idx.is_empty() {
                out = out.add(&self.d_basis(idx)?.scale(p))?;
            }
        }
        Ok(out)
    }

    fn needs_open(&self, f: &Form) -> bool {
        f.symbols().iter().any(|s| self.open.contains(s))
    }

    /// `d(d x)` for every generator and every symbol carrying a rule.
    pub fn check_d_squared(&self) -> Result<ClosureReport, ExteriorError> {
        let mut report = ClosureReport::default();
        for g in 0..self.space.len() {
            let name = self.space.name(g).to_string();
            match &self.gen_rules[g] {
                None => report.skipped.push(name),
                Some(r) if self.needs_open(r) => report.skipped.push(name),
                Some(r) => match self.d(r) {
                    Ok(res) => report.entries.push(ClosureEntry { name, residual: res }),
                    Err(ExteriorError::MissingRule(_)) => report.skipped.push(name),
                    Err(e) => return Err(e),
                },
            }
        }
        for (&s, r) in &self.scalar_rules {
            let name = self.space.symbols().name(s).to_string();
            if self.needs_open(r) {
                report.skipped.push(name);
                continue;
            }
            match self.d(r) {
                Ok(res) => report.entries.push(ClosureEntry { name, residual: res }),
                Err(ExteriorError::MissingRule(_)) => report.skipped.push(name),
                Err(e) => return Err(e),
            }
        }
        Ok(report)
    }

    /// Substitutes polynomials for symbols in every rule; substituted symbols
    /// lose their own rules.
    pub fn substitute(&self, map: &BTreeMap<Sym, ScalarPoly>) -> Result<StructureTable, ExteriorError> {
        let mut out = StructureTable::new(&self.space);
        out.open = self.open.clone();
        for (i, r) in self.gen_rules.iter().enumerate() {
            if let Some(r) = r {
                out.gen_rules[i] = Some(r.substitute(map)?);
            }
        }
        for (&s, r) in &self.scalar_rules {
            if !map.contains_key(&s) {
                out.scalar_rules.insert(s, r.substitute(map)?);
            }
        }
        Ok(out)
    }
}
