//! Differential forms over a finite coframe with polynomial coefficients.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;
use smallvec::SmallVec;

use super::gauss::GaussRat;
use super::poly::ScalarPoly;
use super::symbols::{Sym, SymbolTable};
use super::ExteriorError;

/// Strictly increasing generator indices of a basis monomial.
pub type Idx = SmallVec<[u8; 4]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenEntry {
    pub name: String,
    pub conj: usize,
}

/// An ordered list of generating 1-forms with a conjugation map, together
/// with the symbol table used by coefficients.
#[derive(Debug, PartialEq, Eq)]
pub struct Space {
    gens: Vec<GenEntry>,
    by_name: HashMap<String, usize>,
    symbols: Arc<SymbolTable>,
}

pub struct SpaceBuilder {
    gens: Vec<GenEntry>,
    symbols: Arc<SymbolTable>,
}

impl SpaceBuilder {
    pub fn real(mut self, name: &str) -> Self {
        let i = self.gens.len();
        self.gens.push(GenEntry { name: name.to_string(), conj: i });
        self
    }

    pub fn complex(mut self, name: &str, conj_name: &str) -> Self {
        let i = self.gens.len();
        self.gens.push(GenEntry { name: name.to_string(), conj: i + 1 });
        self.gens.push(GenEntry { name: conj_name.to_string(), conj: i });
        self
    }

    /// Complex generator `name` with conjugate `name` + `bar`.
    pub fn complex_bar(self, name: &str) -> Self {
        let bar = format!("{name}bar");
        self.complex(name, &bar)
    }

    pub fn build(self) -> Result<Arc<Space>, ExteriorError> {
        if self.gens.len() > u8::MAX as usize {
            return Err(ExteriorError::Config("too many generators".into()));
        }
        let mut by_name = HashMap::new();
        for (i, g) in self.gens.iter().enumerate() {
            if self.symbols.lookup(&g.name).is_some() {
                return Err(ExteriorError::Config(format!("{} is both a symbol and a generator", g.name)));
            }
            if by_name.insert(g.name.clone(), i).is_some() {
                return Err(ExteriorError::Config(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(Arc::new(Space { gens: self.gens, by_name, symbols: self.symbols }))
    }
}

impl Space {
    pub fn builder(symbols: Arc<SymbolTable>) -> SpaceBuilder {
        SpaceBuilder { gens: Vec::new(), symbols }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.name.as_str())
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn conj(&self, i: usize) -> usize {
        self.gens[i].conj
    }

    pub fn index(&self, name: &str) -> Result<usize, ExteriorError> {
        self.by_name.get(name).copied().ok_or_else(|| ExteriorError::UnknownGenerator(name.to_string()))
    }

    pub fn symbols(&self) -> &Arc<SymbolTable> {
        &self.symbols
    }

    pub fn sym(&self, name: &str) -> Result<Sym, ExteriorError> {
        self.symbols.get(name)
    }

    pub fn compatible(a: &Arc<Space>, b: &Arc<Space>) -> bool {
        Arc::ptr_eq(a, b) || (a.gens == b.gens && a.symbols == b.symbols)
    }
}

/// Sign of the permutation sorting `v`, or `None` if `v` has a repeat.
pub fn sort_sign(v: &mut [u8]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

fn merge_sign(a: &[u8], b: &[u8]) -> Option<(Idx, i64)> {
    let mut v: Idx = a.iter().chain(b.iter()).copied().collect();
    let s = sort_sign(&mut v)?;
    Some((v, s))
}

#[derive(Clone, Debug)]
pub struct Form {
    space: Arc<Space>,
    terms: BTreeMap<Idx, ScalarPoly>,
}

impl PartialEq for Form {
    fn eq(&self, o: &Form) -> bool {
        Space::compatible(&self.space, &o.space) && self.terms == o.terms
    }
}

impl Form {
    pub fn zero(space: &Arc<Space>) -> Form {
        Form { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(space: &Arc<Space>, p: ScalarPoly) -> Form {
        let mut f = Form::zero(space);
        f.add_term(Idx::new(), &p);
        f
    }

    pub fn constant(space: &Arc<Space>, c: GaussRat) -> Form {
        Form::scalar(space, ScalarPoly::constant(c))
    }

    pub fn int(space: &Arc<Space>, v: i64) -> Form {
        Form::scalar(space, ScalarPoly::int(v))
    }

    pub fn sym(space: &Arc<Space>, name: &str) -> Result<Form, ExteriorError> {
        Ok(Form::scalar(space, ScalarPoly::var(space.sym(name)?)))
    }

    pub fn basis(space: &Arc<Space>, idx: Idx) -> Form {
        let mut f = Form::zero(space);
        f.add_term(idx, &ScalarPoly::one());
        f
    }

    pub fn gen_index(space: &Arc<Space>, i: usize) -> Form {
        Form::basis(space, smallvec::smallvec![i as u8])
    }

    pub fn gen(space: &Arc<Space>, name: &str) -> Result<Form, ExteriorError> {
        Ok(Form::gen_index(space, space.index(name)?))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Idx, &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn as_scalar(&self) -> Option<ScalarPoly> {
        match self.degree() {
            None if self.is_zero() => Some(ScalarPoly::zero()),
            Some(0) => self.terms.get(&Idx::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, idx: Idx, p: &ScalarPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(idx.clone()).or_default();
        slot.add_assign_ref(p);
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    fn check(&self, o: &Form) -> Result<(), ExteriorError> {
        if Space::compatible(&self.space, &o.space) {
            Ok(())
        } else {
            Err(ExteriorError::SpaceMismatch)
        }
    }

    pub fn add(&self, o: &Form) -> Result<Form, ExteriorError> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, p) in &o.terms {
            out.add_term(k.clone(), p);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Form) -> Result<Form, ExteriorError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale_const(&GaussRat::from(-1))
    }

    pub fn scale(&self, p: &ScalarPoly) -> Form {
        let mut out = Form::zero(&self.space);
        for (k, q) in &self.terms {
            out.add_term(k.clone(), &q.mul_ref(p));
        }
        out
    }

    pub fn scale_const(&self, c: &GaussRat) -> Form {
        self.scale(&ScalarPoly::constant(c.clone()))
    }

    pub fn wedge(&self, o: &Form) -> Result<Form, ExteriorError> {
        self.check(o)?;
        let mut out = Form::zero(&self.space);
        for (k1, p1) in &self.terms {
            for (k2, p2) in &o.terms {
                if let Some((k, s)) = merge_sign(k1, k2) {
                    let prod = p1.mul_ref(p2);
                    let prod = if s < 0 { -&prod } else { prod };
                    out.add_term(k, &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn conj(&self) -> Form {
        let mut out = Form::zero(&self.space);
        for (k, p) in &self.terms {
            let mut v: Idx = k.iter().map(|&g| self.space.conj(g as usize) as u8).collect();
            let s = sort_sign(&mut v).expect("conjugation is a bijection");
            let q = p.conj(&self.space.symbols);
            out.add_term(v, &if s < 0 { -&q } else { q });
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Form {
        let mut out = Form::zero(&self.space);
        for (k, p) in &self.terms {
            out.add_term(k.clone(), &f(p));
        }
        out
    }

    pub fn substitute(&self, map: &BTreeMap<Sym, ScalarPoly>) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(&self.space);
        for (k, p) in &self.terms {
            let q = p
                .substitute(map)
                .ok_or_else(|| ExteriorError::NonInvertible("negative power of a non-monomial".into()))?;
            out.add_term(k.clone(), &q);
        }
        Ok(out)
    }

    /// Replaces every generator by the 1-form `images[i]` of another space
    /// whose symbol table extends this one.
    pub fn pullback(&self, target: &Arc<Space>, images: &[Form]) -> Result<Form, ExteriorError> {
        if images.len() != self.space.len() {
            return Err(ExteriorError::Config("pullback needs one image per generator".into()));
        }
        let (src, dst) = (self.space.symbols().entries(), target.symbols().entries());
        if src.len() > dst.len() || src != &dst[..src.len()] {
            return Err(ExteriorError::SpaceMismatch);
        }
        let mut out = Form::zero(target);
        for (k, p) in &self.terms {
            let mut acc = Form::scalar(target, p.clone());
            for &g in k.iter() {
                acc = acc.wedge(&images[g as usize])?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    pub fn component(&self, idx: &[u8]) -> ScalarPoly {
        let mut v: Idx = idx.iter().copied().collect();
        match sort_sign(&mut v) {
            None => ScalarPoly::zero(),
            Some(s) => {
                let p = self.terms.get(&v).cloned().unwrap_or_default();
                if s < 0 {
                    -&p
                } else {
                    p
                }
            }
        }
    }

    /// Coefficient of the basis monomial named by generator names.
    pub fn coeff(&self, names: &[&str]) -> Result<ScalarPoly, ExteriorError> {
        let idx: Vec<u8> = names.iter().map(|n| self.space.index(n).map(|i| i as u8)).collect::<Result<_, _>>()?;
        Ok(self.component(&idx))
    }

    /// Interior product with the vector dual to generator `g`.
    pub fn interior(&self, g: usize) -> Form {
        let mut out = Form::zero(&self.space);
        for (k, p) in &self.terms {
            if let Some(pos) = k.iter().position(|&x| x as usize == g) {
                let mut rest = k.clone();
                rest.remove(pos);
                out.add_term(rest, &if pos % 2 == 1 { -p } else { p.clone() });
            }
        }
        out
    }

    /// Drops every term containing one of the generators in `gens`.
    pub fn modulo(&self, gens: &[usize]) -> Form {
        let mut out = Form::zero(&self.space);
        for (k, p) in &self.terms {
            if !k.iter().any(|&x| gens.contains(&(x as usize))) {
                out.add_term(k.clone(), p);
            }
        }
        out
    }

    pub fn symbols(&self) -> Vec<Sym> {
        let mut v: Vec<Sym> = self.terms.values().flat_map(|p| p.symbols()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn eval(&self, values: &[Complex64]) -> BTreeMap<Idx, Complex64> {
        self.terms.iter().map(|(k, p)| (k.clone(), p.eval(values))).collect()
    }

    /// Max over components of the summed absolute term values.
    pub fn eval_scale(&self, values: &[Complex64]) -> f64 {
        self.terms.values().map(|p| p.eval_scale(values)).fold(0.0, f64::max)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let table = &self.space.symbols;
        self.terms
            .iter()
            .map(|(k, p)| {
                let basis: Vec<&str> = k.iter().map(|&g| self.space.name(g as usize)).collect();
                if basis.is_empty() {
                    format!("({})", p.display(table))
                } else {
                    format!("({})*{}", p.display(table), basis.join("^"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Arc<Space> {
        let mut t = SymbolTable::new();
        t.declare_complex_bar("a").unwrap();
        Space::builder(Arc::new(t)).real("kappa").complex_bar("eta").build().unwrap()
    }

    #[test]
    fn wedge_antisymmetry() {
        let s = space();
        let k = Form::gen(&s, "kappa").unwrap();
        let e = Form::gen(&s, "eta").unwrap();
        let ke = k.wedge(&e).unwrap();
        let ek = e.wedge(&k).unwrap();
        assert_eq!(ke.add(&ek).unwrap(), Form::zero(&s));
        assert!(k.wedge(&k).unwrap().is_zero());
        assert_eq!(ke.coeff(&["eta", "kappa"]).unwrap(), ScalarPoly::int(-1));
    }

    #[test]
    fn conjugation_reorders() {
        let s = space();
        let e = Form::gen(&s, "eta").unwrap();
        let eb = Form::gen(&s, "etabar").unwrap();
        let ee = e.wedge(&eb).unwrap().scale(&ScalarPoly::i());
        assert_eq!(ee.conj(), ee);
        assert_eq!(ee.conj().conj(), ee);
    }

    #[test]
    fn interior_product() {
        let s = space();
        let k = Form::gen(&s, "kappa").unwrap();
        let e = Form::gen(&s, "eta").unwrap();
        let ke = k.wedge(&e).unwrap();
        assert_eq!(ke.interior(1), k.neg());
        assert_eq!(ke.interior(0), e);
    }

    #[test]
    fn mismatched_spaces() {
        let s1 = space();
        let t = Arc::new(SymbolTable::new());
        let s2 = Space::builder(t).real("x").build().unwrap();
        assert!(Form::gen(&s1, "kappa").unwrap().wedge(&Form::gen(&s2, "x").unwrap()).is_err());
    }
}
