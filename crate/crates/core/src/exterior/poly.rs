//! Laurent polynomials in named symbols with Gaussian rational coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::gauss::GaussRat;
use super::symbols::{Sym, SymbolTable};

/// Sorted `(symbol, exponent)` pairs with nonzero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub SmallVec<[(Sym, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(s: Sym, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(smallvec::smallvec![(s, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: Sym) -> i32 {
        self.0.iter().find(|(t, _)| *t == s).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Sym, i32); 4]> = SmallVec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            if a.0 < b.0 {
                out.push(a);
                i += 1;
            } else if b.0 < a.0 {
                out.push(b);
                j += 1;
            } else {
                if a.1 + b.1 != 0 {
                    out.push((a.0, a.1 + b.1));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(s, e)| (s, -e)).collect())
    }

    fn without(&self, s: Sym) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(t, _)| *t != s).collect())
    }

    pub fn conj(&self, table: &SymbolTable) -> Monomial {
        let mut v: SmallVec<[(Sym, i32); 4]> = self.0.iter().map(|&(s, e)| (table.conj(s), e)).collect();
        v.sort_unstable_by_key(|p| p.0);
        Monomial(v)
    }

    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        let mut out = Complex64::new(1.0, 0.0);
        for &(s, e) in &self.0 {
            out *= values[s as usize].powi(e);
        }
        out
    }
}

/// A Laurent polynomial; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(v: i64) -> Self {
        Self::constant(GaussRat::from(v))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    pub fn var(s: Sym) -> Self {
        Self::term(Monomial::var(s, 1), GaussRat::one())
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ScalarPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// Returns the constant value if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Returns `(monomial, coefficient)` if the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&Monomial, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &ScalarPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, o: &ScalarPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    pub fn scale(&self, k: &GaussRat) -> ScalarPoly {
        if k.is_zero() {
            return ScalarPoly::zero();
        }
        ScalarPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_ref(&self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    /// Integer power; negative exponents only for single-term polynomials.
    pub fn pow(&self, e: i32) -> Option<ScalarPoly> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut out = ScalarPoly::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        Some(out)
    }

    /// Inverse of a single nonzero term.
    pub fn inverse(&self) -> Option<ScalarPoly> {
        let (m, c) = self.as_monomial()?;
        Some(ScalarPoly::term(m.inv(), c.inv()?))
    }

    pub fn conj(&self, table: &SymbolTable) -> ScalarPoly {
        ScalarPoly { terms: self.terms.iter().map(|(m, c)| (m.conj(table), c.conj())).collect() }
    }

    pub fn derivative(&self, s: Sym) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e != 0 {
                let rest = m.without(s).mul(&Monomial::var(s, e - 1));
                out.add_term(rest, &(c * &GaussRat::from(e as i64)));
            }
        }
        out
    }

    /// Symbols occurring with nonzero exponent.
    pub fn symbols(&self) -> Vec<Sym> {
        let mut v: Vec<Sym> = self.terms.keys().flat_map(|m| m.0.iter().map(|p| p.0)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.terms.keys().any(|m| m.exponent(s) != 0)
    }

    /// Substitutes polynomials for symbols; symbols absent from `map` stay.
    pub fn substitute(&self, map: &BTreeMap<Sym, ScalarPoly>) -> Option<ScalarPoly> {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = ScalarPoly::constant(c.clone());
            let mut keep = Monomial::one();
            for &(s, e) in &m.0 {
                match map.get(&s) {
                    Some(p) => acc = acc.mul_ref(&p.pow(e)?),
                    None => keep = keep.mul(&Monomial::var(s, e)),
                }
            }
            for (m2, c2) in acc.terms {
                out.add_term(m2.mul(&keep), &c2);
            }
        }
        Some(out)
    }

    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(m, c)| c.to_c64() * m.eval(values)).sum()
    }

    /// Sum of absolute values of the evaluated terms, used as a scale.
    pub fn eval_scale(&self, values: &[Complex64]) -> f64 {
        self.terms.iter().map(|(m, c)| (c.to_c64() * m.eval(values)).norm()).sum()
    }

    pub fn display(&self, table: &SymbolTable) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if m.is_one() {
                let _ = write!(s, "{c}");
                continue;
            }
            if !c.is_one() {
                let _ = write!(s, "{c}*");
            }
            let parts: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        table.name(v).to_string()
                    } else {
                        format!("{}**{}", table.name(v), e)
                    }
                })
                .collect();
            s.push_str(&parts.join("*"));
        }
        s
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out.sub_assign_ref(o);
        out
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, o: &ScalarPoly) -> ScalarPoly {
        self.mul_ref(o)
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        self.scale(&GaussRat::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> (SymbolTable, Sym, Sym, Sym) {
        let mut t = SymbolTable::new();
        let (a, abar) = t.declare_complex_bar("a").unwrap();
        let b = t.declare_real("b").unwrap();
        (t, a, abar, b)
    }

    #[test]
    fn ring_and_laurent() {
        let (t, a, abar, b) = table();
        let pa = ScalarPoly::var(a);
        let pb = ScalarPoly::var(b);
        let p = &(&pa * &pb) + &ScalarPoly::i();
        assert_eq!(p.conj(&t), &(&ScalarPoly::var(abar) * &pb) - &ScalarPoly::i());
        let inv = pb.pow(-2).unwrap();
        assert_eq!(&inv * &pb.pow(2).unwrap(), ScalarPoly::one());
        assert!((&pa + &pb).inverse().is_none());
        assert_eq!(inv.derivative(b), pb.pow(-3).unwrap().scale(&GaussRat::from(-2)));
    }

    #[test]
    fn substitution_and_eval() {
        let (_, a, _, b) = table();
        let p = &ScalarPoly::var(a).pow(2).unwrap() * &ScalarPoly::var(b);
        let mut map = BTreeMap::new();
        map.insert(a, ScalarPoly::int(3));
        assert_eq!(p.substitute(&map).unwrap(), ScalarPoly::var(b).scale(&GaussRat::from(9)));
        let vals = vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0), Complex64::new(2.0, 0.0)];
        assert!((p.eval(&vals) - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }
}
