//! Seeded numeric assignments and randomized identity testing.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::form::Form;
use super::symbols::{Sym, SymbolTable};

/// Values for every symbol of a table, consistent with conjugation.
#[derive(Clone, Debug)]
pub struct NumericAssignment {
    pub seed: u64,
    pub values: Vec<Complex64>,
}

impl NumericAssignment {
    /// Magnitudes in `[1/2, 2]`, uniform phases; real symbols get a random sign.
    /// `fixed` pins values (for a complex symbol the conjugate follows).
    pub fn seeded(table: &SymbolTable, seed: u64, fixed: &BTreeMap<Sym, Complex64>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = vec![Complex64::new(0.0, 0.0); table.len()];
        for s in table.representatives() {
            let r: f64 = rng.gen_range(0.5..=2.0);
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let v = if let Some(&v) = fixed.get(&s) {
                v
            } else if let Some(&v) = fixed.get(&table.conj(s)) {
                v.conj()
            } else if table.is_real(s) {
                Complex64::new(sign * r, 0.0)
            } else {
                Complex64::from_polar(r, theta)
            };
            values[s as usize] = if table.is_real(s) { Complex64::new(v.re, 0.0) } else { v };
            values[table.conj(s) as usize] = values[s as usize].conj();
        }
        NumericAssignment { seed, values }
    }
}

/// Evaluates the coefficients of `f`; missing components are zero.
pub fn numeric_eval(f: &Form, a: &NumericAssignment) -> BTreeMap<super::form::Idx, Complex64> {
    f.eval(&a.values)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PitReport {
    /// Largest absolute coefficient over all seeds.
    pub max_abs: f64,
    /// Largest coefficient relative to the summed term magnitudes.
    pub max_rel: f64,
    pub seeds: usize,
}

impl PitReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel < tol
    }
}

/// Tests whether `f` vanishes identically by evaluating at seeded points.
pub fn pit(f: &Form, seeds: &[u64], fixed: &BTreeMap<Sym, Complex64>) -> PitReport {
    use rayon::prelude::*;
    let table = f.space().symbols().clone();
    let per_seed: Vec<(f64, f64)> = seeds
        .par_iter()
        .map(|&seed| {
            let a = NumericAssignment::seeded(&table, seed, fixed);
            let mut abs: f64 = 0.0;
            let mut rel: f64 = 0.0;
            for (_, p) in f.terms() {
                let v = p.eval(&a.values).norm();
                let scale = p.eval_scale(&a.values).max(1.0);
                abs = abs.max(v);
                rel = rel.max(v / scale);
            }
            (abs, rel)
        })
        .collect();
    PitReport {
        max_abs: per_seed.iter().map(|p| p.0).fold(0.0, f64::max),
        max_rel: per_seed.iter().map(|p| p.1).fold(0.0, f64::max),
        seeds: seeds.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::form::Space;
    use crate::exterior::parse::FormParser;
    use std::sync::Arc;

    #[test]
    fn assignment_respects_conjugation() {
        let mut t = SymbolTable::new();
        let (a, abar) = t.declare_complex_bar("a").unwrap();
        let b = t.declare_real("b").unwrap();
        let n = NumericAssignment::seeded(&t, 7, &BTreeMap::new());
        assert_eq!(n.values[abar as usize], n.values[a as usize].conj());
        assert_eq!(n.values[b as usize].im, 0.0);
        let r = n.values[a as usize].norm();
        assert!((0.5..=2.0).contains(&r));
        let again = NumericAssignment::seeded(&t, 7, &BTreeMap::new());
        assert_eq!(n.values, again.values);
    }

    #[test]
    fn detects_nonzero() {
        let mut t = SymbolTable::new();
        t.declare_complex_bar("a").unwrap();
        let s = Space::builder(Arc::new(t)).real("kappa").build().unwrap();
        let p = FormParser::new(&s);
        let zero = p.f("(a+abar)**2 - a**2 - 2a*abar - abar**2");
        assert!(pit(&zero, &[0, 1, 2], &BTreeMap::new()).passes(1e-12));
        let nz = p.f("(a - abar)*kappa");
        assert!(pit(&nz, &[0, 1, 2], &BTreeMap::new()).max_abs > 0.1);
    }
}
