//! Restriction of the `H^2` tables to sub-bundles cut out by normalizing
//! jet coordinates and solving for connection forms.

use std::collections::BTreeMap;

use crate::exterior::{Form, FormParser, ScalarPoly, StructureTable, Sym};

use super::jet::{h2_table_cached, parser, H2Rules};
use super::LnError;

/// A sub-bundle of `H^2` described by jet values and solved generators.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub epsilon: i64,
    pub parser: FormParser,
    table: &'static StructureTable,
    jets: BTreeMap<Sym, ScalarPoly>,
    gens: BTreeMap<usize, Form>,
}

impl Reduction {
    pub fn new(epsilon: i64) -> Result<Reduction, LnError> {
        Ok(Reduction {
            epsilon,
            parser: parser(epsilon),
            table: h2_table_cached(epsilon, H2Rules::Derived)?,
            jets: BTreeMap::new(),
            gens: BTreeMap::new(),
        })
    }

    /// Reduction of an arbitrary table.
    pub fn from_table(epsilon: i64, parser: FormParser, table: &'static StructureTable) -> Reduction {
        Reduction { epsilon, parser, table, jets: BTreeMap::new(), gens: BTreeMap::new() }
    }

    pub fn table(&self) -> &StructureTable {
        self.table
    }

    pub fn sym(&self, name: &str) -> Result<Sym, LnError> {
        Ok(self.parser.space.sym(name)?)
    }

    fn conj_sym(&self, s: Sym) -> Sym {
        self.parser.space.symbols().conj(s)
    }

    pub fn conj_poly(&self, p: &ScalarPoly) -> ScalarPoly {
        p.conj(self.parser.space.symbols())
    }

    pub fn f(&self, src: &str) -> Result<Form, LnError> {
        Ok(self.parser.parse(src)?)
    }

    /// Value of a jet symbol on the sub-bundle, if fixed.
    pub fn jet(&self, name: &str) -> Result<Option<&ScalarPoly>, LnError> {
        Ok(self.jets.get(&self.sym(name)?))
    }

    pub fn jets(&self) -> &BTreeMap<Sym, ScalarPoly> {
        &self.jets
    }

    /// Solved expression of a generator, if any.
    pub fn gen(&self, name: &str) -> Result<Option<&Form>, LnError> {
        Ok(self.gens.get(&self.parser.space.index(name)?))
    }

    /// Fixes several jet symbols at once; values are restricted first and
    /// earlier values are updated.
    pub fn fix_many(&mut self, vals: &[(Sym, ScalarPoly)]) -> Result<(), LnError> {
        let restricted: Vec<(Sym, ScalarPoly)> =
            vals.iter().map(|(s, v)| Ok((*s, self.restrict_poly(v)?))).collect::<Result<_, LnError>>()?;
        let new: BTreeMap<Sym, ScalarPoly> = restricted.into_iter().collect();
        for v in self.jets.values_mut() {
            *v = v.substitute(&new).ok_or_else(|| LnError::Invariant("non-monomial denominator".into()))?;
        }
        let gens: Vec<usize> = self.gens.keys().copied().collect();
        for g in gens {
            let f = self.gens[&g].substitute(&new)?;
            self.gens.insert(g, f);
        }
        self.jets.extend(new);
        Ok(())
    }

    /// Fixes one symbol and nothing else.
    pub fn fix(&mut self, name: &str, v: ScalarPoly) -> Result<(), LnError> {
        let s = self.sym(name)?;
        self.fix_many(&[(s, v)])
    }

    /// Fixes a symbol and its conjugate.
    pub fn fix_conj(&mut self, name: &str, v: ScalarPoly) -> Result<(), LnError> {
        let s = self.sym(name)?;
        let c = self.conj_sym(s);
        let vc = self.conj_poly(&v);
        self.fix_many(&[(s, v), (c, vc)])
    }

    pub fn restrict_poly(&self, p: &ScalarPoly) -> Result<ScalarPoly, LnError> {
        p.substitute(&self.jets).ok_or_else(|| LnError::Invariant("non-monomial denominator".into()))
    }

    /// Pulls a form on `H^2` back to the sub-bundle.
    pub fn restrict(&self, f: &Form) -> Result<Form, LnError> {
        let s = &self.parser.space;
        let images: Vec<Form> = (0..s.len())
            .map(|i| self.gens.get(&i).cloned().unwrap_or_else(|| Form::gen_index(s, i)))
            .collect();
        Ok(f.pullback(s, &images)?.substitute(&self.jets)?)
    }

    /// Pullback of `df` to the sub-bundle.
    pub fn d(&self, f: &Form) -> Result<Form, LnError> {
        self.restrict(&self.table.d(f)?)
    }

    /// Restricted differential of a jet symbol.
    pub fn d_jet(&self, name: &str) -> Result<Form, LnError> {
        self.d(&self.f(name)?)
    }

    /// Solves the restricted scalar equation `eq = 0` for `var`, which must
    /// occur linearly with a monomial coefficient. With `conj` the conjugate
    /// equation fixes the conjugate symbol.
    pub fn solve_jet(&mut self, eq: &ScalarPoly, var: &str, conj: bool) -> Result<ScalarPoly, LnError> {
        let x = self.sym(var)?;
        let e = self.restrict_poly(eq)?;
        let k = e.derivative(x);
        if k.is_zero() || !k.derivative(x).is_zero() {
            return Err(LnError::Invariant(format!("{var} does not occur linearly")));
        }
        let zero: BTreeMap<Sym, ScalarPoly> = [(x, ScalarPoly::zero())].into();
        let rest = e.substitute(&zero).expect("polynomial");
        let inv = k.inverse().ok_or_else(|| LnError::Invariant(format!("coefficient of {var} is not a monomial")))?;
        let v = -&(&rest * &inv);
        if conj {
            self.fix_conj(var, v.clone())?;
        } else {
            self.fix(var, v.clone())?;
        }
        Ok(v)
    }

    /// Solves a real equation `eq = 0` for `Re var`, leaving `Im var` free.
    pub fn solve_real_part(&mut self, eq: &ScalarPoly, var: &str) -> Result<ScalarPoly, LnError> {
        let x = self.sym(var)?;
        let xb = self.conj_sym(x);
        let e = self.restrict_poly(eq)?;
        let k = e.derivative(x);
        if k != e.derivative(xb) {
            return Err(LnError::Invariant(format!("{var} does not occur through its real part")));
        }
        let kc = k.as_constant().ok_or_else(|| LnError::Invariant(format!("coefficient of Re {var} is not constant")))?;
        let zero: BTreeMap<Sym, ScalarPoly> = [(x, ScalarPoly::zero()), (xb, ScalarPoly::zero())].into();
        let rest = e.substitute(&zero).expect("polynomial");
        let half = crate::exterior::GaussRat::ratio(1, 2);
        let re = -&rest.scale(&(half.clone() * kc.inv().expect("nonzero")));
        let im_part = (&ScalarPoly::var(x) - &ScalarPoly::var(xb)).scale(&half);
        let vx = &re + &im_part;
        let vxb = &re - &im_part;
        self.fix_many(&[(x, vx), (xb, vxb)])?;
        Ok(re)
    }

    /// Solves the restricted 1-form equation `eq = 0` for a generator; the
    /// conjugate generator gets the conjugate solution.
    pub fn solve_gen(&mut self, eq: &Form, gen: &str) -> Result<Form, LnError> {
        let g = self.parser.space.index(gen)?;
        let e = self.one_form(eq, gen)?;
        let k = e.component(&[g as u8]);
        let inv = k.inverse().ok_or_else(|| LnError::Invariant(format!("coefficient of {gen} is not a monomial")))?;
        let mut rest = e.clone();
        rest.add_term([g as u8].into_iter().collect(), &-&k);
        let sol = rest.scale(&inv).neg();
        self.install(g, sol)
    }

    /// Solves `eq = 0` when both a complex generator and its conjugate occur.
    pub fn solve_gen_mixed(&mut self, eq: &Form, gen: &str) -> Result<Form, LnError> {
        let s = self.parser.space.clone();
        let g = s.index(gen)?;
        let gc = s.conj(g);
        let e = self.one_form(eq, gen)?;
        let k = e.component(&[g as u8]);
        let m = e.component(&[gc as u8]);
        let mut rest = e.clone();
        rest.add_term([g as u8].into_iter().collect(), &-&k);
        rest.add_term([gc as u8].into_iter().collect(), &-&m);
        let kc = self.restrict_poly(&self.conj_poly(&k))?;
        let mc = self.restrict_poly(&self.conj_poly(&m))?;
        let det = &(&k * &kc) - &(&m * &mc);
        let inv = det.inverse().ok_or_else(|| LnError::Invariant(format!("system for {gen} is not solvable by a monomial")))?;
        let rest_c = self.restrict(&rest.conj())?;
        let sol = rest_c.scale(&m).sub(&rest.scale(&kc))?.scale(&inv);
        self.install(g, sol)
    }

    fn one_form(&self, eq: &Form, gen: &str) -> Result<Form, LnError> {
        let e = self.restrict(eq)?;
        if e.degree().is_some_and(|d| d != 1) {
            return Err(LnError::Input(format!("equation for {gen} is not a 1-form")));
        }
        Ok(e)
    }

    fn install(&mut self, g: usize, sol: Form) -> Result<Form, LnError> {
        let s = self.parser.space.clone();
        let mut new: BTreeMap<usize, Form> = [(g, sol.clone())].into();
        let gc = s.conj(g);
        if gc != g {
            new.insert(gc, self.restrict(&sol.conj())?);
        }
        let images: Vec<Form> =
            (0..s.len()).map(|i| new.get(&i).cloned().unwrap_or_else(|| Form::gen_index(&s, i))).collect();
        for v in self.gens.values_mut() {
            *v = v.pullback(&s, &images)?;
        }
        if gc != g {
            let c = new[&gc].pullback(&s, &images)?;
            new.insert(gc, c);
        }
        self.gens.extend(new);
        Ok(sol)
    }

    /// Structure equation of a remaining generator on the sub-bundle.
    pub fn structure(&self, gen: &str) -> Result<Form, LnError> {
        self.restrict(self.table.gen_rule(gen)?)
    }
}
