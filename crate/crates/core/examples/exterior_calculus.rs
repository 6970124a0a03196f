// Structure table of the Heisenberg group: `d kappa = i eta ^ etabar`,
// `d eta = 0`. Checks `d^2 = 0` exactly and evaluates a form numerically.

use std::collections::BTreeMap;
use std::error::Error;
use std::sync::Arc;

use crembed::exterior::{pit, Form, FormParser, Space, StructureTable, SymbolTable};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut syms = SymbolTable::new();
    syms.declare_real("x")?;
    let s = Space::builder(Arc::new(syms)).real("kappa").complex_bar("eta").build()?;
    let mut t = StructureTable::new(&s);
    let p = FormParser::new(&s);
    t.set_gen("kappa", p.parse("i*eta^etabar")?)?;
    t.set_gen_conj("eta", Form::zero(&s))?;
    t.set_scalar("x", p.parse("eta + etabar")?)?;

    let closure = t.check_d_squared()?;
    println!("d^2 = 0 on {} generators: {}", closure.entries.len(), closure.all_zero());

    let f = p.parse("x**2*kappa")?;
    let df = t.d(&f)?;
    println!("d(x^2 kappa) = {}", df.display());
    let d2 = t.d(&df)?;
    println!("d^2(x^2 kappa) = {}", d2.display());
    assert!(d2.is_zero());

    let k = Form::gen(&s, "kappa")?;
    let vol = k.wedge(&t.d(&k)?)?;
    println!("kappa ^ d kappa = {}", vol.display());

    let diff = vol.sub(&p.parse("i*kappa^eta^etabar")?)?;
    let r = pit(&diff, &[0, 1, 2], &BTreeMap::new());
    println!("identity test residual: {:e}", r.max_abs);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("exterior example");
}
