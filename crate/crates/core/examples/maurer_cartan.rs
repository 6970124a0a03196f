// Regenerates the Maurer-Cartan table of the frame bundle over the
// hyperquadric for both signs and compares it with the printed table.

use std::collections::BTreeMap;
use std::error::Error;

use crembed::exterior::pit;
use crembed::unitary_frames::{build_mu, mc_expand, umc_table};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for eps in [1, -1] {
        let mu = build_mu(eps, false)?;
        let mc = mc_expand(&mu)?;
        let printed = umc_table(eps)?;
        let mut worst = 0.0f64;
        let mut exact = true;
        for g in mu.space.names() {
            let diff = mc.table.gen_rule(g)?.sub(printed.gen_rule(g)?)?;
            exact &= diff.is_zero();
            worst = worst.max(pit(&diff, &[0, 1, 2], &BTreeMap::new()).max_abs);
        }
        let d2 = mc.table.check_d_squared()?;
        println!(
            "eps = {eps:+}: {} generators, entry-exact {exact}, max residual {worst:e}, d^2 = 0 {}",
            mu.space.len(),
            d2.all_zero()
        );
        println!("  d kappa = {}", mc.table.gen_rule("kappa")?.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("maurer-cartan example");
}
