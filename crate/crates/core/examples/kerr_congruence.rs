// Shear-free congruences from holomorphic `H(z1, z2, z3) = 0`, and a
// non-holomorphic control that is not shear-free.

use std::error::Error;

use crembed::config::Config;
use crembed::kerr::{optical_scalars, CongruenceSpec, ExplicitZeta, HPoly};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = Config::default();
    for h in ["z2", "z1 - i", "z1*z3 + z2 - 2", "z1 + z3^2 + (1+i) z2"] {
        let spec = CongruenceSpec::implicit(HPoly::parse(h)?)?;
        let r = optical_scalars(&spec, 200, 0, &cfg)?;
        println!(
            "H = {h:<22} regular {:>3}/{}  shear {:.2e}  geodesic {:.2e}  quadric {:.2e}  levi {:?}",
            r.regular, r.samples, r.shear_residual, r.geodesic_residual, r.quadric_residual, r.levi_class
        );
    }
    let control = CongruenceSpec::explicit(ExplicitZeta::WbarOverV);
    let r = optical_scalars(&control, 200, 0, &cfg)?;
    println!("zeta = wbar/v (control)       shear {:.2e}", r.shear_residual);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("kerr example");
}
