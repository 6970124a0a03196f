// Lorentzian metric `g = kappa rho - eta etabar` lifted from the Heisenberg
// coframe, and its behavior under an adapted change of coframe.

use std::error::Error;

use crembed::config::Config;
use crembed::kerr::metric::heisenberg_fixture;
use crembed::kerr::{lift_metric, Adapted};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = Config::default();
    let r = lift_metric(&heisenberg_fixture(), 50, 0, None, &cfg)?;
    println!("signature {:?} on every sample: {}", r.signature, r.signature_ok);
    println!("g(k,k) {:e}, k _| g - kappa {:e}", r.null_residual, r.contraction_residual);
    println!("L_k kappa {:e}, L_k eta {:e}, L_k rho {:e}", r.lie_kappa, r.lie_eta, r.lie_rho);

    let t = Adapted::new(2.0, Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0))?;
    let r = lift_metric(&heisenberg_fixture(), 20, 0, Some(t), &cfg)?;
    if let Some(tc) = r.transform {
        println!("conformal factor f = {} (residual {:e}); printed variant f = {} (residual {:e})", tc.f, tc.residual, tc.f_alt, tc.residual_alt);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("metric lift example");
}
