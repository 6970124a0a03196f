// Checks the homogeneous relations and the full structure equations of
// every default catalog model, then of `(VII_t, H)` at several `t`.

use std::collections::BTreeMap;
use std::error::Error;

use crembed::catalog::{check_homogeneous_relations, default_models, model, verify_structure, Label};
use crembed::config::Config;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = Config::default();
    for m in default_models() {
        let rel = check_homogeneous_relations(&m, &cfg);
        let st = verify_structure(&m, &cfg)?;
        let worst = st.checks.iter().map(|c| c.residual).fold(0.0, f64::max);
        println!("{:<14} relations {:<5} structure {:<5} ({} lines, max residual {worst:e})", m.label.as_str(), rel.pass, st.pass, st.checks.len());
    }
    for t in [0.5, 1.0, 2.0, 5.0] {
        let m = model(Label::VIItH, &BTreeMap::from([("t".to_string(), t)]))?;
        let rel = check_homogeneous_relations(&m, &cfg);
        println!("VII_t,H t={t}: constants {:?}, relations {}", m.constants(), rel.pass);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("catalog example");
}
