// Equivariant embeddability of every default catalog model in both
// hyperquadrics.

use std::error::Error;

use crembed::catalog::default_models;
use crembed::config::Config;
use crembed::embedding_ln::decide::{decide_embeddable, Target};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = Config::default();
    println!("{:<14} {:<8} {:<8}", "model", "SU(3,1)", "SU(2,2)");
    for m in default_models() {
        let mut row = Vec::new();
        for t in Target::ALL {
            let d = decide_embeddable(&m, t, &cfg)?;
            row.push(if d.embeddable { "yes" } else { "no" });
        }
        println!("{:<14} {:<8} {:<8}", m.label.as_str(), row[0], row[1]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("decide example");
}
