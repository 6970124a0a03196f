// Levi-flat embeddings in the split hyperquadric: closure of the tables and
// the classification of a few jet states.

use std::error::Error;

use crembed::config::Config;
use crembed::embedding_lf::decide::lf_decide_homogeneous;
use crembed::embedding_lf::state::LfJetState;
use crembed::embedding_lf::table::{lf_verify_closure, LfRules};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = Config::default();
    let rep = lf_verify_closure(LfRules::Printed, &cfg)?;
    println!("closure: {} checks, pass {}, cut {:?}", rep.checks.len(), rep.pass, rep.cut);

    let states: [(&str, &[(&str, f64)]); 5] = [
        ("rank 0", &[("a", 0.0), ("b", 0.0)]),
        ("rank 1, u = 3^(-1/3)", &[("a", 1.0), ("b", 0.0), ("u", 3f64.powf(-1.0 / 3.0)), ("z", 0.0)]),
        ("rank 1, u = 1/2", &[("a", 1.0), ("b", 0.0), ("u", 0.5), ("z", 0.0)]),
        ("rank 2, b = -1, u1 = 0", &[("b", -1.0), ("u1", 0.0)]),
        ("rank 2, b = -1, u1 = 1, v0 = 5/2", &[("b", -1.0), ("u1", 1.0), ("v0", 2.5), ("v", 1.0), ("w0", 0.0), ("w1", 0.3)]),
    ];
    for (name, vals) in states {
        let mut st = LfJetState::new();
        for (k, v) in vals {
            st = st.with(k, *v)?;
        }
        let c = lf_decide_homogeneous(&st, &cfg)?;
        println!("{name:<34} {}", c.description);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("levi-flat example");
}
