// Constant-coefficient curved embeddings on each branch, with the induced
// catalog constants `(A, B, C)`.

use std::error::Error;

use crembed::config::Config;
use crembed::embedding_ln::curved::{solve_curved_equivariant, CurvedBranch};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = Config::default();
    for eps in [1, -1] {
        for b in CurvedBranch::ALL {
            let sols = solve_curved_equivariant(eps, b, None, &cfg)?;
            println!("eps = {eps:+}, {}: {} solution(s)", b.as_str(), sols.len());
            for s in sols {
                println!(
                    "  a = {:.6}, b = {:.6}{:+.6}i, A = {:.6}{:+.6}i, B = {:.6}, C = {:.6}, residual {:e}",
                    s.a, s.b[0], s.b[1], s.big_a[0], s.big_a[1], s.big_b, s.big_c, s.max_residual
                );
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("curved embedding example");
}
