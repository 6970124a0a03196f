// Flat embeddings: the rank-one equations, the rank-two obstruction and the
// constant solutions, which turn out to be the model `(VI_3, E)`.

use std::error::Error;

use crembed::embedding_ln::flat::{solve_flat, transform_to_vi3e};
use crembed::embedding_ln::state::JetState;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for eps in [1, -1] {
        let fe = solve_flat(&JetState::symbolic(eps)?)?;
        println!("eps = {eps:+}: {} constant rank-two solutions", fe.constant.len());
        for c in &fe.constant {
            let t = transform_to_vi3e(&fe.rank_two, c)?;
            println!("  u1 = {}, c = {}, exact {}, matches (VI_3,E) {}", c.u1, c.c, c.exact, t.pass);
        }
    }
    let fe = solve_flat(&JetState::symbolic(-1)?)?;
    println!("{}", serde_json::to_string_pretty(&fe.to_json()["rank_one"])?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("flat embedding example");
}
