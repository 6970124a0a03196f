// Drives the command-line front end in process and reads back its report.

use std::error::Error;

use crembed::cli::{run, Report};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for line in ["verify mc --epsilon -1", "catalog check --label IX.L --param B=1", "embed decide --model IV.F --target su22", "kerr check --H z1*z3+z2 --samples 50"] {
        let args: Vec<String> = line.split_whitespace().map(String::from).collect();
        let out = run(&args);
        let r: Report = serde_json::from_str(&out.stdout)?;
        println!("{line:<44} exit {} status {} checks {:>3} digest {}", out.code, r.status.as_str(), r.checks.len(), &r.inputs_digest[..12]);
    }
    let out = run(&["catalog".to_string(), "check".to_string(), "--label".to_string(), "II.A".to_string(), "--format".to_string(), "table".to_string()]);
    print!("{}", out.stdout);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cli example");
}
