fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = crembed::cli::run(&args[1..]);
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    std::process::exit(out.code);
}
