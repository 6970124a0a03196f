//! Batch front end: verification suites, catalog queries, embedding and
//! Levi-flat classification, Kerr checks.

pub mod report;
mod verbs;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::config::Config;

pub use report::{Check, Report, Status};

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "crembed", version, about = "CR embedding, catalog and Kerr verification")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Base seed for identity testing and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override a tolerance: pit, catalog, kerr, fd_step or rank.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Maurer-Cartan checks.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Homogeneous model catalog.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
    /// Levi-nondegenerate embeddings.
    Embed {
        #[command(subcommand)]
        what: EmbedCmd,
    },
    /// Levi-flat embeddings in the split hyperquadric.
    Lf {
        #[command(subcommand)]
        what: LfCmd,
    },
    /// Shear-free congruences in Minkowski space.
    Kerr {
        #[command(subcommand)]
        what: KerrCmd,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Regenerate the Maurer-Cartan table and compare with the printed one.
    Mc {
        /// 1 or -1; both when omitted.
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// List the catalog labels and their constants.
    List,
    /// Check relations and structure equations of one model, or of all.
    Check {
        #[arg(long)]
        label: Option<String>,
        #[arg(long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Rules {
    Printed,
    Derived,
}

#[derive(Subcommand, Debug)]
enum EmbedCmd {
    /// Closure of the jet structure equations by identity testing.
    CheckClosure {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<i64>,
        /// Jet rules over H^2; the printed ones do not close.
        #[arg(long, value_enum, default_value_t = Rules::Derived)]
        rules: Rules,
        /// Number of single-term mutations of the curvature formulas to test.
        #[arg(long, default_value_t = 0)]
        mutations: usize,
    },
    /// Flat (S = 0) embeddings.
    SolveFlat {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<i64>,
        #[arg(long)]
        state: Option<String>,
    },
    /// Constant-coefficient curved embeddings.
    SolveCurved {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<i64>,
        /// A=0,b=0 | A=0,b!=0 | A!=0; all when omitted.
        #[arg(long)]
        branch: Option<String>,
        #[arg(long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
    /// Equivariant embeddability of a catalog model.
    Decide {
        #[arg(long)]
        model: String,
        /// su31 or su22; both when omitted.
        #[arg(long)]
        target: Option<String>,
        #[arg(long = "param", value_name = "K=V")]
        param: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum LfCmd {
    /// Closure of the Levi-flat tables and the rank reductions.
    Closure {
        #[arg(long, value_enum, default_value_t = Rules::Printed)]
        rules: Rules,
    },
    /// Classify a Levi-flat jet state.
    Classify {
        #[arg(long)]
        state: String,
    },
}

#[derive(Subcommand, Debug)]
enum KerrCmd {
    /// Optical scalars of the congruence H(z1, z2, z3) = 0.
    Check {
        #[arg(long = "H", value_name = "EXPR", allow_hyphen_values = true)]
        h: String,
        /// u0,u1,v0,v1,rew0,rew1,imw0,imw1
        #[arg(long = "box", allow_hyphen_values = true)]
        sample_box: Option<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Failure before a report exists.
#[derive(Debug)]
pub(crate) enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    /// Computation failed: exit 1.
    Failed(String),
}

pub(crate) type CliResult<T> = Result<T, CliError>;

/// Everything a verb needs besides its own flags.
pub(crate) struct Ctx {
    pub cfg: Config,
    pub seed: u64,
}

fn parse_config(c: &Common) -> CliResult<Config> {
    let mut cfg = Config::with_seed(c.seed);
    for t in &c.tol {
        let (k, v) = t.split_once('=').ok_or_else(|| CliError::Usage(format!("--tol expects NAME=VALUE, got {t}")))?;
        let v: f64 = v.trim().parse().map_err(|_| CliError::Usage(format!("--tol {k}: not a number")))?;
        cfg.set(k.trim(), v).map_err(CliError::Usage)?;
    }
    Ok(cfg)
}

pub(crate) fn parse_params(ps: &[String]) -> CliResult<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for p in ps {
        let (k, v) = p.split_once('=').ok_or_else(|| CliError::Usage(format!("--param expects K=V, got {p}")))?;
        let v: f64 = v.trim().parse().map_err(|_| CliError::Usage(format!("--param {k}: not a number")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

pub(crate) fn epsilons(e: Option<i64>) -> CliResult<Vec<i64>> {
    match e {
        None => Ok(vec![1, -1]),
        Some(x @ (1 | -1)) => Ok(vec![x]),
        Some(x) => Err(CliError::Usage(format!("--epsilon must be 1 or -1, got {x}"))),
    }
}

fn dispatch(cmd: &Cmd, ctx: &Ctx) -> CliResult<(Vec<Check>, Value, Value)> {
    match cmd {
        Cmd::Verify { what: VerifyCmd::Mc { epsilon } } => verbs::verify_mc(&epsilons(*epsilon)?, ctx),
        Cmd::Catalog { what: CatalogCmd::List } => verbs::catalog_list(),
        Cmd::Catalog { what: CatalogCmd::Check { label, param } } => verbs::catalog_check(label.as_deref(), &parse_params(param)?, ctx),
        Cmd::Embed { what } => match what {
            EmbedCmd::CheckClosure { epsilon, rules, mutations } => {
                verbs::embed_closure(&epsilons(*epsilon)?, *rules == Rules::Derived, *mutations, ctx)
            }
            EmbedCmd::SolveFlat { epsilon, state } => verbs::embed_flat(*epsilon, state.as_deref(), ctx),
            EmbedCmd::SolveCurved { epsilon, branch, param } => {
                verbs::embed_curved(&epsilons(*epsilon)?, branch.as_deref(), &parse_params(param)?, ctx)
            }
            EmbedCmd::Decide { model, target, param } => verbs::embed_decide(model, target.as_deref(), &parse_params(param)?, ctx),
        },
        Cmd::Lf { what: LfCmd::Closure { rules } } => verbs::lf_closure(*rules == Rules::Derived, ctx),
        Cmd::Lf { what: LfCmd::Classify { state } } => verbs::lf_classify(state, ctx),
        Cmd::Kerr { what: KerrCmd::Check { h, sample_box, samples } } => verbs::kerr_check(h, sample_box.as_deref(), *samples, ctx),
    }
}

/// Runs one command line (without the program name).
pub fn run(args: &[String]) -> Output {
    let argv = std::iter::once("crembed".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Output { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let usage = |m: String| Output { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") };
    let cfg = match parse_config(&cli.common) {
        Ok(c) => c,
        Err(CliError::Usage(m) | CliError::Failed(m)) => return usage(m),
    };
    let ctx = Ctx { cfg, seed: cli.common.seed };
    match dispatch(&cli.cmd, &ctx) {
        Ok((checks, inputs, data)) => {
            let inputs = json!({"args": args, "inputs": inputs, "tolerances": ctx.cfg.as_map(), "seed": ctx.seed});
            let report = Report::new(args.join(" "), &inputs, ctx.seed, checks, data);
            let stdout = match cli.common.format {
                Format::Json => report.to_json(),
                Format::Table => report.to_table(),
            };
            Output { code: report.exit_code(), stdout, stderr: String::new() }
        }
        Err(CliError::Usage(m)) => usage(m),
        Err(CliError::Failed(m)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(line: &str) -> Output {
        let args: Vec<String> = line.split_whitespace().map(String::from).collect();
        run(&args)
    }

    fn report(line: &str) -> Report {
        let out = call(line);
        serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{line}: {e}\n{}", out.stderr))
    }

    #[test]
    fn verify_mc_minus_one() {
        let out = call("verify mc --epsilon -1");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let r: Report = serde_json::from_str(&out.stdout).unwrap();
        assert!(r.checks.iter().filter(|c| c.name.starts_with("eps=-1/d")).count() >= 17);
        assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn catalog_ix_l() {
        let r = report("catalog check --label IX.L --param B=1");
        assert_eq!(r.status, Status::Pass);
        assert!(r.checks.iter().any(|c| c.name == "IX,L/relations/hidden" && c.status == Status::Pass));
    }

    #[test]
    fn decide_iv_f_su22() {
        let r = report("embed decide --model IV.F --target su22");
        assert_eq!(r.data["embeddable"], json!(false));
    }

    #[test]
    fn reports_are_byte_identical() {
        for line in ["kerr check --H z1*z3+z2 --samples 40 --seed 3", "catalog check --label VI_3.E"] {
            let a = call(line);
            let b = call(line);
            assert_eq!(a, b);
            let r: Report = serde_json::from_str(&a.stdout).unwrap();
            assert_eq!(r.to_json(), a.stdout);
        }
        assert_ne!(call("kerr check --H z2 --samples 20 --seed 1").stdout, call("kerr check --H z2 --samples 20 --seed 2").stdout);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call("frobnicate").code, 2);
        assert_eq!(call("verify mc --bogus").code, 2);
        assert_eq!(call("verify mc --epsilon 3").code, 2);
        assert_eq!(call("catalog check --label XX.Q").code, 2);
        assert_eq!(call("kerr check --H z1+").code, 2);
        assert_eq!(call("kerr check --H 1").code, 2);
        assert_eq!(call("verify mc --tol nope=1").code, 2);
        assert_eq!(call("embed check-closure --epsilon 1 --rules printed").code, 1);
        assert_eq!(call("--help").code, 0);
        let e = call("lf classify --state /nonexistent.json");
        assert_eq!(e.code, 2);
        assert!(e.stderr.contains("cannot read"));
    }

    #[test]
    fn tolerance_override_is_reported() {
        let r = report("kerr check --H z2 --samples 20 --tol kerr=1e-30");
        assert_eq!(r.status, Status::Fail);
        let c = r.checks.iter().find(|c| c.name == "shear").unwrap();
        assert_eq!(c.tolerance, Some(1e-30));
        let t = call("kerr check --H z2 --samples 20 --format table");
        assert!(t.stdout.contains("overall: pass"));
    }
}
