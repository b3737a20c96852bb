//! Command line front end: exact identity checks, exhaustive combinatorial
//! checks, and the numeric inverse Wronskian solver.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use gaudin::exactalg::BigFloat;

use crate::input::{parse_tolerance, InputError};

#[derive(Parser, Debug)]
#[command(name = "gaudin", version, about = "Bethe subalgebra of C[S_n] and the inverse Wronskian problem")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// working precision of the numeric pipeline
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision_bits: u32,
    /// numeric tolerance, default 10^-(bits/10)
    #[arg(long, global = true)]
    pub tolerance: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// write the JSON result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON output (always on)
    #[arg(long, global = true)]
    pub json: bool,
}

impl Global {
    pub fn tolerance(&self) -> Result<BigFloat, InputError> {
        match &self.tolerance {
            Some(s) => parse_tolerance(s, self.precision_bits),
            None => Ok(BigFloat::ten_pow_neg(self.precision_bits / 10, self.precision_bits)),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact check of D+ D- = d^(2n) over Q(u)[S_n]
    VerifyIdentity(VerifyArgs),
    /// Solve the inverse Wronskian problem for w = prod (u + z_i)
    Solve(SolveArgs),
    /// Exhaustive checks of the algebraic structure for one n
    Check(CheckArgs),
    /// Canonical coordinates, Grassmann duals and pairing for solve output
    Dualize(DualizeArgs),
    /// Schubert cell data for a partition or a space of polynomials
    SchubertType(SchubertArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["z", "random"])))]
pub struct VerifyArgs {
    /// points as p/q, comma separated; repeat for several tuples
    #[arg(long, allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// number of random tuples (every third one has a repeated point)
    #[arg(long, requires = "n")]
    pub random: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// permit n >= 5
    #[arg(long)]
    pub allow_large: bool,
    /// record wall-clock times in the JSON (breaks byte-stable output)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// points: all p/q (exact) or all decimal / sqrt(x)
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["commute", "centre", "f_vanishing", "bijection"])))]
pub struct CheckArgs {
    /// all Bethe generators commute
    #[arg(long, value_name = "N")]
    pub commute: Option<usize>,
    /// the central tuples c^lambda separate partitions
    #[arg(long, value_name = "N", alias = "center")]
    pub centre: Option<usize>,
    /// F vanishes off the empty support and the expansion sums to D+ D-
    #[arg(long, value_name = "N")]
    pub f_vanishing: Option<usize>,
    /// the bijection rho on every (k, l, k')
    #[arg(long, value_name = "N")]
    pub bijection: Option<usize>,
    /// raise the exhaustive cap (defaults: 4, centre 8)
    #[arg(long)]
    pub cap: Option<usize>,
    /// for --centre: compare matrix scalars up to this n
    #[arg(long, default_value_t = 5)]
    pub matrix_cap: usize,
    /// for --f-vanishing: exact points (default: seeded random)
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// for --f-vanishing: number of supported permutations to sample
    /// (default: all for n <= 3, 200 beyond)
    #[arg(long)]
    pub sample: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DualizeArgs {
    /// JSON written by `solve`
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("what").required(true).args(["partition", "basis"])))]
pub struct SchubertArgs {
    /// e.g. 2,1
    #[arg(long)]
    pub partition: Option<String>,
    /// dimension of the space (default: number of basis polynomials, or |lambda|)
    #[arg(long)]
    pub n: Option<usize>,
    /// polynomial coefficients, constant term first; repeat per basis element
    #[arg(long, allow_hyphen_values = true)]
    pub basis: Vec<String>,
}

/// Result of one command: JSON document, pass flag, human summary.
pub struct Outcome {
    pub json: serde_json::Value,
    pub passed: bool,
    pub summary: String,
}

fn emit(global: &Global, command: &str, out: &Outcome) -> std::io::Result<()> {
    let doc = serde_json::json!({
        "command": command,
        "passed": out.passed,
        "result": out.json,
    });
    let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    match &global.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::VerifyIdentity(_) => "verify-identity",
        Command::Solve(_) => "solve",
        Command::Check(_) => "check",
        Command::Dualize(_) => "dualize",
        Command::SchubertType(_) => "schubert-type",
    };
    let result = match &cli.command {
        Command::VerifyIdentity(a) => commands::verify_identity(&cli.global, a),
        Command::Solve(a) => commands::solve(&cli.global, a),
        Command::Check(a) => commands::check(&cli.global, a),
        Command::Dualize(a) => commands::dualize(&cli.global, a),
        Command::SchubertType(a) => commands::schubert_type(&cli.global, a),
    };
    match result {
        Ok(out) => {
            eprintln!("{}", out.summary);
            if let Err(e) = emit(&cli.global, name, &out) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            eprintln!("{}", if out.passed { "PASS" } else { "FAIL" });
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
