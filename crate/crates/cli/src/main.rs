use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;

mod commands;
mod selftest;

#[derive(Parser, Debug)]
#[command(name = "acms", version, about = "Classify almost contact metric structures through their intrinsic endomorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Relative tolerance for zero tests.
    #[arg(long, global = true, env = "ACMS_TOLERANCE", default_value_t = acms::DEFAULT_TOL)]
    pub tolerance: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Where the tensor comes from: a JSON file or a catalog example.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// JSON file with `{structure, tensor}` or a Lie algebra model `{n, brackets, structure}`.
    #[arg(long, conflicts_with = "example")]
    pub input: Option<std::path::PathBuf>,

    /// Catalog example name (see `acms examples`).
    #[arg(long)]
    pub example: Option<String>,

    #[command(flatten)]
    pub params: Params,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Params {
    #[arg(long)]
    pub n: Option<usize>,

    /// Comma-separated values, e.g. `1,-2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<f64>>,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class label, component norms, intrinsic data and predicates.
    Classify(Source),
    /// Orthogonal projection onto a class such as `C6+C7`, `Cmin` or `C(1,-1)`.
    Project {
        #[command(flatten)]
        source: Source,
        #[arg(long = "class")]
        class: String,
    },
    /// Computed and expected dimensions of the classes.
    Dims {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Minimal connection, torsion types, characteristic connection, parallel torsion.
    Connection(Source),
    /// List the example catalog.
    Examples,
    /// Run the invariant battery.
    Selftest {
        /// Restrict to one value of n.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
        eprintln!("error: tolerance must be a positive number");
        return ExitCode::from(1);
    }
    let outcome = commands::run(&cli);
    if !outcome.stdout.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{}", outcome.stdout.trim_end());
    }
    if let Some(msg) = &outcome.error {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.code)
}
