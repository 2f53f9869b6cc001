//! `vaisman`: verify, construct, reduce and classify metric Lie algebras, and compute lattice homology.
//!
//! Exit codes: 0 when the requested verdict holds, 1 when it does not, 2 on usage or input errors.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "vaisman", version, about = "Exact checks for LCK, Vaisman, Sasakian and coKähler Lie algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 20240917)]
    pub seed: u64,
    /// Random samples for the spectrum and LSA completeness checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    /// Tolerance of the floating-point adapted block basis (display only).
    #[arg(long, global = true, default_value_t = vaisman_core::metricgeo::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Compact JSON report.
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one structure on an algebra file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        structure: Structure,
    },
    /// Build an algebra file.
    Construct(ConstructArgs),
    /// Reduce a unimodular solvable Vaisman algebra to its Kähler flat package.
    Reduce {
        file: PathBuf,
        /// Write the package (k with metric, J and derivation) here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Match a Vaisman algebra against the dimension 4 and 6 catalogue.
    Classify {
        file: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Lattice homology.
    #[command(subcommand)]
    Lattice(LatticeCommand),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Lie,
    Metric,
    Hermitian,
    Lck,
    Vaisman,
    KahlerFlat,
    Sasakian,
    Cokahler,
    Lsa,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructKind {
    CentralExt,
    DoubleExt,
    Vaisman,
    Cokahler,
    Lsa,
    Oscillator,
    Tower,
    Family,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    /// Input algebra file.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Output file; without it the algebra file is embedded in the report.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `omega` for the fundamental form of the file's metric and J, or `file` for its `beta`.
    #[arg(long, default_value = "omega")]
    pub beta: String,
    /// Rotation speeds, comma separated rationals.
    #[arg(short = 'a', long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// Tower: number of planes in z ∩ Jz.
    #[arg(short = 'l', long, default_value_t = 0)]
    pub l: usize,
    /// Tower: rotation speeds of D′ on all l + m planes.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    /// Family name: rxh3, rsemih3, rxh5, rsemidrh5, rxs5, rsemid0s5.
    #[arg(long)]
    pub tag: Option<String>,
    /// Parameter r of the D_r family.
    #[arg(long, default_value = "1")]
    pub r: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeFamily {
    Oscillator,
    Tower,
    Heisenberg,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCommand {
    /// First homology of one lattice.
    H1(H1Args),
    /// Both dimension 6 tables.
    Table {
        #[arg(short = 'k', long, value_delimiter = ',', default_values_t = vec![1i64, 2, 3])]
        k: Vec<i64>,
    },
}

#[derive(Args, Debug)]
pub struct H1Args {
    #[arg(long, value_enum)]
    pub family: LatticeFamily,
    #[arg(short = 'a', long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<i64>,
    #[arg(short = 'k', long, default_value_t = 1)]
    pub k: i64,
    /// Oscillator: angle in quarter turns.
    #[arg(long, default_value_t = 4)]
    pub turn: i64,
    #[arg(short = 'l', long, default_value_t = 0)]
    pub l: usize,
    /// Tower: number of planes acted on by H; must equal the length of `-a`.
    #[arg(short = 'm', long)]
    pub m: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<i64>,
    #[arg(long, default_value_t = 4)]
    pub turn_j: i64,
    #[arg(long, default_value_t = 4)]
    pub turn_i: i64,
    /// Heisenberg: n.
    #[arg(short = 'n', long, default_value_t = 1)]
    pub n: usize,
}

/// Usage or input problem; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn emit(report: &Report, g: &Global, text: Option<String>) {
    let v = report.to_value();
    let body = if g.json {
        format!("{}\n", serde_json::to_string(&v).expect("serializable"))
    } else if g.pretty {
        format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
    } else if let Some(t) = text {
        t
    } else {
        let mut s = String::new();
        if let Some(b) = report.verdict {
            s.push_str(&format!("verdict: {b}\n"));
        }
        for (k, val) in &report.results {
            s.push_str(&format!("{k}: {}\n", serde_json::to_string(val).expect("serializable")));
        }
        s
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut report = Report::new(argv[1..].to_vec(), cli.global.seed);
    match commands::run(&cli, &mut report) {
        Ok(text) => {
            emit(&report, &cli.global, text);
            match report.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
