use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Serialize, Serializer};

#[derive(Parser, Debug)]
#[command(
    name = "nsf",
    version,
    about = "Representations n = p + s with p prime and s not squarefree"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every n in [start, end) with the segmented sieve pipeline.
    Verify(VerifyArgs),
    /// Exact counting functions at a single n.
    Count(CountArgs),
    /// List n in [start, end) with no representation.
    Exceptions(ExceptionsArgs),
    /// Evaluate an explicit criterion and print its term breakdown.
    Criterion(CriterionArgs),
    /// Choose A minimizing the criterion's right-hand side.
    OptimizeA(OptimizeArgs),
    /// Find a prime q <= 71 certifying n under GRH.
    GrhGate(GateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Count(_) => "count",
            Command::Exceptions(_) => "exceptions",
            Command::Criterion(_) => "criterion",
            Command::OptimizeA(_) => "optimize-a",
            Command::GrhGate(_) => "grh-gate",
        }
    }

    pub fn parameters(&self) -> serde_json::Value {
        let v = match self {
            Command::Verify(a) => serde_json::to_value(a),
            Command::Count(a) => serde_json::to_value(a),
            Command::Exceptions(a) => serde_json::to_value(a),
            Command::Criterion(a) => serde_json::to_value(a),
            Command::OptimizeA(a) => serde_json::to_value(a),
            Command::GrhGate(a) => serde_json::to_value(a),
        };
        v.expect("arguments serialize")
    }
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 25)]
    pub start: u64,
    /// Exclusive upper end.
    #[arg(long)]
    pub end: u64,
    #[arg(long, default_value_t = 10_000_000)]
    pub segment_width: u64,
    #[arg(long, default_value_t = 100_000)]
    pub s1_bound: u64,
    #[arg(long, default_value_t = 10_000)]
    pub s2_bound: u64,
    /// Worker threads; NSF_THREADS takes precedence.
    #[arg(long)]
    pub threads: Option<usize>,
    /// JSONL file of finished segments, read on start and appended to.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Write results here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Allow ranges beyond 1e8.
    #[arg(long)]
    pub full: bool,
    /// Cover only from primes inside each segment.
    #[arg(long)]
    pub no_extend_cover: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Quantity {
    /// Number of primes p < n with n - p squarefree.
    #[value(name = "T")]
    #[serde(rename = "T")]
    T,
    /// Goldbach partitions n = q1 + q2 with q1 <= q2.
    #[value(name = "g")]
    #[serde(rename = "g")]
    G,
    /// Sum of log p over p < n with n - p squarefree.
    #[value(name = "R")]
    #[serde(rename = "R")]
    R,
    /// Sum of log p over p <= n.
    #[value(name = "theta")]
    #[serde(rename = "theta")]
    Theta,
    /// R(n) - theta(n - 1); negative exactly when a witness exists.
    #[value(name = "deficit")]
    #[serde(rename = "deficit")]
    Deficit,
    /// Smallest non-squarefree s with n - s prime.
    #[value(name = "witness")]
    #[serde(rename = "witness")]
    Witness,
}

#[derive(Args, Debug, Serialize)]
pub struct CountArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum)]
    pub what: Quantity,
}

#[derive(Args, Debug, Serialize)]
pub struct ExceptionsArgs {
    #[arg(long, default_value_t = 1)]
    pub start: u64,
    /// Exclusive upper end.
    #[arg(long)]
    pub end: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Odd,
    Grh,
}

#[derive(Args, Debug, Serialize)]
pub struct CriterionArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Integer n, or `log:<real>` for log n directly.
    #[arg(long)]
    pub n: NArg,
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub a: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct OptimizeArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Integer n, or `log:<real>` for log n directly.
    #[arg(long)]
    pub n: NArg,
}

#[derive(Args, Debug, Serialize)]
pub struct GateArgs {
    #[arg(long)]
    #[serde(serialize_with = "display")]
    pub n: BigUint,
}

/// `n` given either exactly or through its logarithm.
#[derive(Clone, Debug, PartialEq)]
pub enum NArg {
    Int(BigUint),
    Log(f64),
}

impl FromStr for NArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("log:") {
            let l: f64 = rest
                .parse()
                .map_err(|e| format!("bad log value {rest:?}: {e}"))?;
            if !(l.is_finite() && l > 0.0) {
                return Err(format!("log n must be finite and positive, got {l}"));
            }
            Ok(NArg::Log(l))
        } else {
            s.parse::<BigUint>()
                .map(NArg::Int)
                .map_err(|e| format!("expected an integer or log:<real>, got {s:?}: {e}"))
        }
    }
}

impl fmt::Display for NArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NArg::Int(n) => write!(f, "{n}"),
            NArg::Log(l) => write!(f, "log:{l}"),
        }
    }
}

impl Serialize for NArg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
