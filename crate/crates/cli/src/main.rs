mod args;
mod records;

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Mutex;

use chrono::{SecondsFormat, Utc};
use clap::Parser;
use nsf_core::analytic::{criterion_grh, criterion_odd, optimize_a, OptimizeMode};
use nsf_core::arith::ln_biguint;
use nsf_core::gate::{gate, GateOutcome};
use nsf_core::representations::CountingTable;
use nsf_core::verifier::{RangeVerifier, VerificationReport, VerifierConfig};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use args::{
    Cli, Command, CountArgs, CriterionArgs, ExceptionsArgs, GateArgs, Mode, NArg, OptimizeArgs,
    Quantity, VerifyArgs,
};
use records::{RunManifest, SegmentLine, TotalLine};

/// `verify` beyond this needs `--full`.
const DESK_LIMIT: u64 = 100_000_001;

/// Largest n for the table-based subcommands.
const TABLE_LIMIT: u64 = 1_000_000_000;

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Outcome {
    lines: Vec<String>,
    found_exception: bool,
    parameters: Option<Value>,
}

impl Outcome {
    fn single<T: Serialize>(v: &T) -> Self {
        Outcome {
            lines: vec![to_line(v)],
            found_exception: false,
            parameters: None,
        }
    }
}

fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output records serialize")
}

fn timestamp() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = timestamp();
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Count(a) => count(a),
        Command::Exceptions(a) => exceptions(a),
        Command::Criterion(a) => criterion(a),
        Command::OptimizeA(a) => optimize(a),
        Command::GrhGate(a) => grh_gate(a),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let manifest = RunManifest {
        subcommand: cli.command.name(),
        parameters: outcome
            .parameters
            .unwrap_or_else(|| cli.command.parameters()),
        tool_version: env!("CARGO_PKG_VERSION"),
        started,
        finished: timestamp(),
    };
    let output = match &cli.command {
        Command::Verify(a) => a.output.as_deref(),
        _ => None,
    };
    if let Err(e) = write_lines(output, &manifest, &outcome.lines) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    if outcome.found_exception {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn write_lines(path: Option<&Path>, manifest: &RunManifest, lines: &[String]) -> io::Result<()> {
    let mut w: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(w, "{}", to_line(manifest))?;
    for l in lines {
        writeln!(w, "{l}")?;
    }
    w.flush()
}

fn thread_count(flag: Option<usize>) -> Result<usize, UsageError> {
    let n = match std::env::var("NSF_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            UsageError(format!("NSF_THREADS must be a positive integer, got {v:?}"))
        })?,
        Err(_) => match flag {
            Some(t) => t,
            None => return Ok(VerifierConfig::default().thread_count),
        },
    };
    if n == 0 {
        return Err(UsageError("thread count must be positive".into()));
    }
    Ok(n)
}

fn read_checkpoint(path: &Path) -> Result<BTreeMap<u64, VerificationReport>, UsageError> {
    let mut done = BTreeMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(UsageError(format!("reading {}: {e}", path.display()))),
    };
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<SegmentLine>(&line) {
            Ok(s) => {
                done.insert(s.lo, VerificationReport::from(&s));
            }
            // an interrupted run can leave a torn final line
            Err(e) => eprintln!("warning: skipping checkpoint line {}: {e}", i + 1),
        }
    }
    Ok(done)
}

fn verify(a: &VerifyArgs) -> Result<Outcome, UsageError> {
    if a.end > DESK_LIMIT && !a.full {
        return Err(UsageError(format!(
            "--end {} exceeds {DESK_LIMIT}; pass --full for long runs",
            a.end
        )));
    }
    let cfg = VerifierConfig {
        segment_width: a.segment_width,
        s1_bound: a.s1_bound,
        s2_bound: a.s2_bound,
        thread_count: thread_count(a.threads)?,
        extend_cover_left: !a.no_extend_cover,
    };
    let verifier = RangeVerifier::new(cfg.clone(), a.end)?;
    let completed = match &a.checkpoint {
        Some(p) => read_checkpoint(p)?,
        None => BTreeMap::new(),
    };
    let sink = match &a.checkpoint {
        Some(p) => Some(Mutex::new(
            OpenOptions::new().create(true).append(true).open(p)?,
        )),
        None => None,
    };
    let fresh = Mutex::new(BTreeMap::new());
    let write_error = Mutex::new(None);
    let total = verifier.verify_range_resumable(a.start, a.end, &completed, |r| {
        let line = SegmentLine::from(r);
        if let Some(sink) = &sink {
            let mut f = sink.lock().unwrap();
            if let Err(e) = writeln!(f, "{}", to_line(&line)).and_then(|_| f.flush()) {
                write_error.lock().unwrap().get_or_insert(e);
            }
        }
        fresh.lock().unwrap().insert(r.lo, line);
    })?;
    if let Some(e) = write_error.into_inner().unwrap() {
        return Err(UsageError(format!("writing checkpoint: {e}")));
    }

    let fresh = fresh.into_inner().unwrap();
    let mut lines = Vec::new();
    let mut resumed = 0;
    let segments = verifier.segments(a.start, a.end);
    for &(lo, _) in &segments {
        let line = match fresh.get(&lo) {
            Some(l) => l.clone(),
            None => {
                resumed += 1;
                SegmentLine::from(&completed[&lo])
            }
        };
        lines.push(to_line(&line));
    }
    let found_exception = !total.exceptions.is_empty();
    lines.push(to_line(&TotalLine {
        totals: SegmentLine::from(&total),
        segments: segments.len(),
        resumed,
    }));

    let mut parameters = serde_json::to_value(a)?;
    parameters["threads_used"] = json!(cfg.thread_count);
    Ok(Outcome {
        lines,
        found_exception,
        parameters: Some(parameters),
    })
}

fn table_for(n: u64) -> Result<CountingTable, UsageError> {
    if n > TABLE_LIMIT {
        return Err(UsageError(format!(
            "n must be at most {TABLE_LIMIT}, got {n}"
        )));
    }
    Ok(CountingTable::new(n)?)
}

fn count(a: &CountArgs) -> Result<Outcome, UsageError> {
    if a.n < 2 {
        return Err(UsageError("n must be at least 2".into()));
    }
    let t = table_for(a.n)?;
    let n = a.n;
    let value = match a.what {
        Quantity::T => json!(t.count_t(n)?),
        Quantity::G => json!(t.count_g(n)?),
        Quantity::R => json!(t.weighted_count(n)?.value),
        Quantity::Theta => json!(t.theta(n)?.value),
        Quantity::Deficit => json!(t.deficit(n)?),
        Quantity::Witness => match t.find_witness(n)? {
            Some(w) => json!({"p": w.p, "s": w.s}),
            None => Value::Null,
        },
    };
    let key = serde_json::to_value(a.what)?;
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), json!(n));
    obj.insert(
        key.as_str().expect("quantity names are strings").into(),
        value,
    );
    Ok(Outcome::single(&obj))
}

fn exceptions(a: &ExceptionsArgs) -> Result<Outcome, UsageError> {
    if a.start >= a.end {
        return Err(UsageError("need start < end".into()));
    }
    let t = table_for(a.end - 1)?;
    let list = t.exceptions(a.start, a.end)?;
    Ok(Outcome::single(
        &json!({"lo": a.start, "hi": a.end, "exceptions": list}),
    ))
}

fn log_n(n: &NArg, mode: Mode) -> Result<f64, UsageError> {
    match n {
        NArg::Log(l) => Ok(*l),
        NArg::Int(n) => {
            if *n == BigUint::ZERO {
                return Err(UsageError("n must be positive".into()));
            }
            if mode == Mode::Odd && !n.bit(0) {
                return Err(UsageError(format!("odd mode needs odd n, got {n}")));
            }
            Ok(ln_biguint(n))
        }
    }
}

fn criterion(a: &CriterionArgs) -> Result<Outcome, UsageError> {
    if !(a.a > 0.0 && a.a < 0.5) {
        return Err(UsageError(format!("A must lie in (0, 1/2), got {}", a.a)));
    }
    let l = log_n(&a.n, a.mode)?;
    let b = match a.mode {
        Mode::Odd => criterion_odd(l, a.a)?,
        Mode::Grh => criterion_grh(l, a.a)?,
    };
    Ok(Outcome::single(&b))
}

fn optimize(a: &OptimizeArgs) -> Result<Outcome, UsageError> {
    let l = log_n(&a.n, a.mode)?;
    let mode = match a.mode {
        Mode::Odd => OptimizeMode::Odd,
        Mode::Grh => OptimizeMode::Grh,
    };
    let r = optimize_a(l, mode)?;
    Ok(Outcome::single(&json!({
        "mode": mode,
        "log_n": l,
        "A": r.a,
        "rhs": r.rhs,
        "unimodal": r.unimodal,
    })))
}

fn grh_gate(a: &GateArgs) -> Result<Outcome, UsageError> {
    let line = match gate(&a.n)? {
        GateOutcome::Witness(w) => json!({
            "n": w.n.to_string(),
            "outcome": "witness",
            "q": w.q,
            "bound": w.bound,
        }),
        GateOutcome::NoWitness => json!({"n": a.n.to_string(), "outcome": "no_witness"}),
    };
    Ok(Outcome::single(&line))
}
