//! End-to-end acceptance checks, one line of output per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nsf_core::analytic::{
    artin_constant, bennett_log_x0, criterion_grh, criterion_odd, optimize_a, p_exact,
    prop2_upper_bound, qbound_check, ramare_tail, tail_oracle, OptimizeMode, PROP2_MIN_LOG_N,
};
use nsf_core::arith::{factorize, factorize_u64, ln_biguint, nth_prime, primorial};
use nsf_core::gate::{gate, least_prime_bound, GateOutcome, GATE_MIN_N};
use nsf_core::representations::{exceptions, CountingTable, DEFICIT_TOLERANCE};
use nsf_core::verifier::{verify_range, VerifierConfig};
use num_bigint::BigUint;
use rand::{rngs::StdRng, Rng, SeedableRng};

const Q20_PRIMORIAL: &str = "557940830126698960967415390";

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:.1?}, limit {limit:?}"))
}

fn exception_boundary() -> Result<String, String> {
    let small = exceptions(1, 25).map_err(|e| e.to_string())?;
    ensure(small.contains(&24), "24 missing from exceptions below 25")?;
    ensure(
        small == common::brute_exceptions(1, 25),
        "small exceptions differ from oracle",
    )?;
    let t = Instant::now();
    let lib = exceptions(25, 10_000_000).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(60), "scan to 1e7")?;
    let oracle = common::brute_exceptions(25, 10_000_000);
    ensure(lib == oracle, "library and oracle disagree on (24, 1e7)")?;
    ensure(lib.is_empty(), format!("exceptions above 24: {lib:?}"))?;
    Ok(format!("exceptions(1,25) = {small:?}, none in (24, 1e7)"))
}

fn pipeline_vs_oracle() -> Result<String, String> {
    let t = Instant::now();
    let oracle = common::brute_exceptions(25, 100_000);
    let mut reports = Vec::new();
    for threads in [1, 2, 8] {
        let cfg = VerifierConfig {
            segment_width: 10_000,
            thread_count: threads,
            ..VerifierConfig::default()
        };
        reports.push(verify_range(25, 100_000, &cfg).map_err(|e| e.to_string())?);
    }
    within(t, Duration::from_secs(10), "pipeline check")?;
    ensure(
        reports[0].exceptions == oracle,
        "pipeline exceptions differ from oracle",
    )?;
    ensure(
        reports.iter().all(|r| *r == reports[0]),
        "reports differ across thread counts",
    )?;
    let r = &reports[0];
    Ok(format!(
        "covered {} targeted {} fallback {} exceptions {:?}",
        r.covered_count, r.targeted_count, r.fallback_count, r.exceptions
    ))
}

fn desk_scale() -> Result<String, String> {
    let t = Instant::now();
    let r = verify_range(25, 100_000_001, &VerifierConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(r.is_balanced(), "report does not account for every n")?;
    ensure(
        r.exceptions.is_empty(),
        format!("exceptions: {:?}", r.exceptions),
    )?;
    ensure(
        elapsed < Duration::from_secs(300),
        format!("took {elapsed:.1?}"),
    )?;
    Ok(format!(
        "(24, 1e8]: covered {} targeted {} fallback {}",
        r.covered_count, r.targeted_count, r.fallback_count
    ))
}

fn identity_suite() -> Result<String, String> {
    let table = CountingTable::new(5_000).map_err(|e| e.to_string())?;
    let primes = common::byte_prime_table(5_000);
    let sqfree = common::byte_squarefree_table(5_000);
    let mut worst = 0f64;
    for n in 2..=5_000u64 {
        let by_definition: f64 = (2..n)
            .filter(|&p| primes[p as usize] && sqfree[(n - p) as usize])
            .map(|p| (p as f64).ln())
            .sum();
        let expanded = table
            .weighted_count_by_progressions(n)
            .map_err(|e| e.to_string())?;
        worst = worst.max((expanded - by_definition).abs());
        let d = table.deficit(n).map_err(|e| e.to_string())?;
        let has = (4..n.saturating_sub(1)).any(|s| !sqfree[s as usize] && primes[(n - s) as usize]);
        ensure(
            (d < -DEFICIT_TOLERANCE) == has,
            format!("deficit sign wrong at n = {n}"),
        )?;
    }
    ensure(worst < 1e-6, format!("decomposition error {worst:e}"))?;
    Ok(format!("max decomposition error {worst:.1e}"))
}

fn odd_reproduction() -> Result<String, String> {
    let l = bennett_log_x0();
    let b = criterion_odd(l, 0.34843).map_err(|e| e.to_string())?;
    ensure(b.verdict, "verdict false")?;
    ensure((b.rhs - 0.182).abs() <= 0.002, format!("rhs {}", b.rhs))?;
    let o = optimize_a(l, OptimizeMode::Odd).map_err(|e| e.to_string())?;
    ensure((o.a - 0.34843).abs() <= 1e-3, format!("A* = {}", o.a))?;
    let grid_ok = (0..1000).all(|i| {
        let x = l * (100f64 / l).powf(i as f64 / 999.0);
        criterion_odd(x, 0.34843).is_ok_and(|b| b.verdict)
    });
    ensure(grid_ok, "verdict false somewhere on [log 8e9, 100]")?;
    Ok(format!("rhs {:.6}, A* {:.5}", b.rhs, o.a))
}

fn grh_reproduction() -> Result<String, String> {
    let l = ln_biguint(&primorial(71));
    let b = criterion_grh(l, 0.2419).map_err(|e| e.to_string())?;
    ensure(b.verdict, "verdict false")?;
    let ratio = b.lhs / b.rhs;
    ensure(ratio >= 5.0, format!("lhs/rhs = {ratio}"))?;
    let o = optimize_a(l, OptimizeMode::Grh).map_err(|e| e.to_string())?;
    ensure((o.a - 0.2419).abs() <= 1e-3, format!("A* = {}", o.a))?;
    let grid_ok = (0..1000).all(|i| {
        let x = l * (200f64 / l).powf(i as f64 / 999.0);
        criterion_grh(x, 0.2419).is_ok_and(|b| b.verdict)
    });
    ensure(grid_ok, "verdict false somewhere on [log q20#, 200]")?;
    Ok(format!(
        "lhs {:.3e} rhs {:.3e} ratio {:.2}, A* {:.5}",
        b.lhs, b.rhs, ratio, o.a
    ))
}

fn bound_suite() -> Result<String, String> {
    for c in [2.0, 5.0, 10.0, 50.0, 100.0, 300.0] {
        let direct = tail_oracle(c, 1_000_000).map_err(|e| e.to_string())?;
        ensure(
            direct <= ramare_tail(c).unwrap(),
            format!("tail bound fails at c = {c}"),
        )?;
    }
    for n in (3..=100_000u64).step_by(2) {
        let p = p_exact(&factorize_u64(n).map_err(|e| e.to_string())?);
        ensure(p <= 0.5, format!("P({n}) = {p}"))?;
    }
    let mut checked = 0;
    for k in 3..=40u64 {
        let n = primorial(nth_prime(k).map_err(|e| e.to_string())?);
        let log_n = ln_biguint(&n);
        if log_n < PROP2_MIN_LOG_N {
            continue;
        }
        let p = p_exact(&factorize(&n).map_err(|e| e.to_string())?);
        let bound = prop2_upper_bound(log_n).map_err(|e| e.to_string())?;
        ensure(p < bound, format!("P bound fails at k = {k}"))?;
        checked += 1;
    }
    for k in 3..=60u64 {
        ensure(
            qbound_check(k) == Ok(true),
            format!("q_k bound fails at k = {k}"),
        )?;
    }
    Ok(format!(
        "P-bound checked on {checked} primorials, q_k bound for k = 3..60"
    ))
}

fn constants() -> Result<String, String> {
    let c = artin_constant();
    ensure((c - 0.3739558136).abs() < 5e-11, format!("Artin {c}"))?;
    let scaled = 12.0 / 5.0 * c;
    ensure((scaled - 0.89749).abs() < 5e-6, format!("12C/5 = {scaled}"))?;
    ensure(
        primorial(71).to_string() == Q20_PRIMORIAL,
        "primorial(71) digits differ",
    )?;
    Ok(format!("C = {c:.12}, 12C/5 = {scaled:.6}"))
}

fn grh_gate() -> Result<String, String> {
    let small: Vec<u64> = (2..=71).filter(|&q| common::trial_is_prime(q)).collect();
    for &q in &small {
        let b = least_prime_bound(q).map_err(|e| e.to_string())?;
        ensure(b < 8e9, format!("bound for q = {q} is {b}"))?;
    }
    let q20: u128 = Q20_PRIMORIAL.parse().unwrap();
    let mut rng = StdRng::seed_from_u64(20);
    for _ in 0..100_000 {
        let n = rng.gen_range(GATE_MIN_N as u128 + 1..q20);
        match gate(&BigUint::from(n)).map_err(|e| e.to_string())? {
            GateOutcome::Witness(w) => {
                let q = w.q as u128;
                ensure(
                    n % q != 0 && n as f64 > w.bound && w.is_valid(),
                    format!("invalid witness for {n}"),
                )?;
            }
            GateOutcome::NoWitness => return Err(format!("no witness for {n}")),
        }
    }
    for k in [1u128, 2, 3, 71, 600] {
        let out = gate(&BigUint::from(k * q20)).map_err(|e| e.to_string())?;
        ensure(
            out == GateOutcome::NoWitness,
            format!("witness for {k}·q20#"),
        )?;
        let out = gate(&BigUint::from(k * q20 + 1)).map_err(|e| e.to_string())?;
        ensure(
            out != GateOutcome::NoWitness,
            format!("no witness for {k}·q20# + 1"),
        )?;
    }
    Ok("all bounds < 8e9, 1e5 random witnesses valid".into())
}

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let checks: [(&str, Check); 9] = [
        ("exception boundary", exception_boundary),
        ("pipeline vs oracle", pipeline_vs_oracle),
        ("verification to 1e8", desk_scale),
        ("identity suite", identity_suite),
        ("odd-n criterion", odd_reproduction),
        ("GRH criterion", grh_reproduction),
        ("bound suite", bound_suite),
        ("constants", constants),
        ("GRH gate", grh_gate),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| name.contains(f.as_str()) || *f == id.to_string())
        {
            continue;
        }
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} ({name}): PASS [{secs:.2}s] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} ({name}): FAIL [{secs:.2}s] {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
