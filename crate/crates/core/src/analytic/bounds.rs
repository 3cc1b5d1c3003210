//! Explicit bounds feeding the criteria: `P(n)`, `W(n)`, tails, and the
//! `omega(n)` estimates used to bound `P(n)` for general `n`.

use num_traits::ToPrimitive;

use crate::analytic::constants::artin_constant;
use crate::arith::{ln_biguint, mobius_totient_table, nth_prime, primorial, Factorization};
use crate::error::{domain, Result};
use crate::KahanSum;

/// Smallest `log n` for which `P(n) < 1 - W + W^2/2` is asserted.
pub const PROP2_MIN_LOG_N: f64 = 28.05;

/// Multiplier in `q_{omega(n)} < 2.11 log n`.
pub const OMEGA_PRIME_FACTOR: f64 = 2.11;

/// Constant in `omega(n) <= 1.3841 log n / log log n`.
pub const ROBIN_OMEGA_CONSTANT: f64 = 1.3841;

/// `P(n) = prod_{p ∤ n} (1 - 1/(p(p-1)))`, as Artin's constant divided by the
/// factors for primes dividing `n`.
pub fn p_exact(n: &Factorization) -> f64 {
    let divisor_part: f64 = n
        .factors()
        .iter()
        .map(|(p, _)| {
            let p = p.to_f64().expect("prime fits f64");
            1.0 - 1.0 / (p * (p - 1.0))
        })
        .product();
    artin_constant() / divisor_part
}

/// `W(n)` as a function of `log n`.
pub fn w(log_n: f64) -> Result<f64> {
    let y = OMEGA_PRIME_FACTOR * log_n;
    if !(y > 1.0) {
        return Err(domain(format!(
            "W needs 2.11 log n > 1, got log n = {log_n}"
        )));
    }
    let ly = y.ln();
    Ok((1.0 - 5.0 / (2.0 * ly)) / (y * ly))
}

/// `1 - W + W^2/2`, valid for `log n >= 28.05`.
pub fn prop2_upper_bound(log_n: f64) -> Result<f64> {
    if !(log_n >= PROP2_MIN_LOG_N) {
        return Err(domain(format!(
            "P(n) bound needs log n >= 28.05, got {log_n}"
        )));
    }
    let w = w(log_n)?;
    Ok(1.0 - w + w * w / 2.0)
}

/// `4 / (c - 1)`, an upper bound for `sum_{a > c} mu^2(a) / phi(a^2)`.
pub fn ramare_tail(c: f64) -> Result<f64> {
    if !(c > 1.0) {
        return Err(domain("tail bound needs c > 1"));
    }
    Ok(4.0 / (c - 1.0))
}

/// Direct sum of `mu^2(a) / phi(a^2)` over integers `c < a <= cutoff`.
pub fn tail_oracle(c: f64, cutoff: u64) -> Result<f64> {
    if !(c > 1.0) {
        return Err(domain("tail oracle needs c > 1"));
    }
    let (mu, phi) = mobius_totient_table(cutoff as usize);
    let first = c.floor() as u64 + 1;
    let mut sum = KahanSum::new();
    // smallest terms first
    for a in (first..=cutoff).rev() {
        if mu[a as usize] != 0 {
            sum.add(1.0 / (a as f64 * phi[a as usize] as f64));
        }
    }
    Ok(sum.value())
}

/// Truncated `sum_{1 < a <= cutoff, (a, n) = 1} mu(a) / phi(a^2)`, which tends to `P(n) - 1`.
pub fn coprime_mobius_series(n: &Factorization, cutoff: u64) -> f64 {
    let (mu, phi) = mobius_totient_table(cutoff as usize);
    let primes: Vec<u64> = n.factors().iter().filter_map(|(p, _)| p.to_u64()).collect();
    let mut sum = KahanSum::new();
    for a in (2..=cutoff).rev() {
        let m = mu[a as usize];
        if m != 0 && primes.iter().all(|&p| a % p != 0) {
            sum.add(m as f64 / (a as f64 * phi[a as usize] as f64));
        }
    }
    sum.value()
}

/// Brun-Titchmarsh factor `(1 + 2A) / (1 - 2A)`.
pub fn bt_factor(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 0.5) {
        return Err(domain(format!("A must lie in (0, 1/2), got {a}")));
    }
    Ok((1.0 + 2.0 * a) / (1.0 - 2.0 * a))
}

/// `1.3841 log n / log log n`, an upper bound for `omega(n)` when `n >= 3`.
pub fn robin_omega_bound(log_n: f64) -> Result<f64> {
    if !(log_n > 1.0) {
        return Err(domain("log log n undefined for log n <= 1"));
    }
    Ok(ROBIN_OMEGA_CONSTANT * log_n / log_n.ln())
}

/// Checks `q_k < 2.11 log(q_k#)`: the primorial `q_k#` is the smallest `n`
/// with `omega(n) = k`, so it is the worst case for the bound.
pub fn qbound_check(k: u64) -> Result<bool> {
    if k < 3 {
        return Err(domain("qbound_check needs k >= 3"));
    }
    let q = nth_prime(k)?;
    let log_n = ln_biguint(&primorial(q));
    Ok((q as f64) < OMEGA_PRIME_FACTOR * log_n)
}
