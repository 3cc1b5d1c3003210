//! Artin's constant from a truncated Euler product plus a prime-zeta tail.
//!
//! `ln C = sum_{p <= X} ln(1 - 1/(p(p-1))) + tail`, and since
//! `1/(p(p-1)) = p^-2 + p^-3 + ...`, the tail over `p > X` equals
//! `-(P_X(2) + P_X(3)) + r` with `|r| <= 2 P_X(4) < 2 / (3 X^3)`, where
//! `P_X(s) = sum_{p > X} p^-s`. `P_X(s)` is the prime zeta value `P(s)`
//! (from `ln zeta` by Möbius inversion) minus the partial sum over `p <= X`.
//! With `X = 10^6` the truncation error is below `1e-18`.

use std::sync::OnceLock;

use crate::arith::{mobius, primes_up_to};
use crate::KahanSum;

/// Euler product cutoff.
pub const ARTIN_CUTOFF: u64 = 1_000_000;

/// Bound on the error from dropping `P_X(4)` and higher in the tail.
pub fn artin_truncation_bound() -> f64 {
    2.0 / (3.0 * (ARTIN_CUTOFF as f64).powi(3))
}

// B_2, B_4, ..., B_14
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// `zeta(s) - 1` for real `s >= 2`, by Euler-Maclaurin with `N = 16`.
pub fn zeta_minus_one(s: f64) -> f64 {
    assert!(s >= 2.0, "zeta_minus_one expects s >= 2");
    const N: u32 = 16;
    let n = N as f64;
    let mut sum = KahanSum::new();
    for k in (2..N).rev() {
        sum.add((k as f64).powf(-s));
    }
    sum.add(n.powf(1.0 - s) / (s - 1.0));
    sum.add(0.5 * n.powf(-s));
    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let j = j as i32 + 1;
        sum.add(b / fact * rising * n.powf(-s - 2.0 * j as f64 + 1.0));
        let k = 2.0 * j as f64;
        rising *= (s + k - 1.0) * (s + k);
        fact *= (k + 1.0) * (k + 2.0);
    }
    sum.value()
}

/// Prime zeta `P(s) = sum_p p^-s = sum_k mu(k)/k ln zeta(ks)`, for `s >= 2`.
pub fn prime_zeta(s: f64) -> f64 {
    let mut sum = KahanSum::new();
    let mut k = 1u64;
    while (k as f64) * s <= 80.0 {
        let mu = mobius(k);
        if mu != 0 {
            sum.add(mu as f64 / k as f64 * zeta_minus_one(k as f64 * s).ln_1p());
        }
        k += 1;
    }
    sum.value()
}

/// Plain Euler product `prod_{p <= cutoff} (1 - 1/(p(p-1)))`.
pub fn artin_partial_product(cutoff: u64) -> f64 {
    primes_up_to(cutoff)
        .iter()
        .map(|&p| (-1.0 / (p as f64 * (p as f64 - 1.0))).ln_1p())
        .collect::<KahanSum>()
        .value()
        .exp()
}

fn compute_artin() -> f64 {
    let primes = primes_up_to(ARTIN_CUTOFF);
    let mut log_prod = KahanSum::new();
    let mut p2 = KahanSum::new();
    let mut p3 = KahanSum::new();
    for &p in primes.iter().rev() {
        let pf = p as f64;
        log_prod.add((-1.0 / (pf * (pf - 1.0))).ln_1p());
        p2.add(pf.powi(-2));
        p3.add(pf.powi(-3));
    }
    let tail2 = prime_zeta(2.0) - p2.value();
    let tail3 = prime_zeta(3.0) - p3.value();
    (log_prod.value() - tail2 - tail3).exp()
}

/// Artin's constant `prod_p (1 - 1/(p(p-1)))`, computed once.
pub fn artin_constant() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(compute_artin)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_closed_forms() {
        let pi = std::f64::consts::PI;
        assert!((zeta_minus_one(2.0) - (pi * pi / 6.0 - 1.0)).abs() < 1e-15);
        assert!((zeta_minus_one(4.0) - (pi.powi(4) / 90.0 - 1.0)).abs() < 1e-15);
        // direct sum for large s
        let direct: f64 = (2..200).map(|k| (k as f64).powf(-20.0)).sum();
        assert!((zeta_minus_one(20.0) - direct).abs() < 1e-20);
    }

    #[test]
    fn prime_zeta_against_partial_sums() {
        // P(2) minus primes <= 1e6 is the tail, roughly 1/(X ln X)
        let partial: f64 = primes_up_to(ARTIN_CUTOFF)
            .iter()
            .map(|&p| (p as f64).powi(-2))
            .sum();
        let tail = prime_zeta(2.0) - partial;
        let approx = 1.0 / (1e6 * 1e6f64.ln());
        assert!(
            tail > 0.0 && (tail / approx - 1.0).abs() < 0.1,
            "tail={tail}"
        );
    }

    #[test]
    fn artin_matches_printed_digits() {
        let c = artin_constant();
        assert!((c - 0.3739558136).abs() < 5e-11, "{c}");
        assert!(artin_truncation_bound() < 1e-12);
    }

    #[test]
    fn truncated_products_bracket_the_constant() {
        let c3 = artin_partial_product(1_000);
        let c6 = artin_partial_product(1_000_000);
        let c = artin_constant();
        assert!(c3 > c6 && c6 > c);
        // gap is governed by sum_{p > 1000} 1/(p(p-1)) ~ 1/(1000 ln 1000)
        let tail: f64 = primes_up_to(1_000_000)
            .iter()
            .filter(|&&p| p > 1_000)
            .map(|&p| 1.0 / (p as f64 * (p as f64 - 1.0)))
            .sum();
        assert!(c3 - c6 <= c3 * tail * 1.001);
        assert!(c3 - c6 >= c6 * tail * 0.999);
    }
}
