//! Least-prime gate: if some prime `q` has `q ∤ n` and
//! `n > 4 (q (q - 1) ln q)^2`, then under GRH the least prime `p ≡ n (mod q^2)`
//! is below `n`, and `n - p` is divisible by `q^2`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{is_prime_u64, ln_biguint, primes_up_to};
use crate::error::{domain, Error, Result};

/// Largest prime the gate tries (the 20th prime).
pub const GATE_MAX_PRIME: u64 = 71;

/// The gate is used above this value.
pub const GATE_MIN_N: u64 = 8_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateWitness {
    #[serde(serialize_with = "as_decimal")]
    pub n: BigUint,
    pub q: u64,
    pub bound: f64,
}

fn as_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl GateWitness {
    /// Re-checks `gcd(n, q^2) = 1` and `n > bound` directly.
    pub fn is_valid(&self) -> bool {
        let q2 = BigUint::from(self.q * self.q);
        let g = num_integer::Integer::gcd(&self.n, &q2);
        is_prime_u64(self.q)
            && g == BigUint::from(1u32)
            && ln_biguint(&self.n) > self.bound.ln()
            && self.n.to_f64().is_some_and(|n| n > self.bound)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateOutcome {
    Witness(GateWitness),
    /// Every prime up to 71 divides `n`.
    NoWitness,
}

/// `4 (q (q - 1) ln q)^2`.
pub fn least_prime_bound(q: u64) -> Result<f64> {
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    let qf = q as f64;
    let t = qf * (qf - 1.0) * qf.ln();
    Ok(4.0 * t * t)
}

/// Smallest prime `q <= 71` with `q ∤ n` and `n > least_prime_bound(q)`.
pub fn gate(n: &BigUint) -> Result<GateOutcome> {
    if *n <= BigUint::from(GATE_MIN_N) {
        return Err(domain(format!("gate applies to n > 8e9, got {n}")));
    }
    for q in primes_up_to(GATE_MAX_PRIME) {
        if (n % q).to_u64() == Some(0) {
            continue;
        }
        let bound = least_prime_bound(q)?;
        // every bound for q <= 71 is below 8e9 < n
        if n.to_f64().is_some_and(|x| x > bound) {
            return Ok(GateOutcome::Witness(GateWitness {
                n: n.clone(),
                q,
                bound,
            }));
        }
    }
    Ok(GateOutcome::NoWitness)
}
