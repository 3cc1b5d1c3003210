//! Exact integer primitives: primality, sieving, factorization, primorials.

pub mod bits;
pub mod factor;
pub mod primality;
pub mod sieve;

pub use bits::BitSet;
pub use factor::{
    factorize, factorize_u64, factorize_with_budget, is_squarefree, mobius, nth_prime,
    phi_of_square, primorial, FactorBudget, Factorization,
};
pub use primality::{is_prime, is_prime_u64};
pub use sieve::{
    mobius_totient_table, primes_up_to, sieve_segment, sieve_segment_with_capacity, SegmentSieve,
    SieveSegment, DEFAULT_SEGMENT_CAPACITY,
};

use num_bigint::BigUint;

/// Natural logarithm of an unbounded integer, accurate to f64 precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return (num_traits::ToPrimitive::to_u64(n).unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = num_traits::ToPrimitive::to_u64(&(n >> shift)).unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
