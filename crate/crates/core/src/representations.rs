//! Exact counting functions for representations `n = p + s`.
//!
//! `s = n - p` must be a positive integer, so every sum over primes that
//! feeds the weighted count `R(n)` runs over `p < n`. The general
//! progression sum [`CountingTable::theta_ap`] keeps the plain `p <= x`
//! range; [`CountingTable::theta_progression`] is the `p < n` variant that
//! makes the Dirichlet decomposition of `R(n)` exact for prime `n` as well.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    is_prime_u64, is_squarefree, sieve::isqrt, sieve_segment_with_capacity, SieveSegment,
};
use crate::error::{domain, Result};
use crate::KahanSum;

/// Deficit values within this distance of zero are treated as zero.
pub const DEFICIT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaValue {
    pub value: f64,
    pub term_count: u64,
}

impl ThetaValue {
    const ZERO: ThetaValue = ThetaValue {
        value: 0.0,
        term_count: 0,
    };
}

/// Certificate that `n = p + s` with `p` prime and `s` not squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RepresentationWitness {
    pub n: u64,
    pub p: u64,
    pub s: u64,
}

impl RepresentationWitness {
    /// Re-checks the certificate with scalar primality and factorization.
    pub fn is_valid(&self) -> bool {
        self.p.checked_add(self.s) == Some(self.n)
            && self.s >= 4
            && is_prime_u64(self.p)
            && !is_squarefree(self.s)
    }
}

/// Prime and squarefree tables on `[0, limit]`, plus Möbius values up to `sqrt(limit)`.
#[derive(Clone, Debug)]
pub struct CountingTable {
    limit: u64,
    seg: SieveSegment,
    small: SieveSegment,
}

impl CountingTable {
    pub fn new(limit: u64) -> Result<Self> {
        let seg = sieve_segment_with_capacity(0, limit + 1, false, limit + 1)?;
        let root = isqrt(limit) + 1;
        let small = sieve_segment_with_capacity(0, root + 1, true, root + 1)?;
        Ok(CountingTable { limit, seg, small })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.limit {
            return Err(domain(format!("{n} exceeds table limit {}", self.limit)));
        }
        Ok(())
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        self.seg.is_prime(n)
    }

    #[inline]
    pub fn is_squarefree(&self, n: u64) -> bool {
        self.seg.is_squarefree(n)
    }

    /// `mu(a)` for `a <= sqrt(limit) + 1`.
    pub fn mobius_small(&self, a: u64) -> i8 {
        self.small
            .mobius(a)
            .expect("small table carries Möbius values")
    }

    /// Sum of `ln p` over primes `p <= x`.
    pub fn theta(&self, x: u64) -> Result<ThetaValue> {
        self.check(x)?;
        if x < 2 {
            return Ok(ThetaValue::ZERO);
        }
        let mut sum = KahanSum::new();
        let mut count = 0;
        for p in self.seg.primes().take_while(|&p| p <= x) {
            sum.add((p as f64).ln());
            count += 1;
        }
        Ok(ThetaValue {
            value: sum.value(),
            term_count: count,
        })
    }

    /// Sum of `ln p` over primes `p <= x` with `p ≡ residue (mod modulus)`.
    pub fn theta_ap(&self, x: u64, modulus: u64, residue: i64) -> Result<ThetaValue> {
        if modulus == 0 {
            return Err(domain("modulus must be positive"));
        }
        self.check(x)?;
        let r = residue.rem_euclid(modulus as i64) as u64;
        Ok(self.progression_upto(x, modulus, r))
    }

    /// `θ(n, a², n)` restricted to primes `p < n`.
    pub fn theta_progression(&self, n: u64, a: u64) -> Result<ThetaValue> {
        self.check(n)?;
        let m = a
            .checked_mul(a)
            .ok_or_else(|| domain("a^2 overflows u64"))?;
        if n < 3 {
            return Ok(ThetaValue::ZERO);
        }
        Ok(self.progression_upto(n - 1, m, n % m))
    }

    fn progression_upto(&self, x: u64, m: u64, r: u64) -> ThetaValue {
        if x < 2 {
            return ThetaValue::ZERO;
        }
        let mut sum = KahanSum::new();
        let mut count = 0;
        let mut k = if r == 0 { m } else { r };
        while k <= x {
            if self.seg.is_prime(k) {
                sum.add((k as f64).ln());
                count += 1;
            }
            k += m;
        }
        ThetaValue {
            value: sum.value(),
            term_count: count,
        }
    }

    /// `R(n)`: sum of `mu^2(n - p) ln p` over primes `p <= n`, with `mu(0) = 0`.
    pub fn weighted_count(&self, n: u64) -> Result<ThetaValue> {
        if n < 2 {
            return Err(domain("R(n) requires n >= 2"));
        }
        self.check(n)?;
        let mut sum = KahanSum::new();
        let mut count = 0;
        for p in self.seg.primes().take_while(|&p| p < n) {
            if self.seg.is_squarefree(n - p) {
                sum.add((p as f64).ln());
                count += 1;
            }
        }
        Ok(ThetaValue {
            value: sum.value(),
            term_count: count,
        })
    }

    /// `R(n)` through its Dirichlet expansion: sum over `a <= sqrt(n)` of
    /// `mu(a) θ(n, a², n)` with the progression sums taken over `p < n`.
    pub fn weighted_count_by_progressions(&self, n: u64) -> Result<f64> {
        self.signed_progression_sum(n, 1)
    }

    /// The sum over `1 < a <= sqrt(n)` of `mu(a) θ(n, a², n)`. Negative iff a
    /// representation `n = p + s` exists.
    pub fn deficit(&self, n: u64) -> Result<f64> {
        if n < 2 {
            return Err(domain("deficit requires n >= 2"));
        }
        self.signed_progression_sum(n, 2)
    }

    fn signed_progression_sum(&self, n: u64, first_a: u64) -> Result<f64> {
        self.check(n)?;
        let mut sum = KahanSum::new();
        for a in first_a..=isqrt(n) {
            let mu = self.mobius_small(a);
            if mu != 0 {
                sum.add(mu as f64 * self.theta_progression(n, a)?.value);
            }
        }
        Ok(sum.value())
    }

    /// `T(n)`: ordered representations `n = p + s` with `s >= 1` squarefree.
    pub fn count_t(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self
            .seg
            .primes()
            .take_while(|&p| p < n)
            .filter(|&p| self.seg.is_squarefree(n - p))
            .count() as u64)
    }

    /// `g(n)`: representations `n = p + q` with primes `p >= q`.
    pub fn count_g(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self
            .seg
            .primes()
            .take_while(|&q| 2 * q <= n)
            .filter(|&q| self.seg.is_prime(n - q))
            .count() as u64)
    }

    /// The representation with the smallest non-squarefree `s`, if any.
    pub fn find_witness(&self, n: u64) -> Result<Option<RepresentationWitness>> {
        self.check(n)?;
        Ok(self.witness_unchecked(n))
    }

    fn witness_unchecked(&self, n: u64) -> Option<RepresentationWitness> {
        (4..=n.saturating_sub(2))
            .find(|&s| !self.seg.is_squarefree(s) && self.seg.is_prime(n - s))
            .map(|s| RepresentationWitness { n, p: n - s, s })
    }

    /// Every `n` in `[lo, hi)` with no representation, ascending.
    pub fn exceptions(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        if lo == 0 || lo >= hi {
            return Err(domain("exceptions requires 1 <= lo < hi"));
        }
        self.check(hi - 1)?;
        const CHUNK: u64 = 1 << 16;
        let chunks: Vec<(u64, u64)> = (lo..hi)
            .step_by(CHUNK as usize)
            .map(|a| (a, (a + CHUNK).min(hi)))
            .collect();
        Ok(chunks
            .into_par_iter()
            .map(|(a, b)| {
                (a..b)
                    .filter(|&n| self.witness_unchecked(n).is_none())
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .concat())
    }
}

pub fn theta(x: u64) -> Result<ThetaValue> {
    CountingTable::new(x)?.theta(x)
}

pub fn theta_ap(x: u64, modulus: u64, residue: i64) -> Result<ThetaValue> {
    CountingTable::new(x)?.theta_ap(x, modulus, residue)
}

/// `R(n)`, see [`CountingTable::weighted_count`].
pub fn weighted_count(n: u64) -> Result<ThetaValue> {
    CountingTable::new(n)?.weighted_count(n)
}

pub fn deficit(n: u64) -> Result<f64> {
    CountingTable::new(n)?.deficit(n)
}

pub fn count_t(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(domain("T(n) requires n >= 2"));
    }
    CountingTable::new(n)?.count_t(n)
}

pub fn count_g(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(domain("g(n) requires n >= 2"));
    }
    CountingTable::new(n)?.count_g(n)
}

pub fn find_witness(n: u64) -> Result<Option<RepresentationWitness>> {
    if n < 2 {
        return Err(domain("find_witness requires n >= 2"));
    }
    CountingTable::new(n)?.find_witness(n)
}

pub fn exceptions(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo == 0 || lo >= hi {
        return Err(domain("exceptions requires 1 <= lo < hi"));
    }
    CountingTable::new(hi - 1)?.exceptions(lo, hi)
}
