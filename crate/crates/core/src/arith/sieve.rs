//! Segmented sieve of Eratosthenes with squarefree and Möbius annotations.
//!
//! A segment covers the half-open window `[lo, hi)`. Primality is sieved with
//! base primes up to `sqrt(hi - 1)`; squarefreeness by striking multiples of
//! `p^2` for the same base primes. Möbius values, when requested, track the
//! product of small prime divisors found per element; a leftover cofactor
//! greater than one is a single large prime and flips the sign once more.
//!
//! Conventions: `0` is neither prime nor squarefree (`mu(0) = 0`), `1` is
//! squarefree (`mu(1) = 1`) and not prime.

use crate::arith::bits::BitSet;
use crate::error::{Error, Result};

/// Default maximum number of elements per segment.
pub const DEFAULT_SEGMENT_CAPACITY: u64 = 10_000_000;

/// All primes `<= n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    // odd-only: index i represents 2i + 1
    let half = (n as usize - 1) / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(half / 8 + 1);
    out.push(2);
    out.extend(
        composite
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    out
}

pub(crate) fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Linear sieve of `mu(k)` and `phi(k)` for `k <= limit` (index 0 holds zeros).
pub fn mobius_totient_table(limit: usize) -> (Vec<i8>, Vec<u32>) {
    assert!(limit < u32::MAX as usize);
    let mut mu = vec![0i8; limit + 1];
    let mut phi = vec![0u32; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    if limit >= 1 {
        mu[1] = 1;
        phi[1] = 1;
    }
    for i in 2..=limit {
        if phi[i] == 0 {
            primes.push(i);
            mu[i] = -1;
            phi[i] = (i - 1) as u32;
        }
        for &p in &primes {
            let m = i * p;
            if m > limit {
                break;
            }
            if i % p == 0 {
                mu[m] = 0;
                phi[m] = phi[i] * p as u32;
                break;
            }
            mu[m] = -mu[i];
            phi[m] = phi[i] * (p as u32 - 1);
        }
    }
    (mu, phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveSegment {
    lo: u64,
    hi: u64,
    prime_mask: BitSet,
    squarefree_mask: BitSet,
    mobius: Option<Vec<i8>>,
}

impl SieveSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.lo && n < self.hi
    }

    pub fn prime_mask(&self) -> &BitSet {
        &self.prime_mask
    }

    pub fn squarefree_mask(&self) -> &BitSet {
        &self.squarefree_mask
    }

    pub fn mobius_values(&self) -> Option<&[i8]> {
        self.mobius.as_deref()
    }

    /// Panics if `n` lies outside the segment.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(self.contains(n), "{n} outside [{}, {})", self.lo, self.hi);
        self.prime_mask.get((n - self.lo) as usize)
    }

    #[inline]
    pub fn is_squarefree(&self, n: u64) -> bool {
        assert!(self.contains(n), "{n} outside [{}, {})", self.lo, self.hi);
        self.squarefree_mask.get((n - self.lo) as usize)
    }

    /// `None` when the segment was built without Möbius values.
    #[inline]
    pub fn mobius(&self, n: u64) -> Option<i8> {
        assert!(self.contains(n), "{n} outside [{}, {})", self.lo, self.hi);
        self.mobius.as_ref().map(|m| m[(n - self.lo) as usize])
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_mask.iter_ones().map(move |i| self.lo + i as u64)
    }

    pub fn prime_count(&self) -> usize {
        self.prime_mask.count_ones()
    }
}

/// Reusable sieve holding base primes for every window below `max_hi`.
#[derive(Clone, Debug)]
pub struct SegmentSieve {
    base_primes: Vec<u64>,
    max_hi: u64,
    capacity: u64,
}

impl SegmentSieve {
    pub fn new(max_hi: u64, capacity: u64) -> Self {
        SegmentSieve {
            base_primes: primes_up_to(isqrt(max_hi.saturating_sub(1))),
            max_hi,
            capacity,
        }
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn sieve(&self, lo: u64, hi: u64, want_mobius: bool) -> Result<SieveSegment> {
        if lo >= hi {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "empty or reversed window",
            });
        }
        if hi > self.max_hi {
            return Err(Error::InvalidRange {
                lo,
                hi,
                reason: "window exceeds the sieve's base-prime bound",
            });
        }
        if hi - lo > self.capacity {
            return Err(Error::CapacityExceeded {
                requested: hi - lo,
                capacity: self.capacity,
            });
        }
        let len = (hi - lo) as usize;
        let mut prime_mask = BitSet::ones(len);
        let mut squarefree_mask = BitSet::ones(len);
        for n in lo..hi.min(2) {
            prime_mask.clear((n - lo) as usize);
        }

        let top = hi - 1;
        for &p in &self.base_primes {
            if p * p > top {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m < hi {
                prime_mask.clear((m - lo) as usize);
                m += p;
            }
            let sq = p * p;
            let mut m = lo.div_ceil(sq) * sq;
            while m < hi {
                squarefree_mask.clear((m - lo) as usize);
                m += sq;
            }
        }

        let mobius = want_mobius.then(|| self.mobius_window(lo, hi, &squarefree_mask));

        Ok(SieveSegment {
            lo,
            hi,
            prime_mask,
            squarefree_mask,
            mobius,
        })
    }

    fn mobius_window(&self, lo: u64, hi: u64, squarefree: &BitSet) -> Vec<i8> {
        let len = (hi - lo) as usize;
        let mut mu = vec![1i8; len];
        let mut prod = vec![1u64; len];
        let top = hi - 1;
        for &p in &self.base_primes {
            if p * p > top {
                break;
            }
            // 0 is handled by the squarefree mask; skip it so `prod` cannot overflow
            let mut m = (lo.div_ceil(p) * p).max(p);
            while m < hi {
                let i = (m - lo) as usize;
                mu[i] = -mu[i];
                prod[i] *= p;
                m += p;
            }
        }
        for i in 0..len {
            let n = lo + i as u64;
            if !squarefree.get(i) {
                mu[i] = 0;
            } else if prod[i] != n {
                mu[i] = -mu[i];
            }
        }
        mu
    }
}

/// Sieves `[lo, hi)` with the default capacity.
pub fn sieve_segment(lo: u64, hi: u64, want_mobius: bool) -> Result<SieveSegment> {
    sieve_segment_with_capacity(lo, hi, want_mobius, DEFAULT_SEGMENT_CAPACITY)
}

pub fn sieve_segment_with_capacity(
    lo: u64,
    hi: u64,
    want_mobius: bool,
    capacity: u64,
) -> Result<SieveSegment> {
    if lo < hi && hi - lo > capacity {
        return Err(Error::CapacityExceeded {
            requested: hi - lo,
            capacity,
        });
    }
    SegmentSieve::new(hi, capacity).sieve(lo, hi, want_mobius)
}
