//! Brute-force oracles that share no code with the library.

#![allow(dead_code)]

pub fn trial_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Möbius by trial division, `mu(0) = 0`.
pub fn trial_mobius(mut n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Byte-per-element prime table on `[0, limit]`.
pub fn byte_prime_table(limit: usize) -> Vec<bool> {
    let mut t = vec![true; limit + 1];
    t[0] = false;
    if limit >= 1 {
        t[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if t[i] {
            let mut j = i * i;
            while j <= limit {
                t[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    t
}

/// Byte-per-element squarefree table on `[0, limit]` (0 is not squarefree).
pub fn byte_squarefree_table(limit: usize) -> Vec<bool> {
    let mut t = vec![true; limit + 1];
    t[0] = false;
    let mut d = 2;
    while d * d <= limit {
        let mut j = d * d;
        while j <= limit {
            t[j] = false;
            j += d * d;
        }
        d += 1;
    }
    t
}

/// All `n` in `[lo, hi)` that are not a prime plus a non-squarefree integer.
pub fn brute_exceptions(lo: u64, hi: u64) -> Vec<u64> {
    let primes = byte_prime_table(hi as usize);
    let sqfree = byte_squarefree_table(hi as usize);
    (lo..hi)
        .filter(|&n| {
            let n = n as usize;
            !(4..n.saturating_sub(1)).any(|s| !sqfree[s] && primes[n - s])
        })
        .collect()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `phi(m)` by counting units.
pub fn brute_phi(m: u64) -> u64 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64
}
