//! Integer factorization: trial division by small primes, then Pollard-Brent
//! splitting. Every reported factor is verified prime and the product is
//! checked against the input before a `Factorization` is returned.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::primality::{is_prime_u64, mul_mod};
use crate::arith::sieve::primes_up_to;
use crate::error::{Error, Result};

/// Trial division bound for inputs wider than 64 bits.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

// u64 inputs switch to Pollard-Brent once the cofactor has no prime factor below this.
const U64_TRIAL_BOUND: u64 = 4_096;

pub(crate) fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_DIVISION_BOUND))
}

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// Builds a factorization from parts, checking every invariant.
    pub fn from_parts(value: BigUint, factors: Vec<(BigUint, u32)>) -> Result<Self> {
        let f = Factorization { value, factors };
        if f.is_consistent() {
            Ok(f)
        } else {
            Err(Error::FactorizationFailed {
                n: f.value.to_string(),
            })
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.omega() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_divisible_by_prime(&self, p: u64) -> bool {
        self.factors.iter().any(|(q, _)| *q == BigUint::from(p))
    }

    /// Coprimality with `a`, from the prime divisors alone.
    pub fn is_coprime_to(&self, a: u64) -> bool {
        self.factors
            .iter()
            .filter_map(|(p, _)| p.to_u64())
            .all(|p| a % p != 0)
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    fn is_consistent(&self) -> bool {
        let increasing = self.factors.windows(2).all(|w| w[0].0 < w[1].0);
        let exps = self.factors.iter().all(|(_, e)| *e >= 1);
        let primes = self
            .factors
            .iter()
            .all(|(p, _)| p.to_u64().is_some_and(is_prime_u64));
        increasing && exps && primes && !self.value.is_zero() && self.product() == self.value
    }
}

/// Effort budget for the splitting stage.
#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    /// Maximum Pollard-Brent iterations per split attempt.
    pub rho_iterations: u64,
    /// Number of polynomial constants tried before giving up on a cofactor.
    pub rho_attempts: u32,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 1 << 22,
            rho_attempts: 32,
        }
    }
}

pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with_budget(n, FactorBudget::default())
}

pub fn factorize_u64(n: u64) -> Result<Factorization> {
    factorize(&BigUint::from(n))
}

pub fn factorize_with_budget(n: &BigUint, budget: FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(crate::error::domain("cannot factor 0"));
    }
    let failed = || Error::FactorizationFailed { n: n.to_string() };
    let mut primes: Vec<u64> = Vec::new();

    let mut rest = n.clone();
    if rest.to_u64().is_none() {
        for &p in small_primes() {
            if rest.to_u64().is_some() {
                break;
            }
            let pb = BigUint::from(p);
            loop {
                let (q, r) = rest.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                primes.push(p);
                rest = q;
            }
        }
    }

    let mut wide: Vec<BigUint> = Vec::new();
    match rest.to_u64() {
        Some(v) => split_u64(v, budget, &mut primes).ok_or_else(failed)?,
        None => wide.push(rest),
    }
    while let Some(m) = wide.pop() {
        let d = rho_big(&m, budget).ok_or_else(failed)?;
        for part in [d.clone(), &m / &d] {
            match part.to_u64() {
                Some(v) => split_u64(v, budget, &mut primes).ok_or_else(failed)?,
                None => wide.push(part),
            }
        }
    }

    primes.sort_unstable();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == BigUint::from(p) => *e += 1,
            _ => factors.push((BigUint::from(p), 1)),
        }
    }
    Factorization::from_parts(n.clone(), factors)
}

fn split_u64(mut n: u64, budget: FactorBudget, out: &mut Vec<u64>) -> Option<()> {
    for &p in small_primes() {
        if p > U64_TRIAL_BOUND || p * p > n {
            break;
        }
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            out.push(m);
            continue;
        }
        let d = rho_u64(m, budget)?;
        stack.push(d);
        stack.push(m / d);
    }
    Some(())
}

fn rho_u64(n: u64, budget: FactorBudget) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let r = crate::arith::sieve::isqrt(n);
    if r * r == n {
        return Some(r);
    }
    for c in 1..=budget.rho_attempts as u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        // Brent's cycle detection with batched gcds
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        let mut iters = 0u64;
        const BATCH: u64 = 128;
        while g == 1 && iters < budget.rho_iterations {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            iters += r;
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint, budget: FactorBudget) -> Option<BigUint> {
    let two = BigUint::from(2u32);
    if n.is_even() {
        return Some(two);
    }
    for c in 1..=budget.rho_attempts {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut iters = 0u64;
        loop {
            x = f(&x);
            y = f(&f(&y));
            iters += 1;
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if g.is_one() {
                if iters >= budget.rho_iterations {
                    break;
                }
                continue;
            }
            if &g != n {
                return Some(g);
            }
            break;
        }
    }
    None
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Möbius function with `mu(0) = 0`.
pub fn mobius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    factorize_u64(n)
        .expect("every u64 factors within the default budget")
        .mobius()
}

/// True iff no prime square divides `n`. `0` is not squarefree.
pub fn is_squarefree(n: u64) -> bool {
    mobius(n) != 0
}

/// `phi(a^2) = a * phi(a)`, exact.
pub fn phi_of_square(a: u64) -> BigUint {
    assert!(a >= 1, "phi_of_square requires a >= 1");
    let f = factorize_u64(a).expect("u64 factorization");
    let mut phi = BigUint::from(a);
    for (p, _) in f.factors() {
        phi = phi / p * (p - 1u32);
    }
    phi * a
}

/// Largest index accepted by [`nth_prime`].
pub const NTH_PRIME_BUDGET: u64 = 50_000_000;

/// The `i`-th prime, 1-based.
pub fn nth_prime(i: u64) -> Result<u64> {
    if i == 0 {
        return Err(crate::error::domain("prime index starts at 1"));
    }
    if i > NTH_PRIME_BUDGET {
        return Err(Error::OutOfBudget {
            what: format!("nth_prime({i})"),
        });
    }
    // p_i < i (ln i + ln ln i) for i >= 6
    let bound = if i < 6 {
        15
    } else {
        let x = i as f64;
        (x * (x.ln() + x.ln().ln())).ceil() as u64 + 1
    };
    let ps = primes_up_to(bound);
    Ok(ps[(i - 1) as usize])
}

/// Product of all primes `<= n`.
pub fn primorial(n: u64) -> BigUint {
    primes_up_to(n)
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * p)
}
