//! Sufficient conditions for `n = p + s` at large `n`.
//!
//! A criterion compares a left-hand side (`1/2` for odd `n`, `W(n)` or `1`
//! otherwise) with the sum of four kinds of terms: the error-bound sum over
//! small moduli, the Brun-Titchmarsh tail, the large-modulus tail
//! `3 log n / n^A`, and (general `n` only) a bound for `P(n)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analytic::bounds::{bt_factor, p_exact, prop2_upper_bound, w, PROP2_MIN_LOG_N};
use crate::arith::{sieve_segment_with_capacity, Factorization};
use crate::error::{domain, Error, Result};
use crate::KahanSum;

/// Lower validity limit of the unconditional error bound.
pub const BENNETT_X0: f64 = 8e9;

/// Largest `a^2` covered by the unconditional error bound.
pub const BENNETT_MAX_A_SQUARED: u64 = 100_000;

/// Largest `c` for which [`criterion_generic`] sums moduli explicitly.
pub const MAX_EXPLICIT_C: f64 = 1e8;

/// Relative margin below which a verdict is never reported as true.
pub const DECISION_MARGIN: f64 = 1e-9;

pub fn bennett_log_x0() -> f64 {
    BENNETT_X0.ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionMode {
    /// Any `n`, with a bound on `P(n)`.
    General,
    /// Odd `n`, using `P(n) <= 1/2`.
    Odd,
}

/// Source of the error term `E(a, n)`.
#[derive(Clone, Debug, PartialEq)]
pub enum EBound {
    /// `E(a, n) <= n / (160 log n)` for `n >= 8e9`, `3 <= a^2 <= 1e5`, `(a, n) = 1`.
    Bennett,
    /// `E(a, n) <= (log^2 n / (8 pi) + (log n / pi + 4) log a + 3.43) sqrt(n)` under GRH.
    Grh,
    /// Caller-supplied values of `E(a, n) / n`, keyed by `a`.
    Custom(BTreeMap<u64, f64>),
}

/// How the general-mode criterion bounds `P(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PSource {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionParams {
    pub a: f64,
    pub c: f64,
    pub e_bound: EBound,
    pub x0: f64,
}

impl CriterionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a < 0.5) {
            return Err(domain(format!("A must lie in (0, 1/2), got {}", self.a)));
        }
        if !(self.c > 1.0) {
            return Err(domain(format!("c must exceed 1, got {}", self.c)));
        }
        if !(self.x0 > 0.0) {
            return Err(domain("x0 must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionTerms {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_squared_half: Option<f64>,
    pub e_sum: f64,
    pub bt_tail: f64,
    pub theta_tail: f64,
}

impl CriterionTerms {
    pub fn total(&self) -> f64 {
        let mut s = KahanSum::new();
        for t in [self.p_term, self.w_squared_half].into_iter().flatten() {
            s.add(t);
        }
        s.add(self.e_sum);
        s.add(self.bt_tail);
        s.add(self.theta_tail);
        s.value()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionBreakdown {
    pub mode: CriterionMode,
    pub log_n: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub c: f64,
    pub lhs: f64,
    pub terms: CriterionTerms,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: bool,
}

impl CriterionBreakdown {
    fn new(
        mode: CriterionMode,
        log_n: f64,
        a: f64,
        c: f64,
        lhs: f64,
        terms: CriterionTerms,
    ) -> Self {
        let rhs = terms.total();
        let margin = lhs - rhs;
        CriterionBreakdown {
            mode,
            log_n,
            a,
            c,
            lhs,
            terms,
            rhs,
            margin,
            verdict: margin > DECISION_MARGIN * lhs.abs().max(1.0),
        }
    }
}

fn theta_tail(log_n: f64, a: f64) -> f64 {
    3.0 * log_n * (-a * log_n).exp()
}

/// Odd-`n` criterion with the unconditional bound, `c = 316`:
/// `1/2 > 316/(160 log n) + BT(A) 4/315 + 3 log n / n^A`.
pub fn criterion_odd(log_n: f64, a: f64) -> Result<CriterionBreakdown> {
    if !(log_n >= bennett_log_x0()) {
        return Err(domain(format!(
            "odd criterion valid for log n >= log(8e9), got {log_n}"
        )));
    }
    let terms = CriterionTerms {
        p_term: None,
        w_squared_half: None,
        e_sum: 316.0 / (160.0 * log_n),
        bt_tail: bt_factor(a)? * 4.0 / 315.0,
        theta_tail: theta_tail(log_n, a),
    };
    Ok(CriterionBreakdown::new(
        CriterionMode::Odd,
        log_n,
        a,
        316.0,
        0.5,
        terms,
    ))
}

/// General-`n` criterion under GRH with `c = n^A`:
/// `W > W^2/2 + n^(A-1/2) ((1+8A)/(8 pi) log^2 n + 4A log n + 3.43)
///      + BT(A) 4/(n^A - 1) + 3 log n / n^A`.
pub fn criterion_grh(log_n: f64, a: f64) -> Result<CriterionBreakdown> {
    if !(log_n >= PROP2_MIN_LOG_N) {
        return Err(domain(format!(
            "GRH criterion needs log n >= 28.05, got {log_n}"
        )));
    }
    let bt = bt_factor(a)?;
    let w = w(log_n)?;
    let n_a = (a * log_n).exp();
    let terms = CriterionTerms {
        p_term: None,
        w_squared_half: Some(w * w / 2.0),
        e_sum: ((a - 0.5) * log_n).exp()
            * ((1.0 + 8.0 * a) / (8.0 * PI) * log_n * log_n + 4.0 * a * log_n + 3.43),
        bt_tail: bt * 4.0 / (n_a - 1.0),
        theta_tail: theta_tail(log_n, a),
    };
    Ok(CriterionBreakdown::new(
        CriterionMode::General,
        log_n,
        a,
        n_a,
        w,
        terms,
    ))
}

/// The criterion with the error-bound sum evaluated term by term over
/// squarefree `a` in `(1, c]` coprime to `n`.
///
/// `n` supplies coprimality (and parity in odd mode); `log_n` must agree
/// with it. In general mode the left side is `1` and `P(n)` enters the right
/// side through `p_source`.
pub fn criterion_generic(
    log_n: f64,
    params: &CriterionParams,
    n: &Factorization,
    mode: CriterionMode,
    p_source: PSource,
) -> Result<CriterionBreakdown> {
    params.validate()?;
    if !(log_n >= params.x0.ln()) {
        return Err(domain(format!(
            "log n = {log_n} below log x0 = {}",
            params.x0.ln()
        )));
    }
    if mode == CriterionMode::Odd && n.is_divisible_by_prime(2) {
        return Err(domain("odd-mode criterion applied to even n"));
    }
    if params.c > MAX_EXPLICIT_C {
        return Err(Error::OutOfBudget {
            what: format!("explicit sum up to c = {}", params.c),
        });
    }
    let c_int = params.c.floor() as u64;
    if let EBound::Bennett = params.e_bound {
        if params.x0 < BENNETT_X0 {
            return Err(Error::UnsupportedEBound(
                "unconditional bound requires x0 >= 8e9".into(),
            ));
        }
        if c_int.saturating_mul(c_int) > BENNETT_MAX_A_SQUARED {
            return Err(Error::UnsupportedEBound(format!(
                "unconditional bound covers a^2 <= 1e5, c = {}",
                params.c
            )));
        }
    }

    let e_sum = if c_int >= 2 {
        let seg = sieve_segment_with_capacity(0, c_int + 1, false, c_int + 1)?;
        let primes: Vec<u64> = n.factors().iter().filter_map(|(p, _)| p.to_u64()).collect();
        let sqrt_n = (-log_n / 2.0).exp();
        let mut sum = KahanSum::new();
        for a in 2..=c_int {
            if !seg.is_squarefree(a) || primes.iter().any(|&p| a % p == 0) {
                continue;
            }
            let e_over_n = match &params.e_bound {
                EBound::Bennett => 1.0 / (160.0 * log_n),
                EBound::Grh => {
                    (log_n * log_n / (8.0 * PI) + (log_n / PI + 4.0) * (a as f64).ln() + 3.43)
                        * sqrt_n
                }
                EBound::Custom(table) => *table.get(&a).ok_or_else(|| {
                    Error::UnsupportedEBound(format!("custom table has no entry for a = {a}"))
                })?,
            };
            sum.add(e_over_n);
        }
        sum.value()
    } else {
        0.0
    };

    let (lhs, p_term) = match mode {
        CriterionMode::Odd => (0.5, None),
        CriterionMode::General => {
            let p = match p_source {
                PSource::Exact => p_exact(n),
                PSource::UpperBound => prop2_upper_bound(log_n)?,
            };
            (1.0, Some(p))
        }
    };
    let terms = CriterionTerms {
        p_term,
        w_squared_half: None,
        e_sum,
        bt_tail: bt_factor(params.a)? * 4.0 / (params.c - 1.0),
        theta_tail: theta_tail(log_n, params.a),
    };
    Ok(CriterionBreakdown::new(
        mode, log_n, params.a, params.c, lhs, terms,
    ))
}
