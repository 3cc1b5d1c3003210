//! Choice of `A` minimizing a criterion's right-hand side.

use serde::Serialize;

use crate::analytic::criterion::{criterion_grh, criterion_odd};
use crate::error::{domain, Result};

pub const A_MIN: f64 = 0.01;
pub const A_MAX: f64 = 0.49;
pub const A_TOLERANCE: f64 = 1e-5;
const GRID_POINTS: usize = 481;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizeMode {
    Odd,
    Grh,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptimizeResult {
    #[serde(rename = "A")]
    pub a: f64,
    pub rhs: f64,
    /// False when the grid scan found more than one descent and the grid argmin was returned.
    pub unimodal: bool,
}

/// Golden-section minimization of `f` on `[lo, hi]` until the bracket is narrower than `tol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    (lo + hi) / 2.0
}

/// Minimizes the right-hand side over `A ∈ [0.01, 0.49]`.
pub fn optimize_a(log_n: f64, mode: OptimizeMode) -> Result<OptimizeResult> {
    let rhs = |a: f64| -> Result<f64> {
        Ok(match mode {
            OptimizeMode::Odd => criterion_odd(log_n, a)?.rhs,
            OptimizeMode::Grh => criterion_grh(log_n, a)?.rhs,
        })
    };
    // surfaces domain errors for log_n before searching
    rhs(0.25)?;

    let step = (A_MAX - A_MIN) / (GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..GRID_POINTS).map(|i| A_MIN + i as f64 * step).collect();
    let values: Vec<f64> = grid.iter().map(|&a| rhs(a)).collect::<Result<_>>()?;
    let (best, _) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| domain("empty grid"))?;
    let unimodal = values[..=best].windows(2).all(|w| w[1] <= w[0])
        && values[best..].windows(2).all(|w| w[1] >= w[0]);
    if !unimodal {
        return Ok(OptimizeResult {
            a: grid[best],
            rhs: values[best],
            unimodal,
        });
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(GRID_POINTS - 1)];
    let f = |a: f64| rhs(a).unwrap_or(f64::INFINITY);
    let a = golden_section(f, lo, hi, A_TOLERANCE / 10.0);
    Ok(OptimizeResult {
        a,
        rhs: f(a),
        unimodal,
    })
}
