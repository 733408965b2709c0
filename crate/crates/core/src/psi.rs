//! Maximization of the weighted instantaneous power
//! `psi(x) = lambda1 * Q1(x) + lambda2 * Q2(x)` over the corridor `[-D/2, D/2]`.
//!
//! `psi` is not concave, but its derivative has the sign of a quintic
//! polynomial, so it has at most five stationary points. They are isolated by
//! scanning the polynomial on a uniform grid and bisecting every sign change.
//! Corridor endpoints are always candidates.
//!
//! With equal weights the stationary points are known in closed form: for
//! `D <= 2H/sqrt(3)` the single maximizer is the midpoint, above that the
//! maximum is attained at the two symmetric points `±xi` with
//!
//! ```text
//! xi^2 = sqrt(D^4/4 + H^2 D^2) - (D^2/4 + H^2)
//! ```
//!
//! which is the positive root of the quartic factor
//! `x^4 + 2(D^2/4 + H^2) x^2 - 3D^4/16 + H^4 - H^2 D^2 / 2` of the derivative.
//! (This form vanishes at the threshold and stays below `D/2`; the variant with
//! the square root halved does not, so it is not used.)

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{harvested_power, Receiver, SystemParams};

/// Default number of scan points for stationary-point isolation.
pub const DEFAULT_SCAN_POINTS: usize = 2048;

/// Relative tolerance under which two candidate values count as the same maximum.
pub const TIE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiMaxResult {
    /// Global maximizers in increasing order (one or two entries).
    pub maximizers: Vec<f64>,
    /// Common maximum value of `psi`, watts.
    pub value: f64,
}

impl PsiMaxResult {
    /// The leftmost maximizer.
    pub fn first(&self) -> f64 {
        self.maximizers[0]
    }

    pub fn is_unique(&self) -> bool {
        self.maximizers.len() == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricOptimum {
    /// `2H / sqrt(3)`, meters.
    pub threshold: f64,
    /// Symmetric hover offset; present iff `D` exceeds the threshold.
    pub xi: Option<f64>,
}

pub fn psi(params: &SystemParams, lambda1: f64, lambda2: f64, x: f64) -> f64 {
    lambda1 * harvested_power(params, x, Receiver::One) + lambda2 * harvested_power(params, x, Receiver::Two)
}

/// Quintic numerator `N(x)` of the derivative, `psi'(x) = -2 eta beta0 P N(x) / (A^2 B^2)`,
/// with `A = (x + D/2)^2 + H^2`, `B = (x - D/2)^2 + H^2`.
pub fn stationarity_numerator(params: &SystemParams, lambda1: f64, lambda2: f64, x: f64) -> f64 {
    let a = params.half_span();
    let h2 = params.altitude() * params.altitude();
    let near1 = (x + a) * (x + a) + h2;
    let near2 = (x - a) * (x - a) + h2;
    lambda1 * (x + a) * near2 * near2 + lambda2 * (x - a) * near1 * near1
}

/// Derivative of `psi` with respect to `x`.
pub fn psi_derivative(params: &SystemParams, lambda1: f64, lambda2: f64, x: f64) -> f64 {
    let a = params.half_span();
    let h2 = params.altitude() * params.altitude();
    let near1 = (x + a) * (x + a) + h2;
    let near2 = (x - a) * (x - a) + h2;
    -2.0 * params.power_gain() * (lambda1 * (x + a) / (near1 * near1) + lambda2 * (x - a) / (near2 * near2))
}

/// Separation above which equal weights produce two symmetric maximizers.
pub fn symmetric_threshold(params: &SystemParams) -> f64 {
    2.0 * params.altitude() / 3f64.sqrt()
}

pub fn symmetric_optimum(params: &SystemParams) -> SymmetricOptimum {
    let threshold = symmetric_threshold(params);
    let d = params.separation();
    let h2 = params.altitude() * params.altitude();
    let xi = if d > threshold {
        let d2 = d * d;
        let radicand = (d2 * d2 / 4.0 + h2 * d2).sqrt() - (d2 / 4.0 + h2);
        // the closed form loses all digits right at the threshold
        (radicand > 0.0).then(|| radicand.sqrt())
    } else {
        None
    };
    SymmetricOptimum { threshold, xi }
}

pub fn maximize_psi(params: &SystemParams, lambda1: f64, lambda2: f64) -> Result<PsiMaxResult> {
    maximize_psi_with(params, lambda1, lambda2, DEFAULT_SCAN_POINTS)
}

pub fn maximize_psi_with(
    params: &SystemParams,
    lambda1: f64,
    lambda2: f64,
    scan_points: usize,
) -> Result<PsiMaxResult> {
    if !(lambda1 >= 0.0 && lambda2 >= 0.0) || !(lambda1.is_finite() && lambda2.is_finite()) {
        return Err(Error::InvalidProfile {
            alpha1: lambda1,
            alpha2: lambda2,
            reason: "dual weights must be finite and non-negative".into(),
        });
    }
    if lambda1 + lambda2 <= 0.0 {
        return Err(Error::ZeroWeights);
    }
    let half = params.half_span();
    if half == 0.0 {
        return Ok(PsiMaxResult {
            maximizers: vec![0.0],
            value: psi(params, lambda1, lambda2, 0.0),
        });
    }

    let mut candidates = stationary_points(params, lambda1, lambda2, scan_points.max(2));
    candidates.push(-half);
    candidates.push(half);
    if lambda1 == lambda2 {
        candidates.push(0.0);
        if let Some(xi) = symmetric_optimum(params).xi {
            candidates.push(-xi);
            candidates.push(xi);
        }
    }

    let mut scored: Vec<(f64, f64)> = candidates
        .into_iter()
        .map(|x| (x, psi(params, lambda1, lambda2, x)))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));

    // merge near-duplicates, keeping the better of each cluster
    let merge_tol = 1e-9 * params.separation().max(1.0);
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(scored.len());
    for (x, v) in scored {
        match merged.last_mut() {
            Some(last) if x - last.0 <= merge_tol => {
                if v > last.1 {
                    *last = (x, v);
                }
            }
            _ => merged.push((x, v)),
        }
    }

    let value = merged.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let winners: Vec<f64> = merged
        .iter()
        .filter(|c| (value - c.1) <= TIE_TOLERANCE * value.abs())
        .map(|c| c.0)
        .collect();
    let maximizers = match winners.len() {
        0..=2 => winners,
        _ => vec![winners[0], winners[winners.len() - 1]],
    };
    Ok(PsiMaxResult { maximizers, value })
}

/// Interior roots of the stationarity numerator, isolated by scan + bisection.
fn stationary_points(params: &SystemParams, lambda1: f64, lambda2: f64, n: usize) -> Vec<f64> {
    let half = params.half_span();
    let tol = 1e-12 * params.separation() + 1e-15;
    let f = |x: f64| stationarity_numerator(params, lambda1, lambda2, x);
    let grid = |i: usize| -half + params.separation() * (i as f64 / (n - 1) as f64);

    let mut roots = Vec::new();
    let mut x_prev = grid(0);
    let mut f_prev = f(x_prev);
    for i in 1..n {
        let x = grid(i);
        let fx = f(x);
        if fx == 0.0 {
            roots.push(x);
        } else if f_prev != 0.0 && (f_prev < 0.0) != (fx < 0.0) {
            roots.push(bisect(&f, x_prev, x, f_prev, tol));
        }
        x_prev = x;
        f_prev = fx;
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> f64 {
    let lo_negative = f_lo < 0.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
