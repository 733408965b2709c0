use super::{corridor_point, power};
use crate::model::{Receiver, SystemParams};

fn weighted(params: &SystemParams, lambda1: f64, lambda2: f64, x: f64) -> f64 {
    lambda1 * power(params, x, Receiver::One) + lambda2 * power(params, x, Receiver::Two)
}

/// Argmax of `lambda1 Q1 + lambda2 Q2` over `n_points` uniform samples of the corridor.
///
/// Returns the leftmost sample attaining the maximum.
pub fn grid_max_psi(params: &SystemParams, lambda1: f64, lambda2: f64, n_points: usize) -> (f64, f64) {
    let n = n_points.max(2);
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for i in 0..n {
        let x = corridor_point(params, i, n);
        let v = weighted(params, lambda1, lambda2, x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Coarse grid followed by a zoomed grid around the coarse winner.
///
/// Cheaper than [`grid_max_psi`] at comparable accuracy; used by the ellipsoid oracle,
/// which needs thousands of evaluations.
pub fn refined_max_psi(params: &SystemParams, lambda1: f64, lambda2: f64) -> (f64, f64) {
    const COARSE: usize = 2001;
    const FINE: usize = 2001;
    let half = 0.5 * params.separation();
    let (x0, _) = grid_max_psi(params, lambda1, lambda2, COARSE);
    if half == 0.0 {
        return (0.0, weighted(params, lambda1, lambda2, 0.0));
    }
    let cell = params.separation() / (COARSE - 1) as f64;
    let lo = (x0 - 2.0 * cell).max(-half);
    let hi = (x0 + 2.0 * cell).min(half);
    let mut best = (x0, weighted(params, lambda1, lambda2, x0));
    for i in 0..FINE {
        let x = lo + (hi - lo) * (i as f64 / (FINE - 1) as f64);
        let v = weighted(params, lambda1, lambda2, x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}
