use log::warn;
use serde::{Deserialize, Serialize};

use super::{power, refined_max_psi};
use crate::dual::DualPoint;
use crate::model::{EnergyProfile, Receiver, SystemParams};

/// Half-width of the band `|alpha . lambda - 1| <= BAND` treated as feasible.
///
/// The dual function is positively homogeneous, so its minimizer over the band
/// is the segment minimizer scaled by `1 - BAND`, and every centre is scored at
/// its projection onto the segment. A band of positive width gives the feasible
/// set positive volume, which the method needs: with a razor-thin band the
/// normal-direction cuts stretch the ellipsoid along the segment without bound.
const BAND: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidOutcome {
    /// Best feasible iterate (the centre projected onto the dual segment).
    pub dual: DualPoint,
    /// Dual function value at `dual`.
    pub value: f64,
    pub iterations: usize,
    /// False when `max_iters` ran out before the optimality bound closed.
    pub converged: bool,
}

/// Minimizes the dual with the central-cut ellipsoid method in `(lambda1, lambda2)`.
///
/// The segment constraint is handled as the two inequalities
/// `1 - alpha . lambda <= 0` and `alpha . lambda - 1 <= 0` with subgradients
/// `-alpha` and `+alpha`; the objective subgradient is `[T Q1(x*), T Q2(x*)]`.
pub fn ellipsoid_dual(params: &SystemParams, profile: &EnergyProfile, max_iters: usize) -> EllipsoidOutcome {
    let alpha = [profile.alpha1(), profile.alpha2()];
    let t = params.duration();
    let radius = 2.0 * alpha.iter().filter(|&&a| a > 0.0).map(|a| 1.0 / a).fold(0.0, f64::max);

    let mut centre = [1.0, 1.0];
    let mut shape = [[radius * radius, 0.0], [0.0, radius * radius]];
    let mut best: Option<(DualPoint, f64)> = None;
    let mut converged = false;
    let mut iterations = 0;

    for it in 0..max_iters.max(1) {
        iterations = it + 1;
        let residual = alpha[0] * centre[0] + alpha[1] * centre[1] - 1.0;
        let cut = if centre[0] < 0.0 {
            [-1.0, 0.0]
        } else if centre[1] < 0.0 {
            [0.0, -1.0]
        } else if residual > BAND {
            alpha
        } else if residual < -BAND {
            [-alpha[0], -alpha[1]]
        } else {
            let scale = 1.0 / (residual + 1.0);
            let proj = DualPoint::new(centre[0] * scale, centre[1] * scale);
            // projection is a positive rescaling, so the maximizer is shared
            let (x_star, psi_max) = refined_max_psi(params, proj.lambda1, proj.lambda2);
            let value = t * psi_max;
            if best.is_none_or(|(_, b)| value < b) {
                best = Some((proj, value));
            }
            let g = [
                t * power(params, x_star, Receiver::One),
                t * power(params, x_star, Receiver::Two),
            ];
            let gap_bound = quad_form(&shape, &g).sqrt();
            if gap_bound <= 1e-9 * value {
                converged = true;
                break;
            }
            g
        };

        let pg = [
            shape[0][0] * cut[0] + shape[0][1] * cut[1],
            shape[1][0] * cut[0] + shape[1][1] * cut[1],
        ];
        let gpg = cut[0] * pg[0] + cut[1] * pg[1];
        if gpg.is_nan() || gpg <= 0.0 {
            converged = best.is_some();
            break;
        }
        let norm = gpg.sqrt();
        let step = [pg[0] / norm, pg[1] / norm];
        // n = 2: x+ = x - P g~ / 3, P+ = 4/3 (P - 2/3 P g~ g~' P)
        centre[0] -= step[0] / 3.0;
        centre[1] -= step[1] / 3.0;
        for r in 0..2 {
            for c in 0..2 {
                shape[r][c] = 4.0 / 3.0 * (shape[r][c] - 2.0 / 3.0 * step[r] * step[c]);
            }
        }
        let sym = 0.5 * (shape[0][1] + shape[1][0]);
        shape[0][1] = sym;
        shape[1][0] = sym;
    }

    let (dual, value) = best.unwrap_or_else(|| {
        let s = alpha[0] * centre[0].max(0.0) + alpha[1] * centre[1].max(0.0);
        let proj = DualPoint::new(centre[0].max(0.0) / s, centre[1].max(0.0) / s);
        let (_, v) = refined_max_psi(params, proj.lambda1, proj.lambda2);
        (proj, t * v)
    });
    if !converged {
        warn!("ellipsoid dual did not converge within {max_iters} iterations");
    }
    EllipsoidOutcome {
        dual,
        value,
        iterations,
        converged,
    }
}

fn quad_form(m: &[[f64; 2]; 2], g: &[f64; 2]) -> f64 {
    g[0] * (m[0][0] * g[0] + m[0][1] * g[1]) + g[1] * (m[1][0] * g[0] + m[1][1] * g[1])
}
