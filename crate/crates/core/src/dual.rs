//! Lagrange-dual solution of the speed-unconstrained problem.
//!
//! For an energy profile `alpha`, the unconstrained problem maximizes the total
//! energy `E` subject to `E_k >= alpha_k * E`. The dual function is finite only
//! on the segment `alpha1 * lambda1 + alpha2 * lambda2 = 1`, where it reduces to
//! `T * max_x psi(x)`. The dual is minimized along that segment, parametrized by
//! `u = lambda1`. Its directional subgradient is `T * (Q1(x*) - alpha1/alpha2 * Q2(x*))`,
//! which is nondecreasing in `u`, so the minimizer is found by bisection on its
//! sign.
//!
//! Primal recovery:
//! * unequal optimal multipliers: hover at the unique maximizer of `psi`;
//! * equal multipliers, `D <= 2H/sqrt(3)`: hover above the midpoint;
//! * equal multipliers, `D > 2H/sqrt(3)`: time-share between `-xi` and `+xi`,
//!   with the split `tau` chosen so the energy ratio meets the profile.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    harvested_power, trajectory_energies, EnergyPair, EnergyProfile, Receiver, SystemParams, Trajectory,
};
use crate::psi::{maximize_psi, symmetric_optimum, PsiMaxResult};

/// Relative gap under which the optimal multipliers count as equal.
pub const EQUAL_MULTIPLIER_TOL: f64 = 1e-6;

/// Relative fairness error tolerated after the time-sharing split is clamped.
pub const FAIRNESS_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPoint {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl DualPoint {
    pub fn new(lambda1: f64, lambda2: f64) -> Self {
        DualPoint { lambda1, lambda2 }
    }

    /// Point on the dual segment with `lambda1 = u`. Requires `alpha2 > 0`.
    pub fn on_segment(profile: &EnergyProfile, u: f64) -> Self {
        let lambda2 = ((1.0 - profile.alpha1() * u) / profile.alpha2()).max(0.0);
        DualPoint { lambda1: u, lambda2 }
    }

    /// `alpha1 * lambda1 + alpha2 * lambda2 - 1`.
    pub fn constraint_residual(&self, profile: &EnergyProfile) -> f64 {
        profile.alpha1() * self.lambda1 + profile.alpha2() * self.lambda2 - 1.0
    }

    pub fn is_feasible(&self, profile: &EnergyProfile) -> bool {
        self.lambda1 >= 0.0 && self.lambda2 >= 0.0 && self.constraint_residual(profile).abs() <= 1e-12
    }

    pub fn multipliers_equal(&self) -> bool {
        (self.lambda1 - self.lambda2).abs() <= EQUAL_MULTIPLIER_TOL * (self.lambda1 + self.lambda2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct P2Solution {
    pub trajectory: Trajectory,
    pub energies: EnergyPair,
    /// Optimal value `E*`: the largest total supported by the profile constraints.
    pub objective: f64,
    pub dual: DualPoint,
    /// Dual function value at `dual`.
    pub dual_value: f64,
    /// Time spent above `-xi` in the time-sharing case, seconds.
    pub tau: Option<f64>,
}

impl P2Solution {
    /// `|dual - primal| / primal`.
    pub fn duality_gap(&self) -> f64 {
        (self.dual_value - self.objective).abs() / self.objective
    }
}

/// Dual function value at `dp`, together with the maximizers used for primal recovery.
pub fn dual_function(params: &SystemParams, dp: &DualPoint) -> Result<(f64, PsiMaxResult)> {
    let best = maximize_psi(params, dp.lambda1, dp.lambda2)?;
    Ok((params.duration() * best.value, best))
}

/// Subgradient `[T Q1(x*), T Q2(x*)]` of the dual function at a maximizer `x*`.
pub fn subgradient(params: &SystemParams, _dp: &DualPoint, maximizer: f64) -> [f64; 2] {
    let t = params.duration();
    [
        t * harvested_power(params, maximizer, Receiver::One),
        t * harvested_power(params, maximizer, Receiver::Two),
    ]
}

/// Sign-carrying slope of the dual along the segment, per unit time.
fn segment_slope(params: &SystemParams, profile: &EnergyProfile, x: f64) -> f64 {
    harvested_power(params, x, Receiver::One)
        - profile.alpha1() / profile.alpha2() * harvested_power(params, x, Receiver::Two)
}

pub fn solve_dual(params: &SystemParams, profile: &EnergyProfile) -> Result<DualPoint> {
    match profile.zero_weight() {
        Some(Receiver::One) => return Ok(DualPoint::new(0.0, 1.0 / profile.alpha2())),
        Some(Receiver::Two) => return Ok(DualPoint::new(1.0 / profile.alpha1(), 0.0)),
        None => {}
    }

    // (1, 1) is always on the segment; it is optimal iff 0 lies in the
    // subdifferential there, i.e. the maximizer slopes straddle zero.
    let equal = maximize_psi(params, 1.0, 1.0)?;
    let slopes: Vec<f64> = equal
        .maximizers
        .iter()
        .map(|&x| segment_slope(params, profile, x))
        .collect();
    let lo_slope = slopes.iter().copied().fold(f64::INFINITY, f64::min);
    let hi_slope = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo_slope <= 0.0 && hi_slope >= 0.0 {
        return Ok(DualPoint::new(1.0, 1.0));
    }

    let slope_at = |u: f64| -> Result<f64> {
        let dp = DualPoint::on_segment(profile, u);
        let best = maximize_psi(params, dp.lambda1, dp.lambda2)?;
        Ok(segment_slope(params, profile, best.first()))
    };

    let u_max = 1.0 / profile.alpha1();
    // the slope at u = 1 is already known from the certificate check
    let (mut lo, mut hi) = if lo_slope > 0.0 { (0.0, 1.0) } else { (1.0, u_max) };
    if lo == 0.0 && slope_at(0.0)? >= 0.0 {
        return Ok(DualPoint::on_segment(profile, 0.0));
    }
    if hi == u_max && slope_at(u_max)? <= 0.0 {
        return Ok(DualPoint::new(u_max, 0.0));
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 * u_max {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if slope_at(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(DualPoint::on_segment(profile, 0.5 * (lo + hi)))
}

pub fn solve_p2(params: &SystemParams, profile: &EnergyProfile) -> Result<P2Solution> {
    let t = params.duration();

    if let Some(zero) = profile.zero_weight() {
        let target = zero.other();
        let x = params.receiver_position(target);
        let trajectory = Trajectory::hover(x, t);
        let energies = trajectory_energies(params, &trajectory);
        let dual = solve_dual(params, profile)?;
        let (dual_value, _) = dual_function(params, &dual)?;
        return Ok(P2Solution {
            objective: profile.supported_total(energies),
            trajectory,
            energies,
            dual,
            dual_value,
            tau: None,
        });
    }

    let dual = solve_dual(params, profile)?;
    let (dual_value, best) = dual_function(params, &dual)?;

    let (trajectory, tau) = if dual.multipliers_equal() {
        match symmetric_optimum(params).xi {
            None => (Trajectory::hover(0.0, t), None),
            Some(xi) => {
                let tau = time_sharing_split(params, profile, xi);
                let traj = Trajectory::hover(-xi, tau).concat(&Trajectory::hover(xi, t - tau));
                (traj, Some(tau))
            }
        }
    } else {
        (Trajectory::hover(best.first(), t), None)
    };

    let energies = trajectory_energies(params, &trajectory);
    if let Some(tau) = tau {
        let err = fairness_error(profile, energies);
        if err > FAIRNESS_TOL {
            return Err(Error::TimeSharing { tau, ratio_error: err });
        }
    }

    Ok(P2Solution {
        objective: profile.supported_total(energies),
        trajectory,
        energies,
        dual,
        dual_value,
        tau,
    })
}

/// Time above `-xi` that balances the energies to the profile, clamped to `[0, T]`.
fn time_sharing_split(params: &SystemParams, profile: &EnergyProfile, xi: f64) -> f64 {
    let t = params.duration();
    let (a1, a2) = (profile.alpha1(), profile.alpha2());
    let q1l = harvested_power(params, -xi, Receiver::One);
    let q1r = harvested_power(params, xi, Receiver::One);
    let q2l = harvested_power(params, -xi, Receiver::Two);
    let q2r = harvested_power(params, xi, Receiver::Two);
    // a2 [tau q1l + (T - tau) q1r] = a1 [tau q2l + (T - tau) q2r]
    let slope = a2 * (q1l - q1r) - a1 * (q2l - q2r);
    let tau = t * (a1 * q2r - a2 * q1r) / slope;
    tau.clamp(0.0, t)
}

/// Worst relative deviation of `E_k / (E1 + E2)` from `alpha_k`.
pub fn fairness_error(profile: &EnergyProfile, energies: EnergyPair) -> f64 {
    let total = energies.total();
    Receiver::BOTH
        .iter()
        .filter(|&&k| profile.weight(k) > 0.0)
        .map(|&k| (energies.get(k) / total - profile.weight(k)).abs() / profile.weight(k))
        .fold(0.0, f64::max)
}
