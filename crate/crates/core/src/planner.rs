//! Speed-constrained trajectory design.
//!
//! The unconstrained optimum is reused whenever it is already a single hover
//! point. Otherwise the UAV follows a hover-fly-hover pattern: hover above
//! `x_hat1` for `t_hat` seconds, fly to `x_hat2` at full speed, hover there for
//! the rest of the period. With a balanced profile the optimal pattern is
//! symmetric about the midpoint and known in closed form; for skewed profiles
//! the two hover points are found by a grid search over `[-xi, xi]^2` with the
//! hover split fixed by the fairness equation.

use serde::{Deserialize, Serialize};

use crate::dual::{solve_p2, P2Solution};
use crate::error::{Error, Result};
use crate::model::{
    harvested_power, trajectory_energies, EnergyPair, EnergyProfile, Receiver, Segment, SystemParams, Trajectory,
};
use crate::psi::symmetric_optimum;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoverFlyHoverPlan {
    pub x_hat1: f64,
    pub x_hat2: f64,
    /// Duration of the first hover, seconds.
    pub t_hat: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Optimal,
    Heuristic,
}

/// Which construction produced a [`P1Solution`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum P1Branch {
    /// No speed limit: the unconstrained solution itself.
    Unbounded,
    /// The unconstrained solution is a single hover and therefore feasible.
    Passthrough,
    /// Balanced profile: symmetric hover-fly-hover.
    Symmetric,
    /// Skewed profile: searched hover-fly-hover.
    Search,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct P1Solution {
    pub trajectory: Trajectory,
    pub energies: EnergyPair,
    /// Largest total supported by the profile constraints.
    pub objective: f64,
    pub plan: Option<HoverFlyHoverPlan>,
    pub exactness: Exactness,
    pub branch: P1Branch,
}

/// Grid resolution of the skewed-profile search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub grid: usize,
    pub refine: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { grid: 201, refine: 11 }
    }
}

fn flight_time(params: &SystemParams, x_from: f64, x_to: f64) -> f64 {
    let len = x_to - x_from;
    if len == 0.0 {
        return 0.0;
    }
    match params.max_speed().bound() {
        Some(v) => len / v,
        None => 0.0,
    }
}

fn flight_energy(params: &SystemParams, x_from: f64, x_to: f64, k: Receiver) -> f64 {
    if x_to == x_from {
        return 0.0;
    }
    let Some(v) = params.max_speed().bound() else {
        return 0.0;
    };
    let h = params.altitude();
    let xk = params.receiver_position(k);
    params.power_gain() / (v * h) * (((x_to - xk) / h).atan() - ((x_from - xk) / h).atan())
}

/// Energy delivered to receiver `k` by a hover-fly-hover plan.
pub fn plan_energy(params: &SystemParams, plan: &HoverFlyHoverPlan, k: Receiver) -> f64 {
    let t = params.duration();
    let fly = flight_time(params, plan.x_hat1, plan.x_hat2);
    let second_hover = (t - plan.t_hat - fly).max(0.0);
    plan.t_hat * harvested_power(params, plan.x_hat1, k)
        + second_hover * harvested_power(params, plan.x_hat2, k)
        + flight_energy(params, plan.x_hat1, plan.x_hat2, k)
}

/// Materializes a plan as segments; zero-length phases are dropped.
pub fn plan_trajectory(params: &SystemParams, plan: &HoverFlyHoverPlan) -> Trajectory {
    let t = params.duration();
    let fly = flight_time(params, plan.x_hat1, plan.x_hat2);
    let mut segs = Vec::with_capacity(3);
    if plan.t_hat > 0.0 {
        segs.push(Segment::Hover {
            x: plan.x_hat1,
            duration: plan.t_hat,
        });
    }
    if plan.x_hat2 != plan.x_hat1 {
        let speed = params.max_speed().bound().unwrap_or(f64::INFINITY);
        segs.push(Segment::Fly {
            x_start: plan.x_hat1,
            x_end: plan.x_hat2,
            speed,
        });
    }
    let rest = t - plan.t_hat - fly;
    if rest > 0.0 {
        segs.push(Segment::Hover {
            x: plan.x_hat2,
            duration: rest,
        });
    }
    Trajectory::new(segs).expect("plan segments are well-formed")
}

pub fn solve_p1(params: &SystemParams, profile: &EnergyProfile) -> Result<P1Solution> {
    solve_p1_with(params, profile, &SearchConfig::default())
}

pub fn solve_p1_with(params: &SystemParams, profile: &EnergyProfile, cfg: &SearchConfig) -> Result<P1Solution> {
    let p2 = solve_p2(params, profile)?;
    if !params.max_speed().is_bounded() {
        return Ok(from_p2(p2, P1Branch::Unbounded));
    }
    let xi = match symmetric_optimum(params).xi {
        Some(xi) if p2.dual.multipliers_equal() => xi,
        _ => return Ok(from_p2(p2, P1Branch::Passthrough)),
    };
    if profile.is_balanced() {
        let plan = symmetric_plan(params, xi);
        Ok(finish(params, profile, plan, Exactness::Optimal, P1Branch::Symmetric))
    } else {
        let plan = search_plan(params, profile, xi, cfg)?;
        Ok(finish(params, profile, plan, Exactness::Heuristic, P1Branch::Search))
    }
}

fn from_p2(p2: P2Solution, branch: P1Branch) -> P1Solution {
    P1Solution {
        trajectory: p2.trajectory,
        energies: p2.energies,
        objective: p2.objective,
        plan: None,
        exactness: Exactness::Optimal,
        branch,
    }
}

fn finish(
    params: &SystemParams,
    profile: &EnergyProfile,
    plan: HoverFlyHoverPlan,
    exactness: Exactness,
    branch: P1Branch,
) -> P1Solution {
    let trajectory = plan_trajectory(params, &plan);
    let energies = trajectory_energies(params, &trajectory);
    P1Solution {
        objective: profile.supported_total(energies),
        trajectory,
        energies,
        plan: Some(plan),
        exactness,
        branch,
    }
}

/// Symmetric pattern around the midpoint: hover at `-x`, fly at full speed, hover at `+x`,
/// with `x = min(xi, V T / 2)`.
pub fn symmetric_plan(params: &SystemParams, xi: f64) -> HoverFlyHoverPlan {
    let t = params.duration();
    let v = params.max_speed().bound().unwrap_or(f64::INFINITY);
    if v == 0.0 {
        return HoverFlyHoverPlan {
            x_hat1: 0.0,
            x_hat2: 0.0,
            t_hat: t,
        };
    }
    let x = xi.min(v * t / 2.0);
    HoverFlyHoverPlan {
        x_hat1: -x,
        x_hat2: x,
        t_hat: (t / 2.0 - x / v).max(0.0),
    }
}

/// Per-position quantities reused across the search grid.
struct Probe {
    x: f64,
    q: [f64; 2],
    angle: [f64; 2],
}

struct Search<'a> {
    params: &'a SystemParams,
    alpha: [f64; 2],
    speed: f64,
    flight_scale: f64,
    nearest: Option<(HoverFlyHoverPlan, f64)>,
}

impl<'a> Search<'a> {
    fn probe(&self, x: f64) -> Probe {
        let h = self.params.altitude();
        let mut q = [0.0; 2];
        let mut angle = [0.0; 2];
        for (i, k) in Receiver::BOTH.into_iter().enumerate() {
            q[i] = harvested_power(self.params, x, k);
            angle[i] = ((x - self.params.receiver_position(k)) / h).atan();
        }
        Probe { x, q, angle }
    }

    /// Fairness-balanced plan for a hover pair and its total energy, if the split is feasible.
    fn evaluate(&mut self, first: &Probe, second: &Probe) -> Option<(HoverFlyHoverPlan, f64)> {
        let t = self.params.duration();
        let len = second.x - first.x;
        if len < 0.0 {
            return None;
        }
        let fly = if len == 0.0 {
            0.0
        } else if self.speed == 0.0 {
            return None;
        } else {
            len / self.speed
        };
        if fly > t {
            return None;
        }
        let window = t - fly;
        // E_k(t_hat) = t_hat (q_k(x1) - q_k(x2)) + window q_k(x2) + F_k
        let mut slope = [0.0; 2];
        let mut offset = [0.0; 2];
        for i in 0..2 {
            let flight = if len == 0.0 {
                0.0
            } else {
                self.flight_scale * (second.angle[i] - first.angle[i])
            };
            slope[i] = first.q[i] - second.q[i];
            offset[i] = window * second.q[i] + flight;
        }
        let [a1, a2] = self.alpha;
        let coef = a2 * slope[0] - a1 * slope[1];
        let cst = a2 * offset[0] - a1 * offset[1];
        if coef == 0.0 {
            return None;
        }
        let t_hat = -cst / coef;
        let slack = 1e-12 * t;
        let miss = if t_hat < -slack {
            -t_hat
        } else if t_hat > window + slack {
            t_hat - window
        } else {
            0.0
        };
        let plan = HoverFlyHoverPlan {
            x_hat1: first.x,
            x_hat2: second.x,
            t_hat: t_hat.clamp(0.0, window),
        };
        if miss > 0.0 {
            if self.nearest.is_none_or(|(_, m)| miss < m) {
                self.nearest = Some((plan, miss));
            }
            return None;
        }
        let total: f64 = (0..2).map(|i| plan.t_hat * slope[i] + offset[i]).sum();
        Some((plan, total))
    }
}

fn consider(best: &mut Option<(HoverFlyHoverPlan, f64)>, cand: Option<(HoverFlyHoverPlan, f64)>) {
    if let Some((plan, total)) = cand {
        if best.is_none_or(|(_, b)| total > b) {
            *best = Some((plan, total));
        }
    }
}

/// Grid search for a skewed profile. Ties go to the lexicographically smallest pair.
pub fn search_plan(
    params: &SystemParams,
    profile: &EnergyProfile,
    xi: f64,
    cfg: &SearchConfig,
) -> Result<HoverFlyHoverPlan> {
    let speed = params.max_speed().bound().unwrap_or(f64::INFINITY);
    let mut search = Search {
        params,
        alpha: [profile.alpha1(), profile.alpha2()],
        speed,
        flight_scale: if speed > 0.0 {
            params.power_gain() / (speed * params.altitude())
        } else {
            0.0
        },
        nearest: None,
    };
    let n = cfg.grid.max(2);
    let cell = 2.0 * xi / (n - 1) as f64;
    let probes: Vec<Probe> = (0..n)
        .map(|i| search.probe(-xi + 2.0 * xi * (i as f64 / (n - 1) as f64)))
        .collect();

    let mut best = None;
    for i in 0..n {
        for j in i..n {
            let cand = search.evaluate(&probes[i], &probes[j]);
            consider(&mut best, cand);
        }
    }

    if let Some((centre, _)) = best {
        let m = cfg.refine.max(1);
        let mid = (m / 2) as f64;
        let step = cell / 10.0;
        let offsets: Vec<f64> = (0..m).map(|i| (i as f64 - mid) * step).collect();
        for &d1 in &offsets {
            let x1 = centre.x_hat1 + d1;
            if x1 < -xi || x1 > xi {
                continue;
            }
            let p1 = search.probe(x1);
            for &d2 in &offsets {
                let x2 = centre.x_hat2 + d2;
                if x2 < x1 || x2 > xi {
                    continue;
                }
                let p2 = search.probe(x2);
                let cand = search.evaluate(&p1, &p2);
                consider(&mut best, cand);
            }
        }
    }

    // single hover meeting the ratio exactly
    if let Some(x) = balanced_hover(params, profile, xi) {
        let p = search.probe(x);
        let t = params.duration();
        let e: f64 = p.q.iter().map(|q| q * t).sum();
        consider(
            &mut best,
            Some((
                HoverFlyHoverPlan {
                    x_hat1: x,
                    x_hat2: x,
                    t_hat: t,
                },
                e,
            )),
        );
    }

    match best {
        Some((plan, _)) => Ok(plan),
        None => Err(Error::NoFeasiblePlan {
            nearest: search.nearest.map(|(p, _)| p),
            miss: search.nearest.map_or(f64::INFINITY, |(_, m)| m),
        }),
    }
}

/// Hover position in `[-xi, xi]` whose power ratio equals `alpha1 / alpha2`, if any.
fn balanced_hover(params: &SystemParams, profile: &EnergyProfile, xi: f64) -> Option<f64> {
    let g = |x: f64| {
        profile.alpha2() * harvested_power(params, x, Receiver::One)
            - profile.alpha1() * harvested_power(params, x, Receiver::Two)
    };
    // g decreases across the corridor
    let (mut lo, mut hi) = (-xi, xi);
    if g(lo) < 0.0 || g(hi) > 0.0 {
        return None;
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 * xi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
