use log::warn;
use serde::{Deserialize, Serialize};

use super::{corridor_point, power};
use crate::error::{Error, Result};
use crate::model::{EnergyPair, EnergyProfile, Receiver, SpeedLimit, SystemParams};

/// Upper bound on stored back-pointers (time steps x positions x levels).
const MAX_STATES: usize = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DpConfig {
    /// Position step, meters.
    pub dx: f64,
    /// Time step, seconds.
    pub dt: f64,
    /// Number of quantized receiver-2 energy levels kept per state.
    pub levels: usize,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig {
            dx: 0.05,
            dt: 0.005,
            levels: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DpOutcome {
    pub energies: EnergyPair,
    /// `min_k E_k / alpha_k` of the best terminal state.
    pub objective: f64,
    /// Position at every time node, `steps + 1` entries.
    pub path: Vec<f64>,
    /// Set when the grid is too coarse for any motion and the search is static.
    pub degenerate: bool,
}

/// Discretized dynamic program over (time, position) for the speed-constrained problem.
///
/// Each state keeps a quantized Pareto frontier: for every bucket of one
/// receiver's energy, the path with the largest energy for the other receiver
/// (the exact pair is kept, only the bucketing is coarse). Per step the UAV may
/// move up to `floor(V dt / dx)` cells; energy increments use the trapezoid rule.
///
/// Keeping "max E1 per E2 bucket" lets E2 slip by up to a bucket width per step
/// when trading it for E1 is locally free, which compounds over many steps when
/// receiver 2's constraint is the binding one. The frontier is therefore swept
/// twice, once bucketed on each receiver, and the better terminal path wins.
/// Both passes report exact energies of a real grid path, so the answer is
/// always achievable on the grid.
pub fn dp_p1(params: &SystemParams, profile: &EnergyProfile, cfg: &DpConfig) -> Result<DpOutcome> {
    if !(cfg.dx > 0.0 && cfg.dt > 0.0 && cfg.levels >= 1) {
        return Err(Error::InvalidParams {
            field: "dp",
            reason: format!("dx, dt must be > 0 and levels >= 1, got {cfg:?}"),
        });
    }
    let d = params.separation();
    let t_total = params.duration();
    let n = if d == 0.0 {
        1
    } else {
        ((d / cfg.dx).round() as usize).max(1) + 1
    };
    let dx = if n > 1 { d / (n - 1) as f64 } else { 0.0 };
    let steps = ((t_total / cfg.dt - 1e-9).ceil() as usize).max(1);
    let dt = t_total / steps as f64;

    let reach = match params.max_speed() {
        _ if n == 1 => 0,
        SpeedLimit::Unbounded => n - 1,
        SpeedLimit::Bounded(v) => (((v * dt / dx) + 1e-9).floor() as usize).min(n - 1),
    };
    let degenerate = matches!(params.max_speed(), SpeedLimit::Bounded(v) if v > 0.0) && reach == 0 && n > 1;
    if degenerate {
        warn!("dp grid too coarse for any movement (dx = {dx}, dt = {dt}); searching static hovers only");
    }
    if steps.saturating_mul(n).saturating_mul(cfg.levels) > MAX_STATES {
        return Err(Error::InvalidParams {
            field: "dp",
            reason: format!(
                "{steps} steps x {n} positions x {} levels exceeds the state budget",
                cfg.levels
            ),
        });
    }

    let xs: Vec<f64> = (0..n).map(|i| corridor_point(params, i, n)).collect();
    let h = params.altitude();
    let cap = t_total * params.efficiency() * params.ref_gain() * params.tx_power() / (h * h);
    let grid = Grid {
        q: [
            xs.iter().map(|&x| power(params, x, Receiver::One)).collect(),
            xs.iter().map(|&x| power(params, x, Receiver::Two)).collect(),
        ],
        steps,
        dt,
        reach,
        levels: cfg.levels,
        width: cap / (cfg.levels.max(2) - 1) as f64,
    };
    let score = |e: EnergyPair| {
        Receiver::BOTH
            .iter()
            .filter(|&&k| profile.weight(k) > 0.0)
            .map(|&k| e.get(k) / profile.weight(k))
            .fold(f64::INFINITY, f64::min)
    };

    let (a, b) = rayon::join(|| grid.sweep(1, &score), || grid.sweep(0, &score));
    // ties go to the receiver-2-bucketed pass
    let (energies, objective, cells) = if b.1 > a.1 { b } else { a };
    Ok(DpOutcome {
        energies,
        objective,
        path: cells.into_iter().map(|i| xs[i]).collect(),
        degenerate,
    })
}

struct Grid {
    /// Harvested power per receiver at every grid position.
    q: [Vec<f64>; 2],
    steps: usize,
    dt: f64,
    reach: usize,
    levels: usize,
    width: f64,
}

impl Grid {
    /// One frontier sweep with receiver `bucketed` quantized and the other maximized.
    /// Returns the best terminal energies, their score and the path as grid indices.
    fn sweep(&self, bucketed: usize, score: &dyn Fn(EnergyPair) -> f64) -> (EnergyPair, f64, Vec<usize>) {
        let kept = 1 - bucketed;
        let (qk, qb) = (&self.q[kept], &self.q[bucketed]);
        let n = qk.len();
        let levels = self.levels;
        let bucket = |e: f64| ((e / self.width) as usize).min(levels - 1);
        let dt = self.dt;

        // (kept energy, bucketed energy); NEG_INFINITY marks an empty slot
        const EMPTY: (f64, f64) = (f64::NEG_INFINITY, 0.0);
        let mut cur = vec![EMPTY; n * levels];
        for i in 0..n {
            cur[i * levels] = (0.0, 0.0);
        }
        let mut parents = vec![u32::MAX; self.steps * n * levels];
        let mut next = vec![EMPTY; n * levels];

        for s in 0..self.steps {
            next.fill(EMPTY);
            let back = &mut parents[s * n * levels..(s + 1) * n * levels];
            for i in 0..n {
                let lo = i.saturating_sub(self.reach);
                let hi = (i + self.reach).min(n - 1);
                for b in 0..levels {
                    let (ek, eb) = cur[i * levels + b];
                    if ek == f64::NEG_INFINITY {
                        continue;
                    }
                    for j in lo..=hi {
                        let nk = ek + 0.5 * dt * (qk[i] + qk[j]);
                        let nb = eb + 0.5 * dt * (qb[i] + qb[j]);
                        let idx = j * levels + bucket(nb);
                        let slot = &mut next[idx];
                        if nk > slot.0 || (nk == slot.0 && nb > slot.1) {
                            *slot = (nk, nb);
                            back[idx] = (i * levels + b) as u32;
                        }
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }

        let pair = |e: (f64, f64)| {
            let mut v = [0.0; 2];
            v[kept] = e.0;
            v[bucketed] = e.1;
            EnergyPair::new(v[0], v[1])
        };
        let mut best_idx = 0;
        let mut best_score = f64::NEG_INFINITY;
        for (idx, &e) in cur.iter().enumerate() {
            if e.0 == f64::NEG_INFINITY {
                continue;
            }
            let sc = score(pair(e));
            if sc > best_score {
                best_score = sc;
                best_idx = idx;
            }
        }

        let mut path = vec![0; self.steps + 1];
        let mut idx = best_idx;
        for s in (0..self.steps).rev() {
            path[s + 1] = idx / levels;
            idx = parents[s * n * levels + idx] as usize;
        }
        path[0] = idx / levels;
        (pair(cur[best_idx]), best_score, path)
    }
}
