use serde::{Deserialize, Serialize};

use super::{corridor_point, power};
use crate::model::{EnergyPair, EnergyProfile, Receiver, SystemParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaticOutcome {
    /// Best hover position.
    pub x: f64,
    pub energies: EnergyPair,
    /// `min_k E_k / alpha_k` at `x`: the largest total the profile admits.
    pub objective: f64,
}

/// Best fixed hover position (the `V = 0` benchmark) over `n_positions` uniform samples.
///
/// A single hover point rarely hits the profile ratio exactly, so the score is
/// `min_k E_k / alpha_k`, which equals `E1 + E2` whenever the ratio is met.
pub fn static_benchmark(params: &SystemParams, profile: &EnergyProfile, n_positions: usize) -> StaticOutcome {
    let n = n_positions.max(2);
    let t = params.duration();
    let mut best: Option<StaticOutcome> = None;
    for i in 0..n {
        let x = corridor_point(params, i, n);
        let energies = EnergyPair::new(t * power(params, x, Receiver::One), t * power(params, x, Receiver::Two));
        let objective = Receiver::BOTH
            .iter()
            .filter(|&&k| profile.weight(k) > 0.0)
            .map(|&k| energies.get(k) / profile.weight(k))
            .fold(f64::INFINITY, f64::min);
        if best.is_none_or(|b| objective > b.objective) {
            best = Some(StaticOutcome { x, energies, objective });
        }
    }
    best.expect("at least two positions")
}
