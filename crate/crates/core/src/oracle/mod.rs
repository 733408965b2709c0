//! Brute-force verifiers.
//!
//! Nothing in here calls into the solvers it checks: power evaluation,
//! maximization and integration are re-implemented from the raw parameters so
//! that agreement between an oracle and a solver means something.

mod dp;
mod ellipsoid;
mod grid;
mod quadrature;
mod static_hover;

pub use dp::{dp_p1, DpConfig, DpOutcome};
pub use ellipsoid::{ellipsoid_dual, EllipsoidOutcome};
pub use grid::{grid_max_psi, refined_max_psi};
pub use quadrature::quadrature_energy;
pub use static_hover::{static_benchmark, StaticOutcome};

use crate::model::{Receiver, SystemParams};

/// Default oracle grid size for psi maximization.
pub const GRID_POINTS: usize = 100_000;
/// Default trapezoid step count.
pub const QUADRATURE_STEPS: usize = 100_000;

fn power(params: &SystemParams, x: f64, k: Receiver) -> f64 {
    let xk = match k {
        Receiver::One => -0.5 * params.separation(),
        Receiver::Two => 0.5 * params.separation(),
    };
    let d = x - xk;
    let h = params.altitude();
    params.efficiency() * params.ref_gain() * params.tx_power() / (d * d + h * h)
}

/// `i`-th of `n` uniform points on `[-D/2, D/2]`.
fn corridor_point(params: &SystemParams, i: usize, n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    0.5 * params.separation() * (2.0 * i as f64 / (n - 1) as f64 - 1.0)
}
