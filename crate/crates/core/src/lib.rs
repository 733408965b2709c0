//! Pareto-optimal trajectories for a UAV charging two ground receivers.
//!
//! A UAV at fixed altitude broadcasts RF power while moving along the line
//! through two energy receivers. Given an energy profile `(alpha1, alpha2)`,
//! the library finds the trajectory that maximizes the total harvested energy
//! subject to each receiver getting its share:
//!
//! * [`dual::solve_p2`] — no speed limit. Lagrange dual plus primal recovery;
//!   the answer is a single hover point or a time-shared pair of hover points.
//! * [`planner::solve_p1`] — bounded speed. Reuses the unconstrained answer when
//!   it is a single hover, otherwise builds a hover-fly-hover trajectory.
//! * [`region`] — sweeps the profile to trace the achievable energy region.
//! * [`oracle`] — independent brute-force checks for all of the above.
//!
//! ```
//! use wpt_trajopt::{solve_p1, EnergyProfile, SystemParams};
//!
//! let params = SystemParams::reference(8.0);
//! let sol = solve_p1(&params, &EnergyProfile::balanced()).unwrap();
//! assert!((sol.energies.e1 - 1.2733e-4).abs() < 1e-8);
//! ```
//!
//! The `examples/` directory has one runnable program per capability.

pub mod cli;
pub mod config;
pub mod dual;
pub mod error;
pub mod model;
pub mod oracle;
pub mod planner;
pub mod psi;
pub mod region;

pub use dual::{solve_dual, solve_p2, DualPoint, P2Solution};
pub use error::{Error, Result};
pub use model::{
    harvested_power, trajectory_energies, trajectory_energy, EnergyPair, EnergyProfile, Receiver, Segment, SpeedLimit,
    SystemParams, Trajectory,
};
pub use planner::{solve_p1, HoverFlyHoverPlan, P1Solution};
pub use psi::{maximize_psi, symmetric_optimum, PsiMaxResult, SymmetricOptimum};
pub use region::{sweep, RegionBoundary, Solver};
