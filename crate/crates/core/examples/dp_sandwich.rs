//! Grid dynamic program bracketing the hover-fly-hover planner.
//!
//! The DP explores every speed-feasible grid path, so its value sits just
//! below the planner's and converges as the grid refines.

use std::time::Instant;

use wpt_trajopt::oracle::{dp_p1, static_benchmark, DpConfig};
use wpt_trajopt::{solve_p1, solve_p2, EnergyProfile, SystemParams};

fn main() -> wpt_trajopt::Result<()> {
    let p = SystemParams::reference(8.0);
    for a1 in [0.5, 0.7] {
        let profile = EnergyProfile::from_alpha1(a1)?;
        let st = static_benchmark(&p, &profile, 10_001).objective;
        let p1 = solve_p1(&p, &profile)?.objective;
        let p2 = solve_p2(&p, &profile)?.objective;
        println!("alpha1 = {a1}: static {st:.6e} <= planner {p1:.6e} <= unconstrained {p2:.6e}");
        for (dx, dt) in [(0.2, 0.02), (0.1, 0.01), (0.05, 0.005)] {
            let start = Instant::now();
            let dp = dp_p1(
                &p,
                &profile,
                &DpConfig {
                    dx,
                    dt,
                    ..DpConfig::default()
                },
            )?;
            println!(
                "  dp dx = {dx:<4} dt = {dt:<5} {:.6e}  ({:+.3}% vs planner, {:.2} s)",
                dp.objective,
                100.0 * (dp.objective - p1) / p1,
                start.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
