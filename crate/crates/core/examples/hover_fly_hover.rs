//! Speed-limited trajectories: how the hover-fly-hover plan reacts to V and T.

use wpt_trajopt::model::SpeedLimit;
use wpt_trajopt::{solve_p1, solve_p2, EnergyProfile, SystemParams};

fn main() -> wpt_trajopt::Result<()> {
    let base = SystemParams::reference(8.0);
    let balanced = EnergyProfile::balanced();
    let bound = solve_p2(&base, &balanced)?.objective;

    println!("balanced profile, D = 8 m, T = 1 s; unconstrained total {bound:.5e} J");
    for v in [1.0, 2.0, 5.0, 10.0, 20.0, 50.0] {
        let p = base.with_max_speed(SpeedLimit::Bounded(v))?;
        let sol = solve_p1(&p, &balanced)?;
        let plan = sol.plan.expect("symmetric branch has a plan");
        println!(
            "  V = {v:>4} m/s  hover {:+.3} -> {:+.3} m, first hover {:.3} s, total {:.5e} J ({:.2}% below)",
            plan.x_hat1,
            plan.x_hat2,
            plan.t_hat,
            sol.objective,
            100.0 * (bound - sol.objective) / bound
        );
    }

    let skewed = EnergyProfile::from_alpha1(0.7)?;
    println!("\nalpha = (0.7, 0.3), V = 10 m/s: longer horizons amortize the flight");
    for t in [1.0, 5.0, 20.0, 100.0] {
        let p = base.with_duration(t)?;
        let p1 = solve_p1(&p, &skewed)?;
        let p2 = solve_p2(&p, &skewed)?;
        println!(
            "  T = {t:>5} s  {:?}/{:?}  gap to unconstrained {:.3e}",
            p1.branch,
            p1.exactness,
            (p2.objective - p1.objective) / p2.objective
        );
    }

    let sol = solve_p1(&base, &balanced)?;
    println!("\nbalanced trajectory breakpoints (t, x):");
    for (t, x) in sol.trajectory.breakpoints() {
        println!("  {t:.4} s  {x:+.4} m");
    }
    Ok(())
}
