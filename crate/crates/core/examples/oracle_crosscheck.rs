//! Every solver against an independent brute-force counterpart.

use wpt_trajopt::cli::{run_suites, Suite, VerifyOptions};
use wpt_trajopt::dual::dual_function;
use wpt_trajopt::model::{trajectory_energy, Receiver};
use wpt_trajopt::oracle::{ellipsoid_dual, grid_max_psi, quadrature_energy, GRID_POINTS};
use wpt_trajopt::{maximize_psi, solve_dual, solve_p1, EnergyProfile, SystemParams};

fn main() -> wpt_trajopt::Result<()> {
    let p = SystemParams::reference(8.0);

    let exact = maximize_psi(&p, 1.0, 0.6)?;
    let (gx, gv) = grid_max_psi(&p, 1.0, 0.6, GRID_POINTS);
    println!(
        "psi(1, 0.6): root isolation x = {:+.6}, grid x = {gx:+.6}",
        exact.first()
    );
    println!("             values {:.12e} vs {gv:.12e}", exact.value);

    for a1 in [0.2, 0.5, 0.77] {
        let profile = EnergyProfile::from_alpha1(a1)?;
        let line = solve_dual(&p, &profile)?;
        let (v, _) = dual_function(&p, &line)?;
        let ell = ellipsoid_dual(&p, &profile, 2_000);
        println!(
            "dual alpha1 = {a1}: line search {v:.12e} ({:.4}, {:.4}), ellipsoid {:.12e} after {} iterations",
            line.lambda1, line.lambda2, ell.value, ell.iterations
        );
    }

    let sol = solve_p1(&p, &EnergyProfile::balanced())?;
    for k in Receiver::BOTH {
        let closed = trajectory_energy(&p, &sol.trajectory, k);
        let trap = quadrature_energy(&p, &sol.trajectory, k, 100_000);
        println!("E{} closed form {closed:.12e}, trapezoid {trap:.12e}", k.index());
    }

    println!();
    let rows = run_suites(&p, Suite::All, &VerifyOptions::default())?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    for r in &rows {
        println!("{:<10} {:.2e} <= {:.0e}  {}", r.suite, r.measured, r.tolerance, r.check);
    }
    println!("{} checks, {failed} failed", rows.len());
    Ok(())
}
