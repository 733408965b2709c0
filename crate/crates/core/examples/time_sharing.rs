//! Unconstrained-speed optimum: dual multipliers, hover points and time split.

use wpt_trajopt::{solve_p2, EnergyProfile, SystemParams};

fn main() -> wpt_trajopt::Result<()> {
    let p = SystemParams::reference(8.0);
    println!("D = 8 m, T = 1 s, no speed limit\n");
    println!(
        "{:>6} {:>9} {:>9} {:>11} {:>11} {:>28}",
        "alpha1", "lambda1", "lambda2", "E1 [J]", "E2 [J]", "trajectory"
    );
    for a1 in [0.0, 0.1, 0.3, 0.5, 0.7, 0.76, 0.8, 1.0] {
        let sol = solve_p2(&p, &EnergyProfile::from_alpha1(a1)?)?;
        let shape = sol
            .trajectory
            .segments()
            .iter()
            .map(|s| format!("{:+.3}m for {:.3}s", s.start(), s.duration()))
            .collect::<Vec<_>>()
            .join(" | ");
        println!(
            "{a1:>6.2} {:>9.4} {:>9.4} {:>11.4e} {:>11.4e}   {shape}",
            sol.dual.lambda1, sol.dual.lambda2, sol.energies.e1, sol.energies.e2
        );
    }
    println!("\nWhile lambda1 = lambda2 the optimum time-shares the two symmetric hover points;");
    println!("outside that band a single hover point is optimal and one constraint may go slack.");
    let sol = solve_p2(&p, &EnergyProfile::balanced())?;
    println!("balanced: tau = {:?} s, duality gap {:.1e}", sol.tau, sol.duality_gap());
    Ok(())
}
