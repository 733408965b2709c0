//! Where should a single UAV hover to maximize weighted power?
//!
//! Prints the equal-weight maximizers as the receivers move apart, showing the
//! split from one hover point at the midpoint to two symmetric ones.

use wpt_trajopt::psi::psi;
use wpt_trajopt::{maximize_psi, symmetric_optimum, SystemParams};

fn main() -> wpt_trajopt::Result<()> {
    let base = SystemParams::reference(8.0);
    let sym = symmetric_optimum(&base);
    println!("split threshold 2H/sqrt(3) = {:.4} m\n", sym.threshold);

    println!("{:>6}  {:>22}  {:>12}", "D [m]", "maximizers [m]", "psi [W]");
    for d in [2.0, 4.0, 5.0, 5.7, 6.0, 8.0, 12.0, 16.0] {
        let p = base.with_separation(d)?;
        let best = maximize_psi(&p, 1.0, 1.0)?;
        let xs: Vec<String> = best.maximizers.iter().map(|x| format!("{x:+.4}")).collect();
        println!("{d:>6.1}  {:>22}  {:>12.5e}", xs.join(", "), best.value);
    }

    // unequal weights pick one side
    println!("\nD = 8, weights (lambda1, lambda2):");
    for (l1, l2) in [(1.0, 1.0), (1.05, 1.0), (1.5, 1.0), (1.0, 0.0)] {
        let best = maximize_psi(&base, l1, l2)?;
        println!("  ({l1:.2}, {l2:.2}) -> x* = {:+.4} m", best.first());
    }

    println!("\npsi(1,1) along the corridor at D = 8:");
    for i in 0..=8 {
        let x = -4.0 + i as f64;
        let v = psi(&base, 1.0, 1.0, x);
        println!(
            "  x = {x:+.1}  {:.5e} W  {}",
            v,
            "#".repeat(((v - 2.3e-4) * 2e6).max(0.0) as usize)
        );
    }
    Ok(())
}
