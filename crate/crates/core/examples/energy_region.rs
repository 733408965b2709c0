//! Traces the achievable energy-region boundaries and checks their shape.
//!
//! Usage: `cargo run --example energy_region -- [D_m] [out_dir]`

use std::path::PathBuf;

use wpt_trajopt::cli::region_report;
use wpt_trajopt::region::{check_convexity, write_csv_file};
use wpt_trajopt::{sweep, Solver, SystemParams};

fn main() -> wpt_trajopt::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: f64 = args
        .next()
        .map(|s| s.parse().expect("D_m must be a number"))
        .unwrap_or(8.0);
    let out = args.next().map(PathBuf::from);
    let p = SystemParams::reference(d);

    let mut boundaries = Vec::new();
    for solver in Solver::ALL {
        let n = if solver == Solver::Static { 401 } else { 101 };
        let b = sweep(&p, solver, n)?;
        let c = check_convexity(&b);
        println!(
            "{:<6} concave: {:<5} worst gap {:.2e} W at alpha1 = {:.3}",
            solver.name(),
            c.concave,
            c.max_violation,
            c.worst_alpha1.unwrap_or(f64::NAN)
        );
        if let Some(dir) = &out {
            std::fs::create_dir_all(dir)?;
            write_csv_file(&b, &dir.join(format!("region_{solver}.csv")))?;
        }
        boundaries.push(b);
    }

    let report = region_report(&p, &boundaries);
    println!("\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
