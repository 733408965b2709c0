//! Common harvested power against receiver separation, balanced profile.

use wpt_trajopt::region::power_vs_distance;
use wpt_trajopt::{symmetric_optimum, SystemParams};

fn main() -> wpt_trajopt::Result<()> {
    let p = SystemParams::reference(8.0);
    let threshold = symmetric_optimum(&p).threshold;
    let rows = power_vs_distance(&p, 1.0, 16.0, 31)?;
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>10}",
        "D [m]", "static [W]", "p1 [W]", "p2 [W]", "p2 gain"
    );
    for r in &rows {
        let mark = if r.separation <= threshold { "" } else { " *" };
        println!(
            "{:>6.1} {:>12.5e} {:>12.5e} {:>12.5e} {:>9.2}%{mark}",
            r.separation,
            r.static_w,
            r.p1_w,
            r.p2_w,
            100.0 * (r.p2_w - r.static_w) / r.static_w
        );
    }
    println!("\n* beyond {threshold:.4} m the midpoint hover stops being optimal");
    Ok(())
}
