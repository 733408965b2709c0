//! Energy-region boundaries traced by sweeping the energy profile.
//!
//! Three regimes are supported: the speed-unconstrained optimum, the
//! speed-constrained hover-fly-hover design, and a UAV that never moves. The
//! last one is not a profile sweep at all: it walks the hover position across
//! the corridor and records the induced power pair.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dual::solve_p2;
use crate::error::{Error, Result};
use crate::model::{harvested_power, EnergyProfile, Receiver, SystemParams, Trajectory};
use crate::planner::solve_p1;

/// Slack used by the boundary checks, watts.
pub const CHECK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    P2,
    P1,
    Static,
}

impl Solver {
    pub const ALL: [Solver; 3] = [Solver::Static, Solver::P1, Solver::P2];

    pub fn name(self) -> &'static str {
        match self {
            Solver::P2 => "p2",
            Solver::P1 => "p1",
            Solver::Static => "static",
        }
    }
}

impl std::str::FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p2" => Ok(Solver::P2),
            "p1" => Ok(Solver::P1),
            "static" => Ok(Solver::Static),
            other => Err(Error::Config(format!(
                "unknown solver {other:?} (expected p1, p2 or static)"
            ))),
        }
    }
}

impl std::fmt::Display for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One boundary sample. Energies are averaged over the charging duration (watts).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    pub alpha1: f64,
    pub e1_avg: f64,
    pub e2_avg: f64,
    pub solver: Solver,
    pub trajectory: Option<Trajectory>,
    /// Solver diagnostic for a failed point; energies are NaN in that case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RegionPoint {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionBoundary {
    pub points: Vec<RegionPoint>,
    pub params: SystemParams,
}

impl RegionBoundary {
    fn pairs(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter(|p| p.is_ok())
            .map(|p| (p.e1_avg, p.e2_avg))
            .collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &RegionPoint> {
        self.points.iter().filter(|p| !p.is_ok())
    }

    /// Point whose `alpha1` is closest to `alpha1`.
    pub fn nearest(&self, alpha1: f64) -> Option<&RegionPoint> {
        self.points
            .iter()
            .filter(|p| p.is_ok())
            .min_by(|a, b| (a.alpha1 - alpha1).abs().total_cmp(&(b.alpha1 - alpha1).abs()))
    }
}

fn solve_point(params: &SystemParams, solver: Solver, alpha1: f64) -> RegionPoint {
    let t = params.duration();
    let outcome = EnergyProfile::from_alpha1(alpha1).and_then(|profile| match solver {
        Solver::P2 => solve_p2(params, &profile).map(|s| (s.energies, s.trajectory)),
        Solver::P1 => solve_p1(params, &profile).map(|s| (s.energies, s.trajectory)),
        Solver::Static => unreachable!("static regime sweeps positions"),
    });
    match outcome {
        Ok((e, traj)) => RegionPoint {
            alpha1,
            e1_avg: e.e1 / t,
            e2_avg: e.e2 / t,
            solver,
            trajectory: Some(traj),
            error: None,
        },
        Err(err) => RegionPoint {
            alpha1,
            e1_avg: f64::NAN,
            e2_avg: f64::NAN,
            solver,
            trajectory: None,
            error: Some(err.to_string()),
        },
    }
}

fn static_point(params: &SystemParams, x: f64) -> RegionPoint {
    let q1 = harvested_power(params, x, Receiver::One);
    let q2 = harvested_power(params, x, Receiver::Two);
    RegionPoint {
        alpha1: q1 / (q1 + q2),
        e1_avg: q1,
        e2_avg: q2,
        solver: Solver::Static,
        trajectory: Some(Trajectory::hover(x, params.duration())),
        error: None,
    }
}

/// Traces a boundary with `n` samples.
///
/// For [`Solver::P1`] and [`Solver::P2`] the samples are `alpha1 = i/(n-1)`. For
/// [`Solver::Static`] they are hover positions from `+D/2` down to `-D/2`, so that
/// the induced `alpha1` still increases along the list.
pub fn sweep(params: &SystemParams, solver: Solver, n: usize) -> Result<RegionBoundary> {
    if n < 3 {
        return Err(Error::Config(format!("a sweep needs at least 3 samples, got {n}")));
    }
    let last = (n - 1) as f64;
    let points = (0..n)
        .into_par_iter()
        .map(|i| match solver {
            Solver::Static => {
                let half = params.half_span();
                // exact endpoints and centre
                let x = half * (1.0 - 2.0 * i as f64 / last);
                static_point(params, x)
            }
            _ => solve_point(params, solver, i as f64 / last),
        })
        .collect();
    Ok(RegionBoundary {
        points,
        params: *params,
    })
}

/// Upper concave envelope of a point cloud, left to right.
fn upper_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for p in pts {
        // keep only the highest point per abscissa
        if let Some(last) = hull.last() {
            if last.0 == p.0 {
                hull.pop();
            }
        }
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Height of a left-to-right hull at `x`; `None` outside its span.
fn hull_at(hull: &[(f64, f64)], x: f64) -> Option<f64> {
    let first = hull.first()?;
    let last = hull.last()?;
    if x < first.0 || x > last.0 {
        return None;
    }
    let i = hull.partition_point(|p| p.0 < x);
    if i == 0 {
        return Some(first.1);
    }
    let (a, b) = (hull[i - 1], hull[i]);
    if b.0 == a.0 {
        return Some(a.1.max(b.1));
    }
    let w = (x - a.0) / (b.0 - a.0);
    Some(a.1 + w * (b.1 - a.1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub concave: bool,
    /// Largest vertical gap between the boundary and its upper concave envelope, watts.
    pub max_violation: f64,
    /// `alpha1` of the point attaining `max_violation`.
    pub worst_alpha1: Option<f64>,
}

/// Checks whether `e2_avg` is a concave function of `e1_avg` along the boundary,
/// i.e. whether the region below it is convex.
///
/// Every point is compared against the upper concave envelope of all points,
/// which catches dents that span many samples, not only local kinks.
pub fn check_convexity(boundary: &RegionBoundary) -> ConvexityReport {
    let pairs = boundary.pairs();
    let hull = upper_hull(pairs.clone());
    let mut max_violation = 0.0;
    let mut worst_alpha1 = None;
    for p in boundary.points.iter().filter(|p| p.is_ok()) {
        let gap = hull_at(&hull, p.e1_avg).map_or(0.0, |h| h - p.e2_avg);
        if gap > max_violation {
            max_violation = gap;
            worst_alpha1 = Some(p.alpha1);
        }
    }
    ConvexityReport {
        concave: max_violation <= CHECK_TOL,
        max_violation,
        worst_alpha1,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InclusionViolation {
    pub alpha1: f64,
    pub e1_avg: f64,
    pub e2_avg: f64,
    /// How far the point sticks out of the outer region, watts.
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub included: bool,
    pub max_excess: f64,
    pub violations: Vec<InclusionViolation>,
}

/// Largest total (joules) the regime delivers when receiver 1 must get share `alpha1`.
fn regime_objective(params: &SystemParams, solver: Solver, alpha1: f64) -> Result<f64> {
    let profile = EnergyProfile::from_alpha1(alpha1)?;
    Ok(match solver {
        Solver::P2 => solve_p2(params, &profile)?.objective,
        Solver::P1 => solve_p1(params, &profile)?.objective,
        Solver::Static => crate::oracle::static_benchmark(params, &profile, STATIC_POSITIONS).objective,
    })
}

/// Checks that every inner point is dominated by the outer region, with [`CHECK_TOL`] slack.
///
/// The first test is against the comprehensive convex hull of the outer samples.
/// Chords between samples sit slightly inside a curved boundary, so a point
/// above the hull is re-tested exactly: the outer regime is solved for the point's own
/// energy share, and the resulting boundary point dominates it iff its total is
/// at least the point's total.
pub fn check_inclusion(inner: &RegionBoundary, outer: &RegionBoundary) -> InclusionReport {
    let mut pts = outer.pairs();
    let max_e1 = pts.iter().map(|p| p.0).fold(0.0, f64::max);
    let max_e2 = pts.iter().map(|p| p.1).fold(0.0, f64::max);
    pts.push((0.0, max_e2));
    pts.push((max_e1, 0.0));
    let hull = upper_hull(pts);
    let outer_solver = outer.points.first().map(|p| p.solver);
    let t = outer.params.duration();

    let mut violations = Vec::new();
    let mut max_excess: f64 = 0.0;
    for p in inner.points.iter().filter(|p| p.is_ok()) {
        let mut excess = match hull_at(&hull, p.e1_avg) {
            Some(h) => p.e2_avg - h,
            None => (p.e1_avg - max_e1).max(p.e2_avg - max_e2),
        };
        if excess > 0.0 {
            let total = p.e1_avg + p.e2_avg;
            if let Some(solver) = outer_solver {
                if let Ok(best) = regime_objective(&outer.params, solver, p.e1_avg / total) {
                    excess = excess.min(total - best / t);
                }
            }
        }
        max_excess = max_excess.max(excess);
        if excess > CHECK_TOL {
            violations.push(InclusionViolation {
                alpha1: p.alpha1,
                e1_avg: p.e1_avg,
                e2_avg: p.e2_avg,
                excess,
            });
        }
    }
    InclusionReport {
        included: violations.is_empty(),
        max_excess,
        violations,
    }
}

/// Largest pointwise distance between two boundaries sampled on the same grid.
pub fn max_pointwise_gap(a: &RegionBoundary, b: &RegionBoundary) -> f64 {
    a.points
        .iter()
        .zip(&b.points)
        .map(|(p, q)| (p.e1_avg - q.e1_avg).abs().max((p.e2_avg - q.e2_avg).abs()))
        .fold(0.0, f64::max)
}

/// Largest violation of "e1 nondecreasing, e2 nonincreasing" along the list, watts.
pub fn monotonicity_violation(boundary: &RegionBoundary) -> f64 {
    let ok: Vec<&RegionPoint> = boundary.points.iter().filter(|p| p.is_ok()).collect();
    ok.windows(2)
        .map(|w| (w[0].e1_avg - w[1].e1_avg).max(w[1].e2_avg - w[0].e2_avg))
        .fold(0.0, f64::max)
}

/// Common average power delivered to both receivers under the balanced profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceRow {
    pub separation: f64,
    pub static_w: f64,
    pub p1_w: f64,
    pub p2_w: f64,
}

/// Hover positions tried by the static benchmark; odd, so the midpoint is on the grid.
pub const STATIC_POSITIONS: usize = 100_001;

/// Balanced-profile power for `n` separations evenly spaced on `[d_min, d_max]`.
pub fn power_vs_distance(params: &SystemParams, d_min: f64, d_max: f64, n: usize) -> Result<Vec<DistanceRow>> {
    if !(d_min >= 0.0 && d_max > d_min && d_max.is_finite()) {
        return Err(Error::Config(format!(
            "need 0 <= d-min < d-max, got [{d_min}, {d_max}]"
        )));
    }
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 samples, got {n}")));
    }
    let profile = EnergyProfile::balanced();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let d = d_min + (d_max - d_min) * i as f64 / (n - 1) as f64;
            let p = params.with_separation(d)?;
            let t = p.duration();
            // the common power is what the weaker receiver gets
            let common = |e: crate::model::EnergyPair| e.e1.min(e.e2) / t;
            let st = crate::oracle::static_benchmark(&p, &profile, STATIC_POSITIONS);
            Ok(DistanceRow {
                separation: d,
                static_w: common(st.energies),
                p1_w: common(solve_p1(&p, &profile)?.energies),
                p2_w: common(solve_p2(&p, &profile)?.energies),
            })
        })
        .collect()
}

pub fn write_distance_csv<W: Write>(rows: &[DistanceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["D_m", "static_W", "p1_W", "p2_W"])?;
    for r in rows {
        w.write_record([r.separation, r.static_w, r.p1_w, r.p2_w].map(|v| format!("{v:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `alpha1, e1_avg_W, e2_avg_W, solver, trajectory_json`; numbers keep 17 significant digits.
pub fn write_csv<W: Write>(boundary: &RegionBoundary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha1", "e1_avg_W", "e2_avg_W", "solver", "trajectory_json"])?;
    for p in &boundary.points {
        let traj = match &p.trajectory {
            Some(t) => serde_json::to_string(t)?,
            None => String::new(),
        };
        w.write_record([
            format!("{:.16e}", p.alpha1),
            format!("{:.16e}", p.e1_avg),
            format!("{:.16e}", p.e2_avg),
            p.solver.name().to_string(),
            traj,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(boundary: &RegionBoundary, path: &Path) -> Result<()> {
    write_csv(boundary, std::fs::File::create(path)?)
}
