use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dual::{dual_function, fairness_error, solve_dual, solve_p2, DualPoint};
use crate::error::Result;
use crate::model::{trajectory_energy, EnergyProfile, Receiver, Segment, SystemParams, Trajectory};
use crate::oracle::{
    dp_p1, ellipsoid_dual, grid_max_psi, quadrature_energy, static_benchmark, DpConfig, GRID_POINTS, QUADRATURE_STEPS,
};
use crate::planner::solve_p1;
use crate::psi::{maximize_psi, symmetric_optimum};

pub const DEFAULT_SEED: u64 = 0x5eed_2017;

const PSI_POSITION_TOL: f64 = 1e-3;
const PSI_VALUE_TOL: f64 = 1e-8;
const DUALITY_TOL: f64 = 1e-6;
const ELLIPSOID_TOL: f64 = 1e-4;
const ELLIPSOID_ITERS: usize = 2_000;
const QUADRATURE_TOL: f64 = 1e-8;
const DP_TOL: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Psi,
    Duality,
    Quadrature,
    Dp,
    All,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub draws: usize,
    pub dp: DpConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            draws: 100,
            dp: DpConfig::default(),
        }
    }
}

/// One line of the verification table.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn row(suite: &'static str, check: impl Into<String>, measured: f64, tolerance: f64) -> CheckRow {
    CheckRow {
        suite,
        check: check.into(),
        measured,
        tolerance,
        passed: measured <= tolerance,
        note: None,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

pub fn run_suites(params: &SystemParams, suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Psi {
        rows.extend(psi_suite(params, opts)?);
    }
    if all || suite == Suite::Duality {
        rows.extend(duality_suite(params, opts)?);
    }
    if all || suite == Suite::Quadrature {
        rows.extend(quadrature_suite(params, opts)?);
    }
    if all || suite == Suite::Dp {
        rows.extend(dp_suite(params, opts)?);
    }
    Ok(rows)
}

fn psi_suite(params: &SystemParams, opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let sym = symmetric_optimum(params);
    let (gx, gv) = grid_max_psi(params, 1.0, 1.0, GRID_POINTS);
    let closed = maximize_psi(params, 1.0, 1.0)?;
    let x_closed = sym.xi.unwrap_or(0.0);
    rows.push(row(
        "psi",
        "equal weights: closed-form offset vs grid argmax [m]",
        (gx.abs() - x_closed).abs(),
        PSI_POSITION_TOL,
    ));
    rows.push(row(
        "psi",
        "equal weights: max value vs grid [rel]",
        rel(closed.value, gv),
        PSI_VALUE_TOL,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut worst_x, mut worst_v) = (0.0f64, 0.0f64);
    for _ in 0..opts.draws {
        let d = rng.random_range(0.5..20.0);
        let h = rng.random_range(1.0..10.0);
        let l1 = rng.random_range(0.01..1.0);
        let l2 = rng.random_range(0.01..1.0);
        let p = SystemParams::new(
            h,
            d,
            params.tx_power(),
            params.efficiency(),
            params.ref_gain(),
            params.duration(),
            params.max_speed(),
        )?;
        let best = maximize_psi(&p, l1, l2)?;
        let (gx, gv) = grid_max_psi(&p, l1, l2, GRID_POINTS);
        let dx = best
            .maximizers
            .iter()
            .map(|x| (x - gx).abs())
            .fold(f64::INFINITY, f64::min);
        worst_x = worst_x.max(dx);
        worst_v = worst_v.max(rel(best.value, gv));
    }
    rows.push(row(
        "psi",
        format!("{} random draws: argmax vs grid [m]", opts.draws),
        worst_x,
        PSI_POSITION_TOL,
    ));
    rows.push(row(
        "psi",
        format!("{} random draws: max value vs grid [rel]", opts.draws),
        worst_v,
        PSI_VALUE_TOL,
    ));
    Ok(rows)
}

fn duality_suite(params: &SystemParams, opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut gap = 0.0f64;
    let mut fair = 0.0f64;
    for i in 0..=100 {
        let profile = EnergyProfile::from_alpha1(i as f64 / 100.0)?;
        let sol = solve_p2(params, &profile)?;
        gap = gap.max(sol.duality_gap());
        if sol.dual.lambda1 > 0.0 && sol.dual.lambda2 > 0.0 {
            fair = fair.max(fairness_error(&profile, sol.energies));
        }
    }
    let mut rows = vec![
        row(
            "duality",
            "101-point profile grid: |dual - primal| / primal",
            gap,
            DUALITY_TOL,
        ),
        row(
            "duality",
            "101-point profile grid: energy share vs profile [rel]",
            fair,
            DUALITY_TOL,
        ),
    ];

    let mut worst = 0.0f64;
    for a1 in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let profile = EnergyProfile::from_alpha1(a1)?;
        let dp = solve_dual(params, &profile)?;
        let (value, _) = dual_function(params, &dp)?;
        let ell = ellipsoid_dual(params, &profile, ELLIPSOID_ITERS);
        worst = worst.max(rel(ell.value, value));
    }
    rows.push(row(
        "duality",
        "ellipsoid vs line search dual value [rel]",
        worst,
        ELLIPSOID_TOL,
    ));

    // weak duality at random feasible multipliers
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xd0a1);
    let mut violation = 0.0f64;
    for _ in 0..opts.draws {
        let profile = EnergyProfile::from_alpha1(rng.random_range(0.01..0.99))?;
        let u = rng.random_range(0.0..1.0 / profile.alpha1());
        let (value, _) = dual_function(params, &DualPoint::on_segment(&profile, u))?;
        let primal = solve_p2(params, &profile)?.objective;
        violation = violation.max((primal - value) / primal);
    }
    rows.push(row(
        "duality",
        format!("{} random multipliers: primal above dual [rel]", opts.draws),
        violation,
        1e-12,
    ));
    Ok(rows)
}

fn quadrature_suite(params: &SystemParams, opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let sol = solve_p1(params, &EnergyProfile::balanced())?;
    let mut worst = 0.0f64;
    for k in Receiver::BOTH {
        let q = quadrature_energy(params, &sol.trajectory, k, QUADRATURE_STEPS);
        worst = worst.max(rel(q, trajectory_energy(params, &sol.trajectory, k)));
    }
    rows.push(row(
        "quadrature",
        "balanced speed-limited trajectory: closed form vs trapezoid [rel]",
        worst,
        QUADRATURE_TOL,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x0a0d);
    let half = params.half_span().max(0.5);
    let mut worst = 0.0f64;
    for _ in 0..opts.draws {
        let a = rng.random_range(-half..half);
        let b = rng.random_range(-half..half);
        let speed = rng.random_range(1.0..20.0);
        let traj = Trajectory::new(vec![Segment::Fly {
            x_start: a,
            x_end: b,
            speed,
        }])?;
        for k in Receiver::BOTH {
            let exact = trajectory_energy(params, &traj, k);
            if exact > 0.0 {
                worst = worst.max(rel(quadrature_energy(params, &traj, k, QUADRATURE_STEPS), exact));
            }
        }
    }
    rows.push(row(
        "quadrature",
        format!("{} random flights: closed form vs trapezoid [rel]", opts.draws),
        worst,
        QUADRATURE_TOL,
    ));
    Ok(rows)
}

fn dp_suite(params: &SystemParams, opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let profile = EnergyProfile::balanced();
    let dp = dp_p1(params, &profile, &opts.dp)?;
    if dp.degenerate {
        // the grid admits no motion, so the only meaningful comparison is the static search
        let d = params.separation();
        let n = if d == 0.0 {
            2
        } else {
            ((d / opts.dp.dx).round() as usize).max(1) + 1
        };
        let st = static_benchmark(params, &profile, n);
        let mut r = row(
            "dp",
            "degenerate grid: dp vs static search on the same grid [rel]",
            rel(dp.objective, st.objective),
            1e-12,
        );
        r.note = Some(format!(
            "dx = {} m, dt = {} s allow no movement at V = {}; search degenerated to static hovering",
            opts.dp.dx,
            opts.dp.dt,
            params.max_speed()
        ));
        return Ok(vec![r]);
    }
    let p1 = solve_p1(params, &profile)?;
    Ok(vec![row(
        "dp",
        format!(
            "balanced profile: dp (dx {} m, dt {} s) vs planner total [rel]",
            opts.dp.dx, opts.dp.dt
        ),
        rel(dp.energies.total(), p1.energies.total()),
        DP_TOL,
    )])
}

pub fn print_table(rows: &[CheckRow]) {
    println!(
        "{:<11} {:<72} {:>11} {:>9}  result",
        "suite", "check", "measured", "tol"
    );
    for r in rows {
        println!(
            "{:<11} {:<72} {:>11.3e} {:>9.1e}  {}",
            r.suite,
            r.check,
            r.measured,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        );
        if let Some(note) = &r.note {
            println!("{:<11} warning: {note}", "");
        }
    }
}
