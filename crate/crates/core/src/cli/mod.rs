//! Command-line front end.
//!
//! Argument types live here so the binary stays a one-liner and the commands
//! can be driven from tests. Every command that writes data files also writes a
//! run manifest describing how they were produced.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or config error,
//! 3 solver diagnostic.

mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::config::{load_scenario, Scenario};
use crate::dual::{solve_p2, DualPoint};
use crate::error::{Error, Result};
use crate::model::{EnergyPair, EnergyProfile, SpeedLimit, SystemParams, Trajectory};
use crate::oracle::{static_benchmark, DpConfig};
use crate::planner::{solve_p1, Exactness, HoverFlyHoverPlan, P1Branch};
use crate::region::{
    check_convexity, check_inclusion, max_pointwise_gap, monotonicity_violation, power_vs_distance, sweep,
    write_csv_file, write_distance_csv, RegionBoundary, Solver, CHECK_TOL, STATIC_POSITIONS,
};

pub use verify::{run_suites, CheckRow, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// Environment variable capping the worker-thread count (0 = one per core).
pub const THREADS_ENV: &str = "WPT_TRAJOPT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "wpt-trajopt",
    version,
    about = "UAV trajectories for two-receiver wireless power transfer"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one energy profile and write the trajectory and energies as JSON.
    Solve(SolveArgs),
    /// Sweep the energy profile and write boundary CSVs plus a convexity/inclusion report.
    Region(RegionArgs),
    /// Cross-check the solvers against the brute-force oracles.
    Verify(VerifyArgs),
    /// Balanced-profile harvested power versus receiver separation.
    PowerVsDistance(DistanceArgs),
}

/// Flag overrides applied on top of the scenario file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Receiver separation D, meters.
    #[arg(long = "d-m")]
    pub separation: Option<f64>,
    /// Charging duration T, seconds.
    #[arg(long = "t-s")]
    pub duration: Option<f64>,
    /// Maximum speed V, m/s, or "inf".
    #[arg(long = "v-mps")]
    pub max_speed: Option<String>,
}

impl Overrides {
    fn apply(&self, mut params: SystemParams) -> Result<SystemParams> {
        if let Some(d) = self.separation {
            params = params.with_separation(d)?;
        }
        if let Some(t) = self.duration {
            params = params.with_duration(t)?;
        }
        if let Some(v) = &self.max_speed {
            let limit = if v.eq_ignore_ascii_case("inf") {
                SpeedLimit::Unbounded
            } else {
                let v: f64 = v
                    .parse()
                    .map_err(|_| Error::Config(format!("--v-mps: expected a number or \"inf\", got {v:?}")))?;
                SpeedLimit::Bounded(v)
            };
            params = params.with_max_speed(limit)?;
        }
        Ok(params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    P1,
    P2,
    Static,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::P1 => Solver::P1,
            SolverArg::P2 => Solver::P2,
            SolverArg::Static => Solver::Static,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Scenario JSON file.
    pub config: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub alpha1: f64,
    #[arg(long, value_enum, default_value_t = SolverArg::P1)]
    pub solver: SolverArg,
    /// Output JSON file; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    pub config: PathBuf,
    /// Comma-separated subset of p1, p2, static.
    #[arg(long, value_delimiter = ',', default_values = ["static", "p1", "p2"])]
    pub solvers: Vec<SolverArg>,
    #[arg(long, default_value_t = 101)]
    pub n_alpha: usize,
    /// Hover positions sampled for the static locus.
    #[arg(long, default_value_t = 401)]
    pub n_static: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub config: PathBuf,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Seed for the randomized draws.
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Random draws per property.
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    /// Position step of the dynamic-programming oracle, meters.
    #[arg(long, default_value_t = DpConfig::default().dx)]
    pub dx: f64,
    /// Time step of the dynamic-programming oracle, seconds.
    #[arg(long, default_value_t = DpConfig::default().dt)]
    pub dt: f64,
    /// Optional JSON report (a manifest is written next to it).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    pub config: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub d_min: f64,
    #[arg(long, default_value_t = 16.0)]
    pub d_max: f64,
    #[arg(long, default_value_t = 31)]
    pub n: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub overrides: Overrides,
}

/// Provenance record written next to every data file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub scenario: Scenario,
    pub params: SystemParams,
    pub options: serde_json::Value,
    pub outputs: Vec<PathBuf>,
    pub wall_clock_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunManifest {
    fn write(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }
}

/// JSON document written by `solve`.
#[derive(Debug, Clone, Serialize)]
pub struct SolveOutcome {
    pub solver: Solver,
    pub alpha1: f64,
    pub alpha2: f64,
    pub trajectory: Trajectory,
    pub energies: EnergyPair,
    /// Largest total the profile constraints support, joules.
    pub objective: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<HoverFlyHoverPlan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<P1Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exactness: Option<Exactness>,
}

pub fn solve(params: &SystemParams, profile: &EnergyProfile, solver: Solver) -> Result<SolveOutcome> {
    let base = |trajectory, energies, objective| SolveOutcome {
        solver,
        alpha1: profile.alpha1(),
        alpha2: profile.alpha2(),
        trajectory,
        energies,
        objective,
        dual: None,
        dual_value: None,
        tau: None,
        plan: None,
        branch: None,
        exactness: None,
    };
    Ok(match solver {
        Solver::P2 => {
            let s = solve_p2(params, profile)?;
            SolveOutcome {
                dual: Some(s.dual),
                dual_value: Some(s.dual_value),
                tau: s.tau,
                ..base(s.trajectory, s.energies, s.objective)
            }
        }
        Solver::P1 => {
            let s = solve_p1(params, profile)?;
            SolveOutcome {
                plan: s.plan,
                branch: Some(s.branch),
                exactness: Some(s.exactness),
                ..base(s.trajectory, s.energies, s.objective)
            }
        }
        Solver::Static => {
            let s = static_benchmark(params, profile, STATIC_POSITIONS);
            base(Trajectory::hover(s.x, params.duration()), s.energies, s.objective)
        }
    })
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TimeSharing { .. } | Error::NoFeasiblePlan { .. } => EXIT_SOLVER,
        _ => EXIT_USAGE,
    }
}

/// Sizes the global worker pool from [`THREADS_ENV`]. Only the first call has an effect.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a non-negative integer, got {raw:?}")))?;
    // an already-initialized pool is not an error worth surfacing
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Region(a) => cmd_region(a),
        Command::Verify(a) => cmd_verify(a),
        Command::PowerVsDistance(a) => cmd_power_vs_distance(a),
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn load(config: &Path, overrides: &Overrides) -> Result<(Scenario, SystemParams)> {
    let (scenario, params) = load_scenario(config)?;
    Ok((scenario, overrides.apply(params)?))
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut f = fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    Ok(())
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

pub fn cmd_solve(args: &SolveArgs) -> Result<i32> {
    let start = Instant::now();
    let (scenario, params) = load(&args.config, &args.overrides)?;
    let profile = EnergyProfile::from_alpha1(args.alpha1)?;
    let outcome = solve(&params, &profile, args.solver.into())?;
    match &args.out {
        None => println!("{}", serde_json::to_string_pretty(&outcome)?),
        Some(out) => {
            write_json(out, &outcome)?;
            RunManifest {
                command: "solve".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                scenario,
                params,
                options: json!({ "alpha1": args.alpha1, "solver": Solver::from(args.solver) }),
                outputs: vec![out.clone()],
                wall_clock_s: start.elapsed().as_secs_f64(),
                seed: None,
            }
            .write(&manifest_path(out))?;
            println!(
                "E1 = {:.6e} J, E2 = {:.6e} J -> {}",
                outcome.energies.e1,
                outcome.energies.e2,
                out.display()
            );
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundarySummary {
    pub solver: Solver,
    pub points: usize,
    pub failed: usize,
    pub concave: bool,
    pub max_concavity_violation_w: f64,
    pub max_monotonicity_violation_w: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InclusionSummary {
    pub inner: Solver,
    pub outer: Solver,
    pub included: bool,
    pub max_excess_w: f64,
}

/// Combined verdicts for a set of boundaries traced on one scenario.
#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub separation_m: f64,
    pub threshold_m: f64,
    pub boundaries: Vec<BoundarySummary>,
    pub inclusions: Vec<InclusionSummary>,
    /// Largest pointwise P1-vs-P2 difference over the shared profile grid, watts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1_p2_max_gap_w: Option<f64>,
    /// Every P2 point is a single hover, so a static UAV achieves the same boundary.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2_static_achievable: Option<bool>,
    /// `P1 == P2` pointwise and both are reachable by a static UAV.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime_independent: Option<bool>,
    /// Strict ordering static < P1 < P2 of the common power at the balanced profile.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced_chain_w: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_chain: Option<bool>,
}

/// Builds the region report from whichever boundaries are present.
pub fn region_report(params: &SystemParams, boundaries: &[RegionBoundary]) -> RegionReport {
    let find = |s: Solver| {
        boundaries
            .iter()
            .find(|b| b.points.first().map(|p| p.solver) == Some(s))
    };
    let summaries = boundaries
        .iter()
        .filter_map(|b| {
            let solver = b.points.first()?.solver;
            let conv = check_convexity(b);
            Some(BoundarySummary {
                solver,
                points: b.points.len(),
                failed: b.failures().count(),
                concave: conv.concave,
                max_concavity_violation_w: conv.max_violation,
                max_monotonicity_violation_w: monotonicity_violation(b),
            })
        })
        .collect();

    let mut inclusions = Vec::new();
    for (inner, outer) in [
        (Solver::Static, Solver::P1),
        (Solver::P1, Solver::P2),
        (Solver::Static, Solver::P2),
    ] {
        if let (Some(i), Some(o)) = (find(inner), find(outer)) {
            let r = check_inclusion(i, o);
            inclusions.push(InclusionSummary {
                inner,
                outer,
                included: r.included,
                max_excess_w: r.max_excess,
            });
        }
    }

    let p1 = find(Solver::P1);
    let p2 = find(Solver::P2);
    let st = find(Solver::Static);
    let p1_p2_max_gap_w = p1.zip(p2).map(|(a, b)| max_pointwise_gap(a, b));
    let p2_static_achievable = p2.map(|b| {
        b.points
            .iter()
            .all(|p| p.trajectory.as_ref().is_some_and(|t| t.segments().len() == 1))
    });
    let regime_independent = match (p1_p2_max_gap_w, p2_static_achievable) {
        (Some(gap), Some(st)) => Some(gap <= CHECK_TOL && st),
        _ => None,
    };
    let common = |b: &RegionBoundary| b.nearest(0.5).map(|p| p.e1_avg.min(p.e2_avg));
    let balanced_chain_w = match (st.and_then(common), p1.and_then(common), p2.and_then(common)) {
        (Some(a), Some(b), Some(c)) => Some([a, b, c]),
        _ => None,
    };
    let strict_chain = balanced_chain_w.map(|[a, b, c]| a < b && b < c && inclusions.iter().all(|i| i.included));

    RegionReport {
        separation_m: params.separation(),
        threshold_m: crate::psi::symmetric_threshold(params),
        boundaries: summaries,
        inclusions,
        p1_p2_max_gap_w,
        p2_static_achievable,
        regime_independent,
        balanced_chain_w,
        strict_chain,
    }
}

pub fn cmd_region(args: &RegionArgs) -> Result<i32> {
    let start = Instant::now();
    let (scenario, params) = load(&args.config, &args.overrides)?;
    fs::create_dir_all(&args.out_dir)?;
    let mut solvers: Vec<Solver> = args.solvers.iter().map(|&s| s.into()).collect();
    solvers.dedup();

    let mut boundaries = Vec::new();
    let mut outputs = Vec::new();
    for &solver in &solvers {
        let n = if solver == Solver::Static {
            args.n_static
        } else {
            args.n_alpha
        };
        let b = sweep(&params, solver, n)?;
        for p in b.failures() {
            log::warn!(
                "{solver} point alpha1 = {} failed: {}",
                p.alpha1,
                p.error.as_deref().unwrap_or("")
            );
        }
        let csv_path = args.out_dir.join(format!("region_{solver}.csv"));
        let json_path = args.out_dir.join(format!("region_{solver}.json"));
        write_csv_file(&b, &csv_path)?;
        write_json(&json_path, &b)?;
        outputs.push(csv_path);
        outputs.push(json_path);
        boundaries.push(b);
    }

    let report = region_report(&params, &boundaries);
    let report_path = args.out_dir.join("report.json");
    write_json(&report_path, &report)?;
    outputs.push(report_path);
    print_region_report(&report);

    RunManifest {
        command: "region".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario,
        params,
        options: json!({ "solvers": solvers, "n_alpha": args.n_alpha, "n_static": args.n_static }),
        outputs,
        wall_clock_s: start.elapsed().as_secs_f64(),
        seed: None,
    }
    .write(&args.out_dir.join("manifest.json"))?;
    Ok(EXIT_OK)
}

fn print_region_report(r: &RegionReport) {
    println!("D = {} m (threshold {:.4} m)", r.separation_m, r.threshold_m);
    for b in &r.boundaries {
        println!(
            "  {:<6} {:>4} points  {}  (max violation {:.3e} W)",
            b.solver.name(),
            b.points,
            if b.concave {
                "convex region"
            } else {
                "non-convex region"
            },
            b.max_concavity_violation_w
        );
    }
    for i in &r.inclusions {
        println!(
            "  {} inside {}: {} (max excess {:.3e} W)",
            i.inner, i.outer, i.included, i.max_excess_w
        );
    }
    if let Some(ind) = r.regime_independent {
        println!("  p1 = p2 = static boundary: {ind}");
    }
    if let (Some([a, b, c]), Some(strict)) = (r.balanced_chain_w, r.strict_chain) {
        println!("  balanced profile: static {a:.5e} < p1 {b:.5e} < p2 {c:.5e} W: {strict}");
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let start = Instant::now();
    let (scenario, params) = load(&args.config, &args.overrides)?;
    let opts = VerifyOptions {
        seed: args.seed,
        draws: args.draws,
        dp: DpConfig {
            dx: args.dx,
            dt: args.dt,
            ..DpConfig::default()
        },
    };
    let rows = run_suites(&params, args.suite, &opts)?;
    verify::print_table(&rows);
    let failed: Vec<&CheckRow> = rows.iter().filter(|r| !r.passed).collect();
    if let Some(out) = &args.out {
        write_json(out, &rows)?;
        RunManifest {
            command: "verify".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            scenario,
            params,
            options: json!({ "suite": args.suite, "draws": args.draws, "dx": args.dx, "dt": args.dt }),
            outputs: vec![out.clone()],
            wall_clock_s: start.elapsed().as_secs_f64(),
            seed: Some(args.seed),
        }
        .write(&manifest_path(out))?;
    }
    if failed.is_empty() {
        println!("all {} checks passed (seed {})", rows.len(), args.seed);
        Ok(EXIT_OK)
    } else {
        for r in &failed {
            eprintln!(
                "FAILED {}: {} = {:.3e} > {:.1e}",
                r.suite, r.check, r.measured, r.tolerance
            );
        }
        Ok(EXIT_VERIFY)
    }
}

pub fn cmd_power_vs_distance(args: &DistanceArgs) -> Result<i32> {
    let start = Instant::now();
    let (scenario, params) = load(&args.config, &args.overrides)?;
    let rows = power_vs_distance(&params, args.d_min, args.d_max, args.n)?;
    write_distance_csv(&rows, fs::File::create(&args.out)?)?;
    RunManifest {
        command: "power-vs-distance".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario,
        params,
        options: json!({ "d_min": args.d_min, "d_max": args.d_max, "n": args.n, "alpha1": 0.5 }),
        outputs: vec![args.out.clone()],
        wall_clock_s: start.elapsed().as_secs_f64(),
        seed: None,
    }
    .write(&manifest_path(&args.out))?;
    println!("{} rows -> {}", rows.len(), args.out.display());
    Ok(EXIT_OK)
}
