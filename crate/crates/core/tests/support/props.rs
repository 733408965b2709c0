//! Seeded property battery. Each property draws its own scenarios from the
//! generator it is handed and returns the first counterexample it finds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use wpt_trajopt::dual::{dual_function, fairness_error, solve_p2, DualPoint};
use wpt_trajopt::model::{
    harvested_power, max_speed_feasible, trajectory_energy, EnergyProfile, Receiver, Segment, SpeedLimit, SystemParams,
    Trajectory,
};
use wpt_trajopt::oracle::{dp_p1, grid_max_psi, quadrature_energy, static_benchmark, DpConfig};
use wpt_trajopt::planner::solve_p1;
use wpt_trajopt::psi::{maximize_psi, psi, stationarity_numerator, symmetric_optimum, symmetric_threshold};
use wpt_trajopt::region::{monotonicity_violation, sweep, Solver, CHECK_TOL};

pub type Property = fn(&mut ChaCha8Rng, usize) -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {{
        // NaN must fail, so no negated comparison rewrites
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($arg)+));
        }
    }};
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

/// Reference power chain with a random geometry.
fn scenario(rng: &mut ChaCha8Rng) -> SystemParams {
    let h = rng.random_range(1.0..10.0);
    let d = rng.random_range(0.0..4.0 * h);
    let t = rng.random_range(0.2..5.0);
    let v = rng.random_range(0.5..30.0);
    SystemParams::new(h, d, 10.0, 0.5, 1e-3, t, SpeedLimit::Bounded(v)).unwrap()
}

fn receiver(rng: &mut ChaCha8Rng) -> Receiver {
    if rng.random_bool(0.5) {
        Receiver::One
    } else {
        Receiver::Two
    }
}

fn fly(rng: &mut ChaCha8Rng, p: &SystemParams) -> Trajectory {
    let half = p.half_span().max(0.5);
    let a = rng.random_range(-half..half);
    let b = rng.random_range(-half..half);
    let speed = rng.random_range(1.0..20.0);
    Trajectory::new(vec![Segment::Fly {
        x_start: a,
        x_end: b,
        speed,
    }])
    .unwrap()
}

// ---- model ---------------------------------------------------------------

pub fn power_mirror_symmetry(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let x = rng.random_range(-3.0 * p.half_span() - 1.0..3.0 * p.half_span() + 1.0);
        let (a, b) = (
            harvested_power(&p, x, Receiver::One),
            harvested_power(&p, -x, Receiver::Two),
        );
        ensure!(rel(a, b) <= 1e-12, "Q1({x}) = {a:e} but Q2({}) = {b:e} under {p:?}", -x);
    }
    Ok(())
}

pub fn energy_additive_over_concatenation(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let first = fly(rng, &p);
        let end = first.segments()[0].end();
        let rest = Trajectory::hover(end, rng.random_range(0.0..2.0));
        let both = first.clone().concat(&rest);
        let k = receiver(rng);
        let sum = trajectory_energy(&p, &first, k) + trajectory_energy(&p, &rest, k);
        let whole = trajectory_energy(&p, &both, k);
        ensure!(rel(whole, sum) <= 1e-13, "concatenation {whole:e} vs parts {sum:e}");
    }
    Ok(())
}

pub fn flight_closed_form_matches_quadrature(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    let cases: Vec<(SystemParams, Trajectory, Receiver)> = (0..draws)
        .map(|_| {
            let p = scenario(rng);
            let t = fly(rng, &p);
            (p, t, receiver(rng))
        })
        .collect();
    cases.par_iter().try_for_each(|(p, traj, k)| {
        let exact = trajectory_energy(p, traj, *k);
        if exact == 0.0 {
            return Ok(());
        }
        let q = quadrature_energy(p, traj, *k, 100_000);
        ensure!(
            rel(q, exact) <= 1e-8,
            "closed form {exact:e} vs trapezoid {q:e} for {traj:?}"
        );
        Ok(())
    })
}

pub fn power_decreases_with_offset(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let k = receiver(rng);
        let xk = p.receiver_position(k);
        let near = rng.random_range(0.0..10.0);
        let far = near + rng.random_range(1e-6..10.0);
        let side = |s: bool| if s { 1.0 } else { -1.0 };
        let a = harvested_power(&p, xk + side(rng.random_bool(0.5)) * near, k);
        let b = harvested_power(&p, xk + side(rng.random_bool(0.5)) * far, k);
        ensure!(a > b, "offset {near} gives {a:e}, offset {far} gives {b:e}");
    }
    Ok(())
}

// ---- psi -----------------------------------------------------------------

fn weights(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (rng.random_range(0.01..1.0), rng.random_range(0.01..1.0))
}

pub fn psi_matches_grid_oracle(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    let cases: Vec<(SystemParams, f64, f64)> = (0..draws)
        .map(|_| {
            let mut p = scenario(rng);
            p = p.with_separation(rng.random_range(0.5..20.0)).unwrap();
            let (l1, l2) = weights(rng);
            (p, l1, l2)
        })
        .collect();
    cases.par_iter().try_for_each(|(p, l1, l2)| {
        let best = maximize_psi(p, *l1, *l2).map_err(|e| e.to_string())?;
        let (gx, gv) = grid_max_psi(p, *l1, *l2, 100_000);
        let dx = best
            .maximizers
            .iter()
            .map(|x| (x - gx).abs())
            .fold(f64::INFINITY, f64::min);
        ensure!(
            dx <= 1e-3,
            "argmax {:?} vs grid {gx} at lambda ({l1}, {l2}), {p:?}",
            best.maximizers
        );
        ensure!(rel(best.value, gv) <= 1e-8, "max {:e} vs grid {gv:e}", best.value);
        Ok(())
    })
}

pub fn psi_equal_weights_symmetric(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let w = rng.random_range(0.01..2.0);
        let best = maximize_psi(&p, w, w).map_err(|e| e.to_string())?;
        let xs = &best.maximizers;
        let mirrored: Vec<f64> = xs.iter().rev().map(|x| -x).collect();
        for (a, b) in xs.iter().zip(&mirrored) {
            ensure!(
                (a - b).abs() <= 1e-9 * p.separation().max(1.0),
                "maximizers {xs:?} not symmetric, {p:?}"
            );
        }
        match symmetric_optimum(&p).xi {
            Some(xi) => ensure!(
                xs.len() == 2 && (xs[1] - xi).abs() <= 1e-9,
                "expected +-{xi}, got {xs:?}"
            ),
            None => ensure!(xs == &[0.0], "expected {{0}}, got {xs:?}"),
        }
    }
    Ok(())
}

pub fn psi_maximizer_on_heavier_side(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let (l1, l2) = weights(rng);
        if l1 == l2 {
            continue;
        }
        let best = maximize_psi(&p, l1, l2).map_err(|e| e.to_string())?;
        for &x in &best.maximizers {
            if l1 > l2 {
                ensure!(x <= 0.0, "lambda1 > lambda2 but maximizer {x} > 0, {p:?}");
            } else {
                ensure!(x >= 0.0, "lambda1 < lambda2 but maximizer {x} < 0, {p:?}");
            }
        }
    }
    Ok(())
}

pub fn psi_stationary_points_below_max(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let (l1, l2) = weights(rng);
        let best = maximize_psi(&p, l1, l2).map_err(|e| e.to_string())?;
        let half = p.half_span();
        let n = 4096;
        let xs: Vec<f64> = (0..=n).map(|i| -half + 2.0 * half * i as f64 / n as f64).collect();
        for w in xs.windows(2) {
            let (mut a, mut b) = (w[0], w[1]);
            let (fa, fb) = (
                stationarity_numerator(&p, l1, l2, a),
                stationarity_numerator(&p, l1, l2, b),
            );
            if fa.signum() == fb.signum() {
                continue;
            }
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if stationarity_numerator(&p, l1, l2, m).signum() == fa.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            let v = psi(&p, l1, l2, 0.5 * (a + b));
            ensure!(
                v <= best.value * (1.0 + 1e-12),
                "stationary value {v:e} exceeds max {:e}",
                best.value
            );
        }
    }
    Ok(())
}

// ---- p2 ------------------------------------------------------------------

fn profile(rng: &mut ChaCha8Rng) -> EnergyProfile {
    EnergyProfile::from_alpha1(rng.random_range(0.0..=1.0)).unwrap()
}

pub fn weak_duality(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let prof = EnergyProfile::from_alpha1(rng.random_range(0.01..0.99)).unwrap();
        let primal = solve_p2(&p, &prof).map_err(|e| e.to_string())?.objective;
        for _ in 0..50 {
            let u = rng.random_range(0.0..=1.0 / prof.alpha1());
            let (value, _) = dual_function(&p, &DualPoint::on_segment(&prof, u)).map_err(|e| e.to_string())?;
            ensure!(
                value >= primal * (1.0 - 1e-12),
                "dual {value:e} below primal {primal:e} at u = {u}"
            );
        }
    }
    Ok(())
}

pub fn strong_duality(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for d in [5.0, 8.0] {
        let p = SystemParams::reference(d);
        for i in 0..=100 {
            let prof = EnergyProfile::from_alpha1(i as f64 / 100.0).unwrap();
            let sol = solve_p2(&p, &prof).map_err(|e| e.to_string())?;
            ensure!(
                sol.duality_gap() <= 1e-6,
                "gap {:e} at D = {d}, alpha1 = {}",
                sol.duality_gap(),
                prof.alpha1()
            );
        }
    }
    for _ in 0..draws {
        let p = scenario(rng);
        let prof = profile(rng);
        let sol = solve_p2(&p, &prof).map_err(|e| e.to_string())?;
        ensure!(
            sol.duality_gap() <= 1e-6,
            "gap {:e} for {prof:?}, {p:?}",
            sol.duality_gap()
        );
    }
    Ok(())
}

pub fn fairness_active_when_both_constraints_bind(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let prof = EnergyProfile::from_alpha1(rng.random_range(0.01..0.99)).unwrap();
        let sol = solve_p2(&p, &prof).map_err(|e| e.to_string())?;
        // a zero multiplier means that receiver's constraint is slack at the optimum
        if sol.dual.lambda1 > 0.0 && sol.dual.lambda2 > 0.0 {
            let err = fairness_error(&prof, sol.energies);
            ensure!(err <= 1e-6, "share error {err:e} for {prof:?}, {p:?}");
        }
        for k in Receiver::BOTH {
            let need = prof.weight(k) * sol.objective;
            ensure!(
                sol.energies.get(k) >= need - 1e-9 * sol.objective,
                "receiver {k:?} gets {:e} < {need:e}",
                sol.energies.get(k)
            );
        }
    }
    Ok(())
}

/// Time spent at each hover position, sorted by position. Time-sharing solutions
/// may visit their two hover points in either order, so segment order is ignored.
fn occupation(traj: &Trajectory) -> Vec<(f64, f64)> {
    let mut occ: Vec<(f64, f64)> = traj
        .segments()
        .iter()
        .map(|s| match *s {
            Segment::Hover { x, duration } => (x, duration),
            Segment::Fly { .. } => panic!("unconstrained solutions never fly"),
        })
        .collect();
    occ.sort_by(|a, b| a.0.total_cmp(&b.0));
    occ
}

fn mirrored_positions(a: &Trajectory, b: &Trajectory, tol: f64) -> bool {
    let oa = occupation(a);
    let ob = occupation(&b.mirrored());
    oa.len() == ob.len()
        && oa
            .iter()
            .zip(&ob)
            .all(|(x, y)| (x.0 - y.0).abs() <= tol && (x.1 - y.1).abs() <= tol)
}

pub fn p2_swap_symmetry(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let prof = profile(rng);
        let a = solve_p2(&p, &prof).map_err(|e| e.to_string())?;
        let b = solve_p2(&p, &prof.swapped()).map_err(|e| e.to_string())?;
        ensure!(
            rel(a.energies.e1, b.energies.e2) <= 1e-9 && rel(a.energies.e2, b.energies.e1) <= 1e-9,
            "energies {:?} vs swapped {:?}",
            a.energies,
            b.energies
        );
        ensure!(
            mirrored_positions(&a.trajectory, &b.trajectory, 1e-6 * p.separation().max(1.0)),
            "{:?} is not the mirror of {:?}",
            a.trajectory,
            b.trajectory
        );
    }
    Ok(())
}

pub fn balanced_below_threshold_hovers_at_midpoint(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let p = p
            .with_separation(rng.random_range(0.0..=symmetric_threshold(&p)))
            .unwrap();
        let sol = solve_p2(&p, &EnergyProfile::balanced()).map_err(|e| e.to_string())?;
        ensure!(
            sol.trajectory == Trajectory::hover(0.0, p.duration()),
            "{:?} at D = {}",
            sol.trajectory,
            p.separation()
        );
    }
    Ok(())
}

// ---- planner -------------------------------------------------------------

pub fn p1_trajectories_feasible(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let prof = profile(rng);
        let sol = solve_p1(&p, &prof).map_err(|e| format!("{e} for {prof:?}, {p:?}"))?;
        ensure!(
            max_speed_feasible(&p, &sol.trajectory),
            "speed violated: {:?}",
            sol.trajectory
        );
        sol.trajectory
            .validate(&p)
            .map_err(|e| format!("{e}: {:?}", sol.trajectory))?;
        let half = p.half_span();
        for (_, x) in sol.trajectory.breakpoints() {
            ensure!(x.abs() <= half * (1.0 + 1e-12), "position {x} outside the corridor");
        }
    }
    Ok(())
}

pub fn static_p1_p2_sandwich(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    let check = |p: &SystemParams, prof: &EnergyProfile| -> Result<(), String> {
        let st = static_benchmark(p, prof, 2001).objective;
        let p1 = solve_p1(p, prof).map_err(|e| e.to_string())?.objective;
        let p2 = solve_p2(p, prof).map_err(|e| e.to_string())?.objective;
        ensure!(
            st <= p1 * (1.0 + 1e-12),
            "static {st:e} > p1 {p1:e} for {prof:?}, {p:?}"
        );
        ensure!(p1 <= p2 * (1.0 + 1e-12), "p1 {p1:e} > p2 {p2:e} for {prof:?}, {p:?}");
        Ok(())
    };
    for d in [5.0, 8.0] {
        let p = SystemParams::reference(d);
        for i in 0..=100 {
            check(&p, &EnergyProfile::from_alpha1(i as f64 / 100.0).unwrap())?;
        }
    }
    for _ in 0..draws {
        let p = scenario(rng);
        check(&p, &profile(rng))?;
    }
    Ok(())
}

pub fn balanced_plan_within_dp_oracle(_rng: &mut ChaCha8Rng, _draws: usize) -> Result<(), String> {
    let p = SystemParams::reference(8.0);
    let prof = EnergyProfile::balanced();
    let dp = dp_p1(&p, &prof, &DpConfig::default()).map_err(|e| e.to_string())?;
    let p1 = solve_p1(&p, &prof).map_err(|e| e.to_string())?;
    ensure!(
        p1.energies.total() >= dp.energies.total() * 0.99,
        "planner {:e} below dp {:e} - 1%",
        p1.energies.total(),
        dp.energies.total()
    );
    Ok(())
}

/// Relative P1-vs-P2 gaps for `alpha = (0.7, 0.3)`, `D = 8`, over the given horizons.
pub fn horizon_gaps(horizons: &[f64]) -> Result<Vec<f64>, String> {
    let prof = EnergyProfile::from_alpha1(0.7).unwrap();
    horizons
        .iter()
        .map(|&t| {
            let p = SystemParams::reference(8.0)
                .with_duration(t)
                .map_err(|e| e.to_string())?;
            let p1 = solve_p1(&p, &prof).map_err(|e| e.to_string())?;
            let p2 = solve_p2(&p, &prof).map_err(|e| e.to_string())?;
            Ok((p2.objective - p1.objective) / p2.objective)
        })
        .collect()
}

pub fn long_horizon_converges_to_unconstrained(_rng: &mut ChaCha8Rng, _draws: usize) -> Result<(), String> {
    let gaps = horizon_gaps(&[1.0, 5.0, 20.0, 100.0])?;
    ensure!(gaps[3] <= 0.01, "gap at T = 100 s is {:e}", gaps[3]);
    for w in gaps.windows(2) {
        ensure!(w[1] <= w[0] + 1e-3, "gaps not non-increasing: {gaps:?}");
    }
    Ok(())
}

pub fn balanced_trajectory_point_symmetric(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let sol = solve_p1(&p, &EnergyProfile::balanced()).map_err(|e| e.to_string())?;
        let t = p.duration();
        let tol = 1e-9 * p.separation().max(1.0);
        for (time, x) in sol.trajectory.breakpoints() {
            let y = sol.trajectory.position_at(t - time);
            ensure!((x + y).abs() <= tol, "x({time}) = {x} but x(T - t) = {y}, {p:?}");
        }
    }
    Ok(())
}

// ---- oracle --------------------------------------------------------------

pub fn dp_sandwiches_planner(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    // grids chosen so the reach per step is a whole number of cells
    let cases: Vec<(SystemParams, EnergyProfile)> = (0..draws)
        .map(|_| {
            let d = 0.5 * rng.random_range(2..=24) as f64;
            let t = 0.005 * rng.random_range(60..=300) as f64;
            let v = 10.0 * rng.random_range(1..=3) as f64;
            let p = SystemParams::new(5.0, d, 10.0, 0.5, 1e-3, t, SpeedLimit::Bounded(v)).unwrap();
            (p, EnergyProfile::from_alpha1(rng.random_range(0.2..0.8)).unwrap())
        })
        .collect();
    cases.par_iter().try_for_each(|(p, prof)| {
        let dp = dp_p1(p, prof, &DpConfig::default()).map_err(|e| e.to_string())?;
        let p1 = solve_p1(p, prof).map_err(|e| e.to_string())?;
        let (a, b) = (dp.objective, p1.objective);
        ensure!(!dp.degenerate, "dp grid degenerate for {p:?}");
        ensure!(
            a <= b * 1.02 && b <= a * 1.02,
            "dp {a:e} vs planner {b:e} for {prof:?}, {p:?}"
        );
        Ok(())
    })
}

pub fn quadrature_second_order(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for _ in 0..draws {
        let p = scenario(rng);
        let traj = fly(rng, &p);
        let k = receiver(rng);
        let exact = trajectory_energy(&p, &traj, k);
        let e1 = (quadrature_energy(&p, &traj, k, 32) - exact).abs();
        let e2 = (quadrature_energy(&p, &traj, k, 64) - exact).abs();
        // below this the error is rounding, not truncation
        if e1 <= 1e-11 * exact {
            continue;
        }
        ensure!(e1 / e2 >= 3.5, "error ratio {} for {traj:?}, {p:?}", e1 / e2);
    }
    Ok(())
}

// ---- region --------------------------------------------------------------

pub fn boundary_mirror_symmetry(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for i in 0..draws {
        let p = scenario(rng);
        let solver = [Solver::P2, Solver::P1, Solver::Static][i % 3];
        let n = rng.random_range(3..40);
        let b = sweep(&p, solver, n).map_err(|e| e.to_string())?;
        for (a, m) in b.points.iter().zip(b.points.iter().rev()) {
            ensure!(
                (a.e1_avg - m.e2_avg).abs() <= 1e-9 * a.e1_avg && (a.e2_avg - m.e1_avg).abs() <= 1e-9 * a.e2_avg,
                "{solver} point alpha1 = {} ({:e}, {:e}) vs mirror ({:e}, {:e}), {p:?}",
                a.alpha1,
                a.e1_avg,
                a.e2_avg,
                m.e1_avg,
                m.e2_avg
            );
        }
    }
    Ok(())
}

pub fn boundary_monotone(rng: &mut ChaCha8Rng, draws: usize) -> Result<(), String> {
    for i in 0..draws {
        let p = scenario(rng);
        let solver = [Solver::P2, Solver::P1, Solver::Static][i % 3];
        let b = sweep(&p, solver, 41).map_err(|e| e.to_string())?;
        ensure!(b.failures().count() == 0, "{solver} sweep had failures");
        let v = monotonicity_violation(&b);
        ensure!(v <= CHECK_TOL, "{solver} boundary not monotone ({v:e} W), {p:?}");
    }
    Ok(())
}

/// Every property, by name.
pub const PROPERTIES: &[(&str, Property)] = &[
    ("power_mirror_symmetry", power_mirror_symmetry),
    ("energy_additive_over_concatenation", energy_additive_over_concatenation),
    (
        "flight_closed_form_matches_quadrature",
        flight_closed_form_matches_quadrature,
    ),
    ("power_decreases_with_offset", power_decreases_with_offset),
    ("psi_matches_grid_oracle", psi_matches_grid_oracle),
    ("psi_equal_weights_symmetric", psi_equal_weights_symmetric),
    ("psi_maximizer_on_heavier_side", psi_maximizer_on_heavier_side),
    ("psi_stationary_points_below_max", psi_stationary_points_below_max),
    ("weak_duality", weak_duality),
    ("strong_duality", strong_duality),
    (
        "fairness_active_when_both_constraints_bind",
        fairness_active_when_both_constraints_bind,
    ),
    ("p2_swap_symmetry", p2_swap_symmetry),
    (
        "balanced_below_threshold_hovers_at_midpoint",
        balanced_below_threshold_hovers_at_midpoint,
    ),
    ("p1_trajectories_feasible", p1_trajectories_feasible),
    ("static_p1_p2_sandwich", static_p1_p2_sandwich),
    ("balanced_plan_within_dp_oracle", balanced_plan_within_dp_oracle),
    (
        "long_horizon_converges_to_unconstrained",
        long_horizon_converges_to_unconstrained,
    ),
    (
        "balanced_trajectory_point_symmetric",
        balanced_trajectory_point_symmetric,
    ),
    ("dp_sandwiches_planner", dp_sandwiches_planner),
    ("quadrature_second_order", quadrature_second_order),
    ("boundary_mirror_symmetry", boundary_mirror_symmetry),
    ("boundary_monotone", boundary_monotone),
];

/// Runs one property with a generator derived from `seed` and the property name.
pub fn run(name: &str, prop: Property, seed: u64, draws: usize) -> Result<(), String> {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    prop(&mut rng, draws)
}
