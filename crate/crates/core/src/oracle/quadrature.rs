use super::power;
use crate::model::{Receiver, Segment, SystemParams, Trajectory};

/// Composite trapezoid integral of `Q_k(x(t))` over the trajectory.
///
/// Nodes are `n_steps + 1` uniform times plus the segment boundaries, so a
/// piecewise-constant integrand is integrated exactly.
pub fn quadrature_energy(params: &SystemParams, traj: &Trajectory, k: Receiver, n_steps: usize) -> f64 {
    let n = n_steps.max(1);
    let durations: Vec<f64> = traj
        .segments()
        .iter()
        .map(|s| match *s {
            Segment::Hover { duration, .. } => duration,
            Segment::Fly { x_start, x_end, speed } => (x_end - x_start).abs() / speed,
        })
        .collect();
    let total: f64 = durations.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    let h = total / n as f64;

    let mut sum = 0.0;
    let mut seg_start = 0.0;
    for (seg, &len) in traj.segments().iter().zip(&durations) {
        let seg_end = seg_start + len;
        let pos = |t: f64| match *seg {
            Segment::Hover { x, .. } => x,
            Segment::Fly { x_start, x_end, speed } => {
                let dir = if x_end >= x_start { 1.0 } else { -1.0 };
                x_start + dir * speed * (t - seg_start)
            }
        };
        let integrand = |t: f64| power(params, pos(t), k);
        // segment ends plus the uniform nodes strictly inside the segment
        let mut t_prev = seg_start;
        let mut f_prev = integrand(t_prev);
        let mut i = (seg_start / h).floor() as usize + 1;
        loop {
            let node = i as f64 * h;
            let t = if node < seg_end { node } else { seg_end };
            if t > t_prev {
                let f = integrand(t);
                sum += 0.5 * (t - t_prev) * (f + f_prev);
                t_prev = t;
                f_prev = f;
            }
            if node >= seg_end {
                break;
            }
            i += 1;
        }
        seg_start = seg_end;
    }
    sum
}
