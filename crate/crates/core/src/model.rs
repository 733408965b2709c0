//! Physical scenario, harvested-power law and piecewise trajectories.
//!
//! The UAV flies at a fixed altitude `H` along the line through the two
//! energy receivers, which sit on the ground at `-D/2` (receiver 1) and
//! `+D/2` (receiver 2). Every receiver sees a line-of-sight channel with
//! free-space path loss, so the harvested power depends only on the
//! horizontal offset between the UAV and the receiver.
//!
//! Trajectories are sequences of hover and constant-speed flight segments.
//! Both segment kinds admit an exact closed-form energy integral, which is
//! what [`trajectory_energy`] evaluates. No quadrature is involved.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum UAV speed. `Unbounded` removes the speed constraint entirely.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpeedLimit {
    Bounded(f64),
    Unbounded,
}

impl SpeedLimit {
    pub fn is_bounded(self) -> bool {
        matches!(self, SpeedLimit::Bounded(_))
    }

    /// Returns the bound, or `None` when unbounded.
    pub fn bound(self) -> Option<f64> {
        match self {
            SpeedLimit::Bounded(v) => Some(v),
            SpeedLimit::Unbounded => None,
        }
    }

    pub fn admits(self, speed: f64) -> bool {
        match self {
            SpeedLimit::Bounded(v) => speed <= v,
            SpeedLimit::Unbounded => true,
        }
    }
}

impl fmt::Display for SpeedLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpeedLimit::Bounded(v) => write!(f, "{v} m/s"),
            SpeedLimit::Unbounded => f.write_str("inf"),
        }
    }
}

// Serialized as a plain number, or the string "inf".
impl Serialize for SpeedLimit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpeedLimit::Bounded(v) => s.serialize_f64(*v),
            SpeedLimit::Unbounded => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for SpeedLimit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(SpeedLimit::Bounded(v)),
            Raw::Str(s) if s.eq_ignore_ascii_case("inf") => Ok(SpeedLimit::Unbounded),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a speed in m/s or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// One of the two ground energy receivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Receiver {
    One,
    Two,
}

impl Receiver {
    pub const BOTH: [Receiver; 2] = [Receiver::One, Receiver::Two];

    pub fn index(self) -> u8 {
        match self {
            Receiver::One => 1,
            Receiver::Two => 2,
        }
    }

    pub fn other(self) -> Receiver {
        match self {
            Receiver::One => Receiver::Two,
            Receiver::Two => Receiver::One,
        }
    }
}

impl TryFrom<u8> for Receiver {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Receiver::One),
            2 => Ok(Receiver::Two),
            other => Err(Error::InvalidReceiver(other)),
        }
    }
}

/// Physical scenario. Immutable once built; use the `with_*` methods to derive variants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct SystemParams {
    /// Flight altitude `H`, meters.
    altitude: f64,
    /// Receiver separation `D`, meters.
    separation: f64,
    /// Transmit power `P`, watts.
    tx_power: f64,
    /// Rectifier efficiency `eta`.
    efficiency: f64,
    /// Channel power gain at 1 m, linear.
    ref_gain: f64,
    /// Charging duration `T`, seconds.
    duration: f64,
    max_speed: SpeedLimit,
}

#[derive(Deserialize)]
struct RawParams {
    altitude: f64,
    separation: f64,
    tx_power: f64,
    efficiency: f64,
    ref_gain: f64,
    duration: f64,
    max_speed: SpeedLimit,
}

impl TryFrom<RawParams> for SystemParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        SystemParams::new(
            r.altitude,
            r.separation,
            r.tx_power,
            r.efficiency,
            r.ref_gain,
            r.duration,
            r.max_speed,
        )
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            field,
            reason: format!("must be finite and > 0, got {v}"),
        })
    }
}

impl SystemParams {
    pub fn new(
        altitude: f64,
        separation: f64,
        tx_power: f64,
        efficiency: f64,
        ref_gain: f64,
        duration: f64,
        max_speed: SpeedLimit,
    ) -> Result<Self> {
        positive("altitude", altitude)?;
        positive("tx_power", tx_power)?;
        positive("efficiency", efficiency)?;
        positive("ref_gain", ref_gain)?;
        positive("duration", duration)?;
        if !(separation.is_finite() && separation >= 0.0) {
            return Err(Error::InvalidParams {
                field: "separation",
                reason: format!("must be finite and >= 0, got {separation}"),
            });
        }
        if efficiency >= 1.0 {
            return Err(Error::InvalidParams {
                field: "efficiency",
                reason: format!("must be < 1, got {efficiency}"),
            });
        }
        if let SpeedLimit::Bounded(v) = max_speed {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParams {
                    field: "max_speed",
                    reason: format!("must be finite and >= 0, got {v}"),
                });
            }
        }
        Ok(SystemParams {
            altitude,
            separation,
            tx_power,
            efficiency,
            ref_gain,
            duration,
            max_speed,
        })
    }

    /// Reference scenario used throughout the test-suite: `H = 5 m`, `P = 10 W` (40 dBm),
    /// `eta = 0.5`, `beta0 = 1e-3` (-30 dB), `T = 1 s`, `V = 10 m/s`.
    pub fn reference(separation: f64) -> Self {
        SystemParams::new(5.0, separation, 10.0, 0.5, 1e-3, 1.0, SpeedLimit::Bounded(10.0))
            .expect("reference parameters are valid")
    }

    pub fn altitude(&self) -> f64 {
        self.altitude
    }
    pub fn separation(&self) -> f64 {
        self.separation
    }
    pub fn tx_power(&self) -> f64 {
        self.tx_power
    }
    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }
    pub fn ref_gain(&self) -> f64 {
        self.ref_gain
    }
    pub fn duration(&self) -> f64 {
        self.duration
    }
    pub fn max_speed(&self) -> SpeedLimit {
        self.max_speed
    }

    /// Half the receiver separation; the feasible corridor is `[-half_span, half_span]`.
    pub fn half_span(&self) -> f64 {
        self.separation / 2.0
    }

    /// `eta * beta0 * P`, the numerator of the harvested-power law.
    pub fn power_gain(&self) -> f64 {
        self.efficiency * self.ref_gain * self.tx_power
    }

    /// Ground position of receiver `k`.
    pub fn receiver_position(&self, k: Receiver) -> f64 {
        match k {
            Receiver::One => -self.half_span(),
            Receiver::Two => self.half_span(),
        }
    }

    pub fn with_separation(&self, separation: f64) -> Result<Self> {
        SystemParams::new(
            self.altitude,
            separation,
            self.tx_power,
            self.efficiency,
            self.ref_gain,
            self.duration,
            self.max_speed,
        )
    }

    pub fn with_duration(&self, duration: f64) -> Result<Self> {
        SystemParams::new(
            self.altitude,
            self.separation,
            self.tx_power,
            self.efficiency,
            self.ref_gain,
            duration,
            self.max_speed,
        )
    }

    pub fn with_max_speed(&self, max_speed: SpeedLimit) -> Result<Self> {
        SystemParams::new(
            self.altitude,
            self.separation,
            self.tx_power,
            self.efficiency,
            self.ref_gain,
            self.duration,
            max_speed,
        )
    }
}

/// Target split `alpha` of the total delivered energy between the receivers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyProfile {
    alpha1: f64,
    alpha2: f64,
}

impl EnergyProfile {
    /// Normalizes `(a1, a2)` so the weights sum to one.
    pub fn new(a1: f64, a2: f64) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidProfile {
            alpha1: a1,
            alpha2: a2,
            reason: reason.to_string(),
        };
        if !(a1.is_finite() && a2.is_finite()) {
            return Err(bad("weights must be finite"));
        }
        if a1 < 0.0 || a2 < 0.0 {
            return Err(bad("weights must be non-negative"));
        }
        let sum = a1 + a2;
        if sum <= 0.0 {
            return Err(bad("weights must not both be zero"));
        }
        let alpha1 = a1 / sum;
        Ok(EnergyProfile {
            alpha1,
            alpha2: 1.0 - alpha1,
        })
    }

    pub fn from_alpha1(alpha1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha1) {
            return Err(Error::InvalidProfile {
                alpha1,
                alpha2: 1.0 - alpha1,
                reason: "alpha1 must lie in [0, 1]".to_string(),
            });
        }
        Ok(EnergyProfile {
            alpha1,
            alpha2: 1.0 - alpha1,
        })
    }

    pub fn balanced() -> Self {
        EnergyProfile {
            alpha1: 0.5,
            alpha2: 0.5,
        }
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }
    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn weight(&self, k: Receiver) -> f64 {
        match k {
            Receiver::One => self.alpha1,
            Receiver::Two => self.alpha2,
        }
    }

    pub fn swapped(&self) -> Self {
        EnergyProfile {
            alpha1: self.alpha2,
            alpha2: self.alpha1,
        }
    }

    pub fn is_balanced(&self) -> bool {
        (self.alpha1 - 0.5).abs() <= 1e-12
    }

    /// The receiver that gets nothing, if the profile is degenerate.
    pub fn zero_weight(&self) -> Option<Receiver> {
        if self.alpha1 == 0.0 {
            Some(Receiver::One)
        } else if self.alpha2 == 0.0 {
            Some(Receiver::Two)
        } else {
            None
        }
    }

    /// Largest `E` such that `e_k >= alpha_k * E` for both receivers.
    pub fn supported_total(&self, energies: EnergyPair) -> f64 {
        let mut best = f64::INFINITY;
        for k in Receiver::BOTH {
            let w = self.weight(k);
            if w > 0.0 {
                best = best.min(energies.get(k) / w);
            }
        }
        best
    }
}

/// Energies harvested by the two receivers, joules (or watts when normalized by `T`).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct EnergyPair {
    pub e1: f64,
    pub e2: f64,
}

impl EnergyPair {
    pub fn new(e1: f64, e2: f64) -> Self {
        EnergyPair { e1, e2 }
    }

    pub fn total(&self) -> f64 {
        self.e1 + self.e2
    }

    pub fn get(&self, k: Receiver) -> f64 {
        match k {
            Receiver::One => self.e1,
            Receiver::Two => self.e2,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        EnergyPair::new(self.e1 * factor, self.e2 * factor)
    }

    pub fn swapped(&self) -> Self {
        EnergyPair::new(self.e2, self.e1)
    }
}

impl Serialize for EnergyPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            e1: f64,
            e2: f64,
            total: f64,
        }
        Wire {
            e1: self.e1,
            e2: self.e2,
            total: self.total(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EnergyPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            e1: f64,
            e2: f64,
        }
        let w = Wire::deserialize(d)?;
        Ok(EnergyPair::new(w.e1, w.e2))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Segment {
    Hover { x: f64, duration: f64 },
    Fly { x_start: f64, x_end: f64, speed: f64 },
}

impl Segment {
    pub fn duration(&self) -> f64 {
        match *self {
            Segment::Hover { duration, .. } => duration,
            Segment::Fly { x_start, x_end, speed } => (x_end - x_start).abs() / speed,
        }
    }

    pub fn start(&self) -> f64 {
        match *self {
            Segment::Hover { x, .. } => x,
            Segment::Fly { x_start, .. } => x_start,
        }
    }

    pub fn end(&self) -> f64 {
        match *self {
            Segment::Hover { x, .. } => x,
            Segment::Fly { x_end, .. } => x_end,
        }
    }

    /// Position `t` seconds into the segment (clamped to the segment).
    pub fn position_at(&self, t: f64) -> f64 {
        match *self {
            Segment::Hover { x, .. } => x,
            Segment::Fly { x_start, x_end, speed } => {
                let len = (x_end - x_start).abs();
                let travelled = (speed * t).clamp(0.0, len);
                x_start + travelled.copysign(x_end - x_start)
            }
        }
    }

    fn mirrored(&self) -> Self {
        match *self {
            Segment::Hover { x, duration } => Segment::Hover { x: -x, duration },
            Segment::Fly { x_start, x_end, speed } => Segment::Fly {
                x_start: -x_start,
                x_end: -x_end,
                speed,
            },
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            Segment::Hover { x, duration } => {
                if !x.is_finite() || !duration.is_finite() || duration < 0.0 {
                    return Err(Error::InvalidTrajectory(format!(
                        "hover segment at {x} with duration {duration}"
                    )));
                }
            }
            Segment::Fly { x_start, x_end, speed } => {
                if !x_start.is_finite() || !x_end.is_finite() || !(speed.is_finite() && speed > 0.0) {
                    return Err(Error::InvalidTrajectory(format!(
                        "fly segment {x_start} -> {x_end} at speed {speed}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Piecewise hover / constant-speed path over `[0, T]`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trajectory {
    segments: Vec<Segment>,
}

impl Trajectory {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        for s in &segments {
            s.check()?;
        }
        Ok(Trajectory { segments })
    }

    pub fn hover(x: f64, duration: f64) -> Self {
        Trajectory {
            segments: vec![Segment::Hover { x, duration }],
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn duration(&self) -> f64 {
        self.segments.iter().map(Segment::duration).sum()
    }

    /// Appends `other`, keeping segment order.
    pub fn concat(mut self, other: &Trajectory) -> Self {
        self.segments.extend_from_slice(&other.segments);
        self
    }

    /// Reflects every position through the midpoint between the receivers.
    pub fn mirrored(&self) -> Self {
        Trajectory {
            segments: self.segments.iter().map(Segment::mirrored).collect(),
        }
    }

    /// Largest positional gap between consecutive segments.
    pub fn max_jump(&self) -> f64 {
        self.segments
            .windows(2)
            .map(|w| (w[1].start() - w[0].end()).abs())
            .fold(0.0, f64::max)
    }

    /// Position at time `t` (clamped to `[0, duration]`).
    pub fn position_at(&self, t: f64) -> f64 {
        let mut elapsed = 0.0;
        for (i, seg) in self.segments.iter().enumerate() {
            let d = seg.duration();
            if t < elapsed + d || i + 1 == self.segments.len() {
                return seg.position_at(t - elapsed);
            }
            elapsed += d;
        }
        0.0
    }

    /// `(time, position)` at the start of every segment and at the end of the last one.
    pub fn breakpoints(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut t = 0.0;
        for seg in &self.segments {
            out.push((t, seg.start()));
            t += seg.duration();
        }
        if let Some(last) = self.segments.last() {
            out.push((t, last.end()));
        }
        out
    }

    /// Checks the duration and continuity invariants against `params`.
    ///
    /// Jumps are only accepted when the speed is unbounded.
    pub fn validate(&self, params: &SystemParams) -> Result<()> {
        let total = self.duration();
        let t = params.duration();
        if (total - t).abs() > 1e-9 * t.max(1.0) {
            return Err(Error::InvalidTrajectory(format!(
                "segment durations sum to {total} s, expected {t} s"
            )));
        }
        if params.max_speed().is_bounded() && self.max_jump() > jump_tolerance(params) {
            return Err(Error::InvalidTrajectory(format!(
                "positional jump of {} m under a bounded speed",
                self.max_jump()
            )));
        }
        Ok(())
    }
}

fn jump_tolerance(params: &SystemParams) -> f64 {
    1e-9 * params.separation().max(1.0)
}

/// Instantaneous power harvested by receiver `k` with the UAV above `x`, watts.
pub fn harvested_power(params: &SystemParams, x: f64, k: Receiver) -> f64 {
    let dx = x - params.receiver_position(k);
    let h = params.altitude();
    params.power_gain() / (dx * dx + h * h)
}

/// Closed-form energy delivered to receiver `k` during one segment.
pub fn segment_energy(params: &SystemParams, seg: &Segment, k: Receiver) -> f64 {
    match *seg {
        Segment::Hover { x, duration } => duration * harvested_power(params, x, k),
        Segment::Fly { x_start, x_end, speed } => {
            let h = params.altitude();
            let xk = params.receiver_position(k);
            let swept = ((x_end - xk) / h).atan() - ((x_start - xk) / h).atan();
            params.power_gain() / (speed * h) * swept.abs()
        }
    }
}

/// Total energy delivered to receiver `k` along `traj`, joules.
pub fn trajectory_energy(params: &SystemParams, traj: &Trajectory, k: Receiver) -> f64 {
    traj.segments().iter().map(|s| segment_energy(params, s, k)).sum()
}

pub fn trajectory_energies(params: &SystemParams, traj: &Trajectory) -> EnergyPair {
    EnergyPair::new(
        trajectory_energy(params, traj, Receiver::One),
        trajectory_energy(params, traj, Receiver::Two),
    )
}

/// True iff `traj` never exceeds the speed limit. A positional jump counts as infinite speed.
pub fn max_speed_feasible(params: &SystemParams, traj: &Trajectory) -> bool {
    let limit = params.max_speed();
    if !limit.is_bounded() {
        return true;
    }
    let speeds_ok = traj.segments().iter().all(|s| match *s {
        Segment::Fly { speed, .. } => limit.admits(speed),
        Segment::Hover { .. } => true,
    });
    speeds_ok && traj.max_jump() <= jump_tolerance(params)
}

/// dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// dB to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
