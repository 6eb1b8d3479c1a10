//! Domain types shared across the crate: network parameters, mobility laws,
//! sensor trajectories and intruder descriptions.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{field}: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("track must have at least one segment")]
    EmptyTrack,
    #[error("segment start times must begin at 0 and increase strictly (segment {index})")]
    SegmentOrder { index: usize },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ModelError {
    ModelError::Invalid {
        field,
        reason: reason.into(),
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Signed angular difference reduced to `(-π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2 { x: c, y: s }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Law of the scalar sensor speed `V_s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpeedDistribution {
    Fixed(f64),
    Uniform { lo: f64, hi: f64 },
    Discrete { values: Vec<f64>, weights: Vec<f64> },
}

impl SpeedDistribution {
    pub fn validate(&self) -> Result<(), ModelError> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        match self {
            SpeedDistribution::Fixed(v) => {
                if !ok(*v) {
                    return Err(invalid(
                        "speed",
                        format!("must be finite and >= 0, got {v}"),
                    ));
                }
            }
            SpeedDistribution::Uniform { lo, hi } => {
                if !ok(*lo) || !ok(*hi) || lo > hi {
                    return Err(invalid(
                        "speed",
                        format!("uniform bounds must satisfy 0 <= lo <= hi, got [{lo}, {hi}]"),
                    ));
                }
            }
            SpeedDistribution::Discrete { values, weights } => {
                if values.is_empty() || values.len() != weights.len() {
                    return Err(invalid(
                        "speed",
                        "discrete law needs equally many values and weights (at least one)",
                    ));
                }
                if let Some(v) = values.iter().find(|v| !ok(**v)) {
                    return Err(invalid(
                        "speed",
                        format!("must be finite and >= 0, got {v}"),
                    ));
                }
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(invalid("speed", "weights must be finite and >= 0"));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(invalid(
                        "speed",
                        format!("weights sum to {total}, expected 1"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        match self {
            SpeedDistribution::Fixed(v) => *v,
            SpeedDistribution::Uniform { lo, hi } => 0.5 * (lo + hi),
            SpeedDistribution::Discrete { values, weights } => {
                values.iter().zip(weights).map(|(v, w)| v * w).sum()
            }
        }
    }

    /// Upper end of the support, `v_s^max`.
    pub fn max(&self) -> f64 {
        match self {
            SpeedDistribution::Fixed(v) => *v,
            SpeedDistribution::Uniform { hi, .. } => *hi,
            SpeedDistribution::Discrete { values, weights } => values
                .iter()
                .zip(weights)
                .filter(|(_, w)| **w > 0.0)
                .map(|(v, _)| *v)
                .fold(0.0, f64::max),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            SpeedDistribution::Fixed(v) => *v,
            SpeedDistribution::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            SpeedDistribution::Discrete { values, weights } => {
                values[pick_index(weights, rng.random::<f64>())]
            }
        }
    }
}

fn pick_index(weights: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    // rounding slack: fall back to the last component with positive weight
    weights.iter().rposition(|w| *w > 0.0).unwrap_or(0)
}

/// Law `f_Θ` of the heading a sensor picks.
///
/// Point masses have no density; [`DirectionDistribution::density`] returns
/// only the absolutely continuous part and [`DirectionDistribution::atoms`]
/// lists the point masses with their weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DirectionDistribution {
    Uniform,
    PointMass(f64),
    VonMises { mean: f64, kappa: f64 },
    Mixture(Vec<(f64, DirectionDistribution)>),
}

impl DirectionDistribution {
    pub fn point_mass(theta: f64) -> Self {
        DirectionDistribution::PointMass(wrap_angle(theta))
    }

    pub fn von_mises(mean: f64, kappa: f64) -> Self {
        DirectionDistribution::VonMises {
            mean: wrap_angle(mean),
            kappa,
        }
    }

    /// Equal-weight mixture of the given laws.
    pub fn equal_mixture(parts: Vec<DirectionDistribution>) -> Self {
        let w = 1.0 / parts.len() as f64;
        DirectionDistribution::Mixture(parts.into_iter().map(|p| (w, p)).collect())
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            DirectionDistribution::Uniform => Ok(()),
            DirectionDistribution::PointMass(theta) => {
                if theta.is_finite() {
                    Ok(())
                } else {
                    Err(invalid("direction", "point mass angle must be finite"))
                }
            }
            DirectionDistribution::VonMises { mean, kappa } => {
                if !mean.is_finite() || !kappa.is_finite() || *kappa < 0.0 {
                    Err(invalid(
                        "direction",
                        format!("von Mises needs finite mean and kappa >= 0, got kappa {kappa}"),
                    ))
                } else {
                    Ok(())
                }
            }
            DirectionDistribution::Mixture(parts) => {
                if parts.is_empty() {
                    return Err(invalid("direction", "mixture needs at least one component"));
                }
                if parts.iter().any(|(w, _)| !w.is_finite() || *w < 0.0) {
                    return Err(invalid(
                        "direction",
                        "mixture weights must be finite and >= 0",
                    ));
                }
                let total: f64 = parts.iter().map(|(w, _)| w).sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(invalid(
                        "direction",
                        format!("mixture weights sum to {total}, expected 1"),
                    ));
                }
                parts.iter().try_for_each(|(_, p)| p.validate())
            }
        }
    }

    /// Density of the absolutely continuous part at `theta`.
    pub fn density(&self, theta: f64) -> f64 {
        match self {
            DirectionDistribution::Uniform => 1.0 / TAU,
            DirectionDistribution::PointMass(_) => 0.0,
            DirectionDistribution::VonMises { mean, kappa } => {
                von_mises_density(theta - mean, *kappa)
            }
            DirectionDistribution::Mixture(parts) => {
                parts.iter().map(|(w, p)| w * p.density(theta)).sum()
            }
        }
    }

    /// Total probability carried by the density (one minus the atom weights).
    pub fn continuous_weight(&self) -> f64 {
        match self {
            DirectionDistribution::PointMass(_) => 0.0,
            DirectionDistribution::Mixture(parts) => {
                parts.iter().map(|(w, p)| w * p.continuous_weight()).sum()
            }
            _ => 1.0,
        }
    }

    /// Point masses as `(weight, angle)` pairs, flattened through mixtures.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        self.collect_atoms(1.0, &mut out);
        out
    }

    fn collect_atoms(&self, scale: f64, out: &mut Vec<(f64, f64)>) {
        match self {
            DirectionDistribution::PointMass(theta) => out.push((scale, wrap_angle(*theta))),
            DirectionDistribution::Mixture(parts) => {
                for (w, p) in parts {
                    p.collect_atoms(scale * w, out);
                }
            }
            _ => {}
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            DirectionDistribution::Uniform => wrap_angle(TAU * rng.random::<f64>()),
            DirectionDistribution::PointMass(theta) => wrap_angle(*theta),
            DirectionDistribution::VonMises { mean, kappa } => {
                wrap_angle(mean + sample_von_mises_offset(*kappa, rng))
            }
            DirectionDistribution::Mixture(parts) => {
                let u = rng.random::<f64>();
                let weights: Vec<f64> = parts.iter().map(|(w, _)| *w).collect();
                parts[pick_index(&weights, u)].1.sample(rng)
            }
        }
    }
}

/// Exponentially scaled modified Bessel function `I0(x)·e^{-x}` for `x >= 0`.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    if x < 30.0 {
        // power series for I0, then scale
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        while term > 1e-17 * sum {
            term *= q / (k * k);
            sum += term;
            k += 1.0;
        }
        sum * (-x).exp()
    } else {
        // asymptotic expansion: sum_k ((2k-1)!!)^2 / (k! (8x)^k)
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..12 {
            let kf = k as f64;
            term *= (2.0 * kf - 1.0).powi(2) / (kf * 8.0 * x);
            sum += term;
        }
        sum / (TAU * x).sqrt()
    }
}

fn von_mises_density(offset: f64, kappa: f64) -> f64 {
    if kappa == 0.0 {
        return 1.0 / TAU;
    }
    (kappa * (offset.cos() - 1.0)).exp() / (TAU * bessel_i0_scaled(kappa))
}

// Best & Fisher (1979) rejection sampler.
fn sample_von_mises_offset<R: Rng + ?Sized>(kappa: f64, rng: &mut R) -> f64 {
    if kappa < 1e-8 {
        return TAU * rng.random::<f64>();
    }
    let tau = 1.0 + (1.0 + 4.0 * kappa * kappa).sqrt();
    let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * kappa);
    let r = (1.0 + rho * rho) / (2.0 * rho);
    loop {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        let u3: f64 = rng.random();
        let z = (PI * u1).cos();
        let f = (1.0 + r * z) / (r + z);
        let c = kappa * (r - f);
        if c * (2.0 - c) - u2 > 0.0 || (c / u2).ln() + 1.0 - c >= 0.0 {
            let angle = f.clamp(-1.0, 1.0).acos();
            return if u3 > 0.5 { angle } else { -angle };
        }
    }
}

/// Parameters of the Poisson Boolean model with mobile sensors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub density: f64,
    pub sensing_radius: f64,
    pub speed_law: SpeedDistribution,
    pub direction_law: DirectionDistribution,
}

impl NetworkConfig {
    pub fn new(
        density: f64,
        sensing_radius: f64,
        speed_law: SpeedDistribution,
        direction_law: DirectionDistribution,
    ) -> Result<Self, ModelError> {
        let cfg = NetworkConfig {
            density,
            sensing_radius,
            speed_law,
            direction_law,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Fixed-speed sensors with uniformly random headings.
    pub fn uniform(density: f64, sensing_radius: f64, speed: f64) -> Result<Self, ModelError> {
        Self::new(
            density,
            sensing_radius,
            SpeedDistribution::Fixed(speed),
            DirectionDistribution::Uniform,
        )
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.density.is_finite() && self.density >= 0.0) {
            return Err(invalid(
                "density",
                format!("must be finite and >= 0, got {}", self.density),
            ));
        }
        if !(self.sensing_radius.is_finite() && self.sensing_radius > 0.0) {
            return Err(invalid(
                "sensing_radius",
                format!("must be finite and > 0, got {}", self.sensing_radius),
            ));
        }
        self.speed_law.validate()?;
        self.direction_law.validate()
    }

    pub fn mean_speed(&self) -> f64 {
        self.speed_law.mean()
    }

    pub fn max_speed(&self) -> f64 {
        self.speed_law.max()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start_time: f64,
    /// Unit heading vector.
    pub direction: Vec2,
    pub speed: f64,
}

impl Segment {
    pub fn new(start_time: f64, heading: f64, speed: f64) -> Self {
        Segment {
            start_time,
            direction: Vec2::from_angle(heading),
            speed,
        }
    }

    pub fn velocity(&self) -> Vec2 {
        self.direction * self.speed
    }
}

/// Piecewise-linear trajectory of one sensor.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorTrack {
    origin: Vec2,
    segments: Vec<Segment>,
    // position at each segment's start_time
    anchors: Vec<Vec2>,
}

impl SensorTrack {
    pub fn new(origin: Vec2, segments: Vec<Segment>) -> Result<Self, ModelError> {
        if segments.is_empty() {
            return Err(ModelError::EmptyTrack);
        }
        if segments[0].start_time != 0.0 {
            return Err(ModelError::SegmentOrder { index: 0 });
        }
        let segments: Vec<Segment> = segments
            .into_iter()
            .map(|s| {
                let n = s.direction.norm();
                Segment {
                    direction: if n > 0.0 {
                        s.direction * (1.0 / n)
                    } else {
                        Vec2::new(1.0, 0.0)
                    },
                    ..s
                }
            })
            .collect();
        let mut anchors = Vec::with_capacity(segments.len());
        let mut pos = origin;
        for (i, seg) in segments.iter().enumerate() {
            if !(seg.speed.is_finite() && seg.speed >= 0.0) {
                return Err(invalid("speed", format!("segment {i} speed {}", seg.speed)));
            }
            if i > 0 {
                let prev = &segments[i - 1];
                if seg.start_time.partial_cmp(&prev.start_time) != Some(std::cmp::Ordering::Greater)
                {
                    return Err(ModelError::SegmentOrder { index: i });
                }
                pos = pos + prev.velocity() * (seg.start_time - prev.start_time);
            }
            anchors.push(pos);
        }
        Ok(SensorTrack {
            origin,
            segments,
            anchors,
        })
    }

    /// Single-segment track: `origin + speed·t·(cos θ, sin θ)`.
    pub fn straight(origin: Vec2, heading: f64, speed: f64) -> Self {
        let seg = Segment::new(0.0, heading, speed);
        SensorTrack {
            origin,
            segments: vec![seg],
            anchors: vec![origin],
        }
    }

    pub fn origin(&self) -> Vec2 {
        self.origin
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn max_speed(&self) -> f64 {
        self.segments.iter().map(|s| s.speed).fold(0.0, f64::max)
    }

    fn segment_index(&self, t: f64) -> usize {
        self.segments
            .partition_point(|s| s.start_time <= t)
            .saturating_sub(1)
    }

    /// Position at time `t >= 0`; the last segment extends forever.
    pub fn position_at(&self, t: f64) -> Vec2 {
        let i = self.segment_index(t);
        let seg = &self.segments[i];
        self.anchors[i] + seg.velocity() * (t - seg.start_time)
    }

    /// Each segment with its start position and active time span, the last
    /// one clipped to `horizon`. Segments starting after `horizon` are skipped.
    pub fn pieces(&self, horizon: f64) -> impl Iterator<Item = (Vec2, &Segment, f64, f64)> + '_ {
        let n = self.segments.len();
        (0..n)
            .map(move |i| {
                let seg = &self.segments[i];
                let end = if i + 1 < n {
                    self.segments[i + 1].start_time.min(horizon)
                } else {
                    horizon
                };
                (self.anchors[i], seg, seg.start_time, end)
            })
            .filter(|(_, _, start, end)| start <= end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum IntruderMotion {
    Static,
    Mobile { speed: f64, heading: f64 },
}

/// Intruder motion plus the contact time `t_d` a sensor needs to detect it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntruderSpec {
    pub motion: IntruderMotion,
    #[serde(default)]
    pub sensing_time: f64,
}

impl IntruderSpec {
    pub fn stationary() -> Self {
        IntruderSpec {
            motion: IntruderMotion::Static,
            sensing_time: 0.0,
        }
    }

    pub fn mobile(speed: f64, heading: f64) -> Self {
        IntruderSpec {
            motion: IntruderMotion::Mobile {
                speed,
                heading: wrap_angle(heading),
            },
            sensing_time: 0.0,
        }
    }

    pub fn with_sensing_time(mut self, sensing_time: f64) -> Self {
        self.sensing_time = sensing_time;
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.sensing_time.is_finite() && self.sensing_time >= 0.0) {
            return Err(invalid(
                "sensing_time",
                format!("must be finite and >= 0, got {}", self.sensing_time),
            ));
        }
        if let IntruderMotion::Mobile { speed, heading } = self.motion {
            if !(speed.is_finite() && speed >= 0.0) || !heading.is_finite() {
                return Err(invalid("intruder", "mobile speed must be finite and >= 0"));
            }
        }
        Ok(())
    }

    pub fn velocity(&self) -> Vec2 {
        match self.motion {
            IntruderMotion::Static => Vec2::ZERO,
            IntruderMotion::Mobile { speed, heading } => Vec2::from_angle(heading) * speed,
        }
    }

    pub fn speed(&self) -> f64 {
        match self.motion {
            IntruderMotion::Static => 0.0,
            IntruderMotion::Mobile { speed, .. } => speed,
        }
    }
}

/// How sensors move after deployment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Mobility {
    /// One heading and speed for the whole run.
    StraightLine,
    /// Heading (and speed) re-drawn from the network laws every `interval`.
    Redraw { interval: f64 },
}

impl Mobility {
    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Mobility::StraightLine => Ok(()),
            Mobility::Redraw { interval } if interval.is_finite() && *interval > 0.0 => Ok(()),
            Mobility::Redraw { interval } => Err(invalid(
                "redraw_interval",
                format!("must be > 0, got {interval}"),
            )),
        }
    }

    /// Draws a track starting at `origin` that is defined at least up to `horizon`.
    pub fn draw_track<R: Rng + ?Sized>(
        &self,
        origin: Vec2,
        config: &NetworkConfig,
        horizon: f64,
        rng: &mut R,
    ) -> SensorTrack {
        let heading = config.direction_law.sample(rng);
        let speed = config.speed_law.sample(rng);
        match *self {
            Mobility::StraightLine => SensorTrack::straight(origin, heading, speed),
            Mobility::Redraw { interval } => {
                let mut segments = vec![Segment::new(0.0, heading, speed)];
                let mut k = 1u32;
                loop {
                    let start = interval * k as f64;
                    if start >= horizon {
                        break;
                    }
                    let heading = config.direction_law.sample(rng);
                    let speed = config.speed_law.sample(rng);
                    segments.push(Segment::new(start, heading, speed));
                    k += 1;
                }
                SensorTrack::new(origin, segments).expect("redraw segments are ordered")
            }
        }
    }
}
