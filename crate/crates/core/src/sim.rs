//! Event-driven Monte Carlo engine.
//!
//! Sensors are drawn from a Poisson process over a region large enough that
//! every sensor able to reach the observed points before the horizon is
//! present. All geometric queries are solved exactly per track segment: a
//! point is inside a sensor's disk while `|x₀ + v·τ|² ≤ r²`, a quadratic in
//! the time offset `τ`.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{IntruderSpec, Mobility, ModelError, NetworkConfig, SensorTrack, Vec2};
use crate::replicate::run_replications;
use crate::stats::SampleSummary;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{field}: {reason}")]
    InvalidPlan { field: &'static str, reason: String },
    #[error("no initially uncovered configuration after {attempts} attempts")]
    ConditioningFailed { attempts: usize },
}

fn plan_error(field: &'static str, reason: impl Into<String>) -> SimError {
    SimError::InvalidPlan {
        field,
        reason: reason.into(),
    }
}

/// Configurations redrawn at most this often before giving up on the
/// initially-uncovered conditioning.
pub const MAX_CONDITIONING_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplingRegion {
    Square { center: Vec2, half_side: f64 },
    Disk { center: Vec2, radius: f64 },
}

impl SamplingRegion {
    pub fn area(&self) -> f64 {
        match *self {
            SamplingRegion::Square { half_side, .. } => 4.0 * half_side * half_side,
            SamplingRegion::Disk { radius, .. } => std::f64::consts::PI * radius * radius,
        }
    }

    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec2 {
        match *self {
            SamplingRegion::Square { center, half_side } => Vec2::new(
                center.x + half_side * (2.0 * rng.random::<f64>() - 1.0),
                center.y + half_side * (2.0 * rng.random::<f64>() - 1.0),
            ),
            SamplingRegion::Disk { center, radius } => {
                let rho = radius * rng.random::<f64>().sqrt();
                let phi = std::f64::consts::TAU * rng.random::<f64>();
                center + Vec2::from_angle(phi) * rho
            }
        }
    }
}

/// Square observation region of side `side` centred at the origin, plus the
/// margin `r + v_max·horizon` over which sensors are deployed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationWindow {
    pub side: f64,
    pub margin: f64,
    pub horizon: f64,
}

impl SimulationWindow {
    pub fn new(side: f64, config: &NetworkConfig, horizon: f64) -> Result<Self, SimError> {
        if !(side.is_finite() && side > 0.0) {
            return Err(plan_error(
                "window_side",
                format!("must be > 0, got {side}"),
            ));
        }
        if !(horizon.is_finite() && horizon >= 0.0) {
            return Err(plan_error(
                "horizon",
                format!("must be finite and >= 0, got {horizon}"),
            ));
        }
        Ok(SimulationWindow {
            side,
            margin: config.sensing_radius + config.max_speed() * horizon,
            horizon,
        })
    }

    pub fn observation(&self) -> SamplingRegion {
        SamplingRegion::Square {
            center: Vec2::ZERO,
            half_side: 0.5 * self.side,
        }
    }

    pub fn deployment(&self) -> SamplingRegion {
        SamplingRegion::Square {
            center: Vec2::ZERO,
            half_side: 0.5 * self.side + self.margin,
        }
    }
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let d = Poisson::new(mean).expect("finite positive Poisson mean");
    d.sample(rng) as usize
}

/// Poisson(λ·area) sensors uniform in `region`, each with independent
/// heading and speed from the network laws.
pub fn sample_tracks<R: Rng + ?Sized>(
    config: &NetworkConfig,
    mobility: Mobility,
    region: &SamplingRegion,
    horizon: f64,
    rng: &mut R,
) -> Vec<SensorTrack> {
    let n = poisson_count(config.density * region.area(), rng);
    (0..n)
        .map(|_| {
            let origin = region.sample_point(rng);
            mobility.draw_track(origin, config, horizon, rng)
        })
        .collect()
}

pub fn sample_configuration<R: Rng + ?Sized>(
    config: &NetworkConfig,
    mobility: Mobility,
    window: &SimulationWindow,
    rng: &mut R,
) -> Vec<SensorTrack> {
    sample_tracks(config, mobility, &window.deployment(), window.horizon, rng)
}

/// Solves `|x0 + v·τ|² ≤ r²` for `τ`, returning the closed interval of
/// solutions if any. Tangency yields a degenerate interval.
fn inside_span(x0: Vec2, v: Vec2, r: f64) -> Option<(f64, f64)> {
    let c = x0.norm_sq() - r * r;
    let a = v.norm_sq();
    if a == 0.0 {
        return (c <= 0.0).then_some((f64::NEG_INFINITY, f64::INFINITY));
    }
    let b = x0.dot(v);
    let disc = b * b - a * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // stable pair of roots
    let q = if b >= 0.0 { -(b + sq) } else { -(b - sq) };
    let (t1, t2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        let r1 = q / a;
        let r2 = c / q;
        (r1.min(r2), r1.max(r2))
    };
    Some((t1, t2))
}

/// Per-piece inside intervals in absolute time, in the frame moving with
/// velocity `offset`, clipped to `[0, horizon]`. Pieces touching at a turn
/// are joined, so each returned interval is one continuous contact.
pub fn contact_intervals(
    track: &SensorTrack,
    point: Vec2,
    radius: f64,
    offset: Vec2,
    horizon: f64,
) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (anchor, seg, start, end) in track.pieces(horizon) {
        let x0 = anchor - offset * start - point;
        let v = seg.velocity() - offset;
        let Some((t1, t2)) = inside_span(x0, v, radius) else {
            continue;
        };
        let lo = start + t1.max(0.0);
        let hi = start + t2.min(end - start);
        if lo > hi {
            continue;
        }
        match out.last_mut() {
            Some(last) if lo <= last.1 + 1e-12 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Earliest `t >= 0` at which the point, moving with velocity `offset`, is
/// within `radius` of the sensor. `None` if that never happens.
pub fn first_hit_time(track: &SensorTrack, point: Vec2, radius: f64, offset: Vec2) -> Option<f64> {
    for (anchor, seg, start, end) in track.pieces(f64::INFINITY) {
        let x0 = anchor - offset * start - point;
        let v = seg.velocity() - offset;
        if let Some((t1, t2)) = inside_span(x0, v, radius) {
            let span = end - start;
            if t2 >= 0.0 && t1 <= span {
                return Some(start + t1.max(0.0));
            }
        }
    }
    None
}

/// Distance from `point` to the sensor's path over `[0, until]`.
pub fn min_distance(track: &SensorTrack, point: Vec2, until: f64) -> f64 {
    track
        .pieces(until)
        .map(|(anchor, seg, start, end)| {
            let d = anchor - point;
            let v = seg.velocity();
            let a = v.norm_sq();
            let tau = if a > 0.0 {
                (-d.dot(v) / a).clamp(0.0, end - start)
            } else {
                0.0
            };
            (d + v * tau).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Covered stretches of a fixed point's timeline over `[0, horizon]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageTimeline {
    pub point: Vec2,
    pub horizon: f64,
    /// Disjoint, sorted, each of positive length.
    pub intervals: Vec<(f64, f64)>,
}

impl CoverageTimeline {
    pub fn covered_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn covered_fraction(&self) -> f64 {
        if self.horizon > 0.0 {
            self.covered_length() / self.horizon
        } else {
            0.0
        }
    }

    /// Complement of the covered intervals in `[0, horizon]`.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = 0.0;
        for &(a, b) in &self.intervals {
            if a > cursor {
                out.push((cursor, a));
            }
            cursor = b;
        }
        if cursor < self.horizon {
            out.push((cursor, self.horizon));
        }
        out
    }

    pub fn is_covered_at(&self, t: f64) -> bool {
        let i = self.intervals.partition_point(|iv| iv.1 < t);
        self.intervals.get(i).is_some_and(|iv| iv.0 <= t)
    }

    /// True if any covered interval meets `[0, until)`.
    pub fn covered_before(&self, until: f64) -> bool {
        self.intervals.first().is_some_and(|iv| iv.0 < until)
    }
}

/// Union of all sensors' contact intervals with a static point.
pub fn coverage_timeline(
    point: Vec2,
    tracks: &[SensorTrack],
    radius: f64,
    horizon: f64,
) -> CoverageTimeline {
    let mut all: Vec<(f64, f64)> = tracks
        .iter()
        .flat_map(|t| contact_intervals(t, point, radius, Vec2::ZERO, horizon))
        .filter(|(a, b)| b > a)
        .collect();
    all.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(all.len());
    for (a, b) in all {
        match merged.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    CoverageTimeline {
        point,
        horizon,
        intervals: merged,
    }
}

/// Uniform grid over points for fixed-radius neighbour queries.
struct GridIndex {
    cell: f64,
    origin: Vec2,
    cols: usize,
    rows: usize,
    cells: Vec<Vec<usize>>,
}

impl GridIndex {
    fn new(points: &[Vec2], cell: f64, lo: Vec2, hi: Vec2) -> Self {
        let cols = (((hi.x - lo.x) / cell).ceil() as usize).max(1);
        let rows = (((hi.y - lo.y) / cell).ceil() as usize).max(1);
        let mut cells = vec![Vec::new(); cols * rows];
        let mut idx = GridIndex {
            cell,
            origin: lo,
            cols,
            rows,
            cells: Vec::new(),
        };
        for (i, p) in points.iter().enumerate() {
            let (cx, cy) = idx.cell_of(*p);
            cells[cy * cols + cx].push(i);
        }
        idx.cells = cells;
        idx
    }

    fn cell_of(&self, p: Vec2) -> (usize, usize) {
        let cx = ((p.x - self.origin.x) / self.cell).floor().max(0.0) as usize;
        let cy = ((p.y - self.origin.y) / self.cell).floor().max(0.0) as usize;
        (cx.min(self.cols - 1), cy.min(self.rows - 1))
    }

    /// Candidates within one cell of `p`'s cell (a superset of the points
    /// within `cell` of `p`).
    fn neighbours(&self, p: Vec2) -> impl Iterator<Item = usize> + '_ {
        let (cx, cy) = self.cell_of(p);
        let xs = cx.saturating_sub(1)..=(cx + 1).min(self.cols - 1);
        let ys = cy.saturating_sub(1)..=(cy + 1).min(self.rows - 1);
        ys.flat_map(move |y| xs.clone().map(move |x| y * self.cols + x))
            .flat_map(move |c| self.cells[c].iter().copied())
    }
}

/// Replication layout for the area-type estimators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveragePlan {
    pub window_side: f64,
    pub replications: usize,
    pub points_per_replication: usize,
}

impl CoveragePlan {
    /// `window_side = 20r` and `n_points` split over `replications`.
    pub fn new(config: &NetworkConfig, n_points: usize, replications: usize) -> Self {
        let replications = replications.max(1);
        CoveragePlan {
            window_side: 20.0 * config.sensing_radius,
            replications,
            points_per_replication: n_points.div_ceil(replications).max(1),
        }
    }

    fn validate(&self) -> Result<(), SimError> {
        if self.replications == 0 {
            return Err(plan_error("replications", "must be >= 1"));
        }
        if self.points_per_replication == 0 {
            return Err(plan_error("test_points", "must be >= 1"));
        }
        Ok(())
    }
}

/// Covered fraction with its standard error taken across replications, which
/// accounts for the spatial correlation of test points sharing a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageEstimate {
    pub fraction: f64,
    pub std_error: f64,
    pub points: usize,
    /// Per-replication covered fractions, in replication order.
    pub per_replication: Vec<f64>,
}

impl CoverageEstimate {
    fn from_fractions(per_replication: Vec<f64>, points_per_replication: usize) -> Self {
        let s = SampleSummary::of(&per_replication);
        CoverageEstimate {
            fraction: s.mean,
            std_error: if s.n > 1 { s.std_error } else { f64::NAN },
            points: s.n * points_per_replication,
            per_replication,
        }
    }
}

/// Fraction of uniform test points covered at time `t`.
pub fn estimate_area_coverage(
    config: &NetworkConfig,
    mobility: Mobility,
    t: f64,
    plan: &CoveragePlan,
    seed: u64,
) -> Result<CoverageEstimate, SimError> {
    config.validate()?;
    mobility.validate()?;
    plan.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(plan_error(
            "time",
            format!("must be finite and >= 0, got {t}"),
        ));
    }
    let window = SimulationWindow::new(plan.window_side, config, t)?;
    let r = config.sensing_radius;
    let experiment = |rng: &mut rand_chacha::ChaCha8Rng, _i: usize| {
        let tracks = sample_configuration(config, mobility, &window, rng);
        let positions: Vec<Vec2> = tracks.iter().map(|tr| tr.position_at(t)).collect();
        let h = 0.5 * window.side + window.margin + r;
        let index = GridIndex::new(&positions, r, Vec2::new(-h, -h), Vec2::new(h, h));
        let observation = window.observation();
        let mut covered = 0usize;
        for _ in 0..plan.points_per_replication {
            let p = observation.sample_point(rng);
            if index
                .neighbours(p)
                .any(|k| (positions[k] - p).norm_sq() <= r * r)
            {
                covered += 1;
            }
        }
        covered as f64 / plan.points_per_replication as f64
    };
    let fractions = run_replications(&experiment, plan.replications, seed);
    Ok(CoverageEstimate::from_fractions(
        fractions,
        plan.points_per_replication,
    ))
}

/// Fraction of uniform test points covered at some instant of `[0, duration)`.
pub fn estimate_interval_coverage(
    config: &NetworkConfig,
    mobility: Mobility,
    duration: f64,
    plan: &CoveragePlan,
    seed: u64,
) -> Result<CoverageEstimate, SimError> {
    config.validate()?;
    mobility.validate()?;
    plan.validate()?;
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(plan_error(
            "interval",
            format!("must be finite and >= 0, got {duration}"),
        ));
    }
    let window = SimulationWindow::new(plan.window_side, config, duration)?;
    let r = config.sensing_radius;
    let reach = window.margin;
    let experiment = |rng: &mut rand_chacha::ChaCha8Rng, _i: usize| {
        let tracks = sample_configuration(config, mobility, &window, rng);
        let origins: Vec<Vec2> = tracks.iter().map(|tr| tr.origin()).collect();
        let h = 0.5 * window.side + window.margin + reach;
        let index = GridIndex::new(&origins, reach, Vec2::new(-h, -h), Vec2::new(h, h));
        let observation = window.observation();
        let mut covered = 0usize;
        for _ in 0..plan.points_per_replication {
            let p = observation.sample_point(rng);
            let hit = index.neighbours(p).any(|k| {
                (origins[k] - p).norm() <= reach && min_distance(&tracks[k], p, duration) <= r
            });
            if hit {
                covered += 1;
            }
        }
        covered as f64 / plan.points_per_replication as f64
    };
    let fractions = run_replications(&experiment, plan.replications, seed);
    Ok(CoverageEstimate::from_fractions(
        fractions,
        plan.points_per_replication,
    ))
}

/// One Monte Carlo detection time, right-censored at the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionSample {
    pub value: f64,
    pub censored: bool,
}

/// Horizon and sensor-sampling reach for detection experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionPlan {
    pub horizon: f64,
    /// Radius of the deployment disk around the intruder's start. `None`
    /// uses `r + (v_s^max + v_t)·horizon`, exactly the sensors able to
    /// reach the intruder in time.
    pub sampling_radius: Option<f64>,
}

impl DetectionPlan {
    pub fn with_horizon(horizon: f64) -> Self {
        DetectionPlan {
            horizon,
            sampling_radius: None,
        }
    }

    /// Horizon `10 / rate`, leaving an `e^{-10}` censoring probability.
    pub fn for_rate(rate: f64) -> Self {
        Self::with_horizon(default_horizon(rate))
    }

    pub fn reach(&self, config: &NetworkConfig, intruder: &IntruderSpec) -> f64 {
        let needed = config.sensing_radius + (config.max_speed() + intruder.speed()) * self.horizon;
        self.sampling_radius.unwrap_or(needed)
    }
}

pub fn default_horizon(rate: f64) -> f64 {
    10.0 / rate
}

/// Draws one detection time for an intruder starting at the origin, under a
/// configuration conditioned on the intruder being initially uncovered.
///
/// Detection with a sensing time `t_d` needs one sensor to stay in contact
/// for `t_d` without interruption; contact with different sensors does not
/// add up.
pub fn sample_detection_time<R: Rng + ?Sized>(
    config: &NetworkConfig,
    mobility: Mobility,
    intruder: &IntruderSpec,
    plan: &DetectionPlan,
    rng: &mut R,
) -> Result<DetectionSample, SimError> {
    let r = config.sensing_radius;
    let horizon = plan.horizon;
    let region = SamplingRegion::Disk {
        center: Vec2::ZERO,
        radius: plan.reach(config, intruder),
    };
    let offset = intruder.velocity();
    let td = intruder.sensing_time;
    let expected = config.density * region.area();

    for _ in 0..MAX_CONDITIONING_ATTEMPTS {
        let n = poisson_count(expected, rng);
        let mut origins = Vec::with_capacity(n);
        let mut covered = false;
        for _ in 0..n {
            let p = region.sample_point(rng);
            if p.norm_sq() <= r * r {
                covered = true;
                break;
            }
            origins.push(p);
        }
        if covered {
            continue;
        }
        let mut best = f64::INFINITY;
        for origin in origins {
            let track = mobility.draw_track(origin, config, horizon, rng);
            let t = if td == 0.0 {
                first_hit_time(&track, Vec2::ZERO, r, offset)
            } else {
                contact_intervals(&track, Vec2::ZERO, r, offset, horizon)
                    .into_iter()
                    .find(|(a, b)| b - a >= td)
                    .map(|(a, _)| a + td)
            };
            if let Some(t) = t {
                best = best.min(t);
            }
        }
        return Ok(if best <= horizon {
            DetectionSample {
                value: best,
                censored: false,
            }
        } else {
            DetectionSample {
                value: horizon,
                censored: true,
            }
        });
    }
    Err(SimError::ConditioningFailed {
        attempts: MAX_CONDITIONING_ATTEMPTS,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionSet {
    pub samples: Vec<DetectionSample>,
    pub censored: usize,
}

impl DetectionSet {
    pub fn uncensored(&self) -> Vec<f64> {
        self.samples
            .iter()
            .filter(|s| !s.censored)
            .map(|s| s.value)
            .collect()
    }

    pub fn censoring_rate(&self) -> f64 {
        self.censored as f64 / self.samples.len().max(1) as f64
    }

    /// Mean over uncensored samples.
    pub fn summary(&self) -> SampleSummary {
        SampleSummary::of(&self.uncensored())
    }
}

/// `n` independent detection samples; sample `i` uses child stream `i` of `seed`.
pub fn detection_samples(
    config: &NetworkConfig,
    mobility: Mobility,
    intruder: &IntruderSpec,
    plan: &DetectionPlan,
    n: usize,
    seed: u64,
) -> Result<DetectionSet, SimError> {
    config.validate()?;
    mobility.validate()?;
    intruder.validate()?;
    if !(plan.horizon.is_finite() && plan.horizon > 0.0) {
        return Err(plan_error(
            "horizon",
            format!("must be finite and > 0, got {}", plan.horizon),
        ));
    }
    let experiment = |rng: &mut rand_chacha::ChaCha8Rng, _i: usize| {
        sample_detection_time(config, mobility, intruder, plan, rng)
    };
    let samples = run_replications(&experiment, n, seed)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let censored = samples.iter().filter(|s| s.censored).count();
    Ok(DetectionSet { samples, censored })
}

/// Timeline of the origin under one configuration deployed over the disk of
/// every sensor that can reach it before `horizon`.
pub fn sample_origin_timeline<R: Rng + ?Sized>(
    config: &NetworkConfig,
    mobility: Mobility,
    horizon: f64,
    rng: &mut R,
) -> CoverageTimeline {
    let region = SamplingRegion::Disk {
        center: Vec2::ZERO,
        radius: config.sensing_radius + config.max_speed() * horizon,
    };
    let tracks = sample_tracks(config, mobility, &region, horizon, rng);
    coverage_timeline(Vec2::ZERO, &tracks, config.sensing_radius, horizon)
}

/// Completed covered and uncovered stretches pooled over many timelines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DurationSamples {
    /// Uncovered stretches that start after 0 and before the cutoff and end
    /// before the horizon.
    pub uncovered: Vec<f64>,
    /// Covered stretches with the same start and completion rule.
    pub covered: Vec<f64>,
    /// Per-timeline fraction of `[0, horizon]` covered.
    pub covered_fraction: Vec<f64>,
    /// Stretches starting before the cutoff that were still running at the horizon.
    pub censored: usize,
}

pub fn collect_durations(timelines: &[CoverageTimeline], cutoff: f64) -> DurationSamples {
    let mut out = DurationSamples {
        uncovered: Vec::new(),
        covered: Vec::new(),
        covered_fraction: Vec::with_capacity(timelines.len()),
        censored: 0,
    };
    for tl in timelines {
        out.covered_fraction.push(tl.covered_fraction());
        let take = |(a, b): (f64, f64), sink: &mut Vec<f64>, censored: &mut usize| {
            if a > 0.0 && a <= cutoff {
                if b < tl.horizon {
                    sink.push(b - a);
                } else {
                    *censored += 1;
                }
            }
        };
        for &iv in &tl.intervals {
            take(iv, &mut out.covered, &mut out.censored);
        }
        for iv in tl.gaps() {
            take(iv, &mut out.uncovered, &mut out.censored);
        }
    }
    out
}

/// `n_points` independent origin timelines over `[0, horizon]`.
pub fn duration_experiment(
    config: &NetworkConfig,
    mobility: Mobility,
    horizon: f64,
    cutoff: f64,
    n_points: usize,
    seed: u64,
) -> Result<DurationSamples, SimError> {
    config.validate()?;
    mobility.validate()?;
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(plan_error(
            "horizon",
            format!("must be finite and > 0, got {horizon}"),
        ));
    }
    if !(cutoff > 0.0 && cutoff < horizon) {
        return Err(plan_error("cutoff", "must lie in (0, horizon)"));
    }
    let experiment = |rng: &mut rand_chacha::ChaCha8Rng, _i: usize| {
        sample_origin_timeline(config, mobility, horizon, rng)
    };
    let timelines = run_replications(&experiment, n_points, seed);
    Ok(collect_durations(&timelines, cutoff))
}
