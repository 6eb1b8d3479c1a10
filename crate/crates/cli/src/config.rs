//! Experiment configuration: one strict JSON document per run.
//!
//! Every field has a default, so `{}` is a valid config. Optional sizes
//! (`replications`, `test_points`, `horizon`, `intruder`) fall back to
//! per-scenario defaults when absent; the resolved values are what the
//! summary records.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use dyncov::game::GridSpec;
use dyncov::{DirectionDistribution, IntruderSpec, Mobility, NetworkConfig, SpeedDistribution};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    AreaCoverage,
    IntervalCoverage,
    RequiredSpeed,
    DetectStatic,
    Durations,
    DetectSensingTime,
    OptimalSpeedSweep,
    DetectMobile,
    GameBestResponse,
    GameEquilibrium,
    StraightlineOptimality,
}

impl Scenario {
    pub const ALL: [Scenario; 11] = [
        Scenario::AreaCoverage,
        Scenario::IntervalCoverage,
        Scenario::RequiredSpeed,
        Scenario::DetectStatic,
        Scenario::Durations,
        Scenario::DetectSensingTime,
        Scenario::OptimalSpeedSweep,
        Scenario::DetectMobile,
        Scenario::GameBestResponse,
        Scenario::GameEquilibrium,
        Scenario::StraightlineOptimality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::AreaCoverage => "area-coverage",
            Scenario::IntervalCoverage => "interval-coverage",
            Scenario::RequiredSpeed => "required-speed",
            Scenario::DetectStatic => "detect-static",
            Scenario::Durations => "durations",
            Scenario::DetectSensingTime => "detect-sensing-time",
            Scenario::OptimalSpeedSweep => "optimal-speed-sweep",
            Scenario::DetectMobile => "detect-mobile",
            Scenario::GameBestResponse => "game-best-response",
            Scenario::GameEquilibrium => "game-equilibrium",
            Scenario::StraightlineOptimality => "straightline-optimality",
        }
    }

    /// Replications used when the config leaves them unset.
    pub fn default_replications(self) -> usize {
        match self {
            Scenario::AreaCoverage
            | Scenario::IntervalCoverage
            | Scenario::StraightlineOptimality => 400,
            Scenario::Durations => 2_000,
            Scenario::OptimalSpeedSweep => 20_000,
            Scenario::DetectStatic
            | Scenario::DetectSensingTime
            | Scenario::DetectMobile
            | Scenario::GameBestResponse => 10_000,
            Scenario::RequiredSpeed | Scenario::GameEquilibrium => 0,
        }
    }

    /// Total coverage test points, split evenly over the replications.
    pub fn default_test_points(self) -> usize {
        match self {
            Scenario::AreaCoverage
            | Scenario::IntervalCoverage
            | Scenario::StraightlineOptimality => 200_000,
            _ => 0,
        }
    }

    pub fn default_intruder(self) -> IntruderSpec {
        match self {
            Scenario::DetectSensingTime | Scenario::OptimalSpeedSweep => {
                IntruderSpec::stationary().with_sensing_time(0.6)
            }
            Scenario::DetectMobile => IntruderSpec::mobile(1.0, 0.0),
            _ => IntruderSpec::stationary(),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Scenario::ALL.iter().map(|s| s.name()).collect();
                format!(
                    "unknown scenario `{s}`, expected one of: {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}`, expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// `None` writes both the CSV and the JSON summary.
    pub format: Option<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: PathBuf::from("."),
            format: None,
        }
    }
}

/// Knobs that only some scenarios read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioParams {
    /// Instants for area coverage.
    pub times: Vec<f64>,
    /// Interval length for interval coverage.
    pub interval: f64,
    /// Number of target coverages, spaced from `f_a` to `max_target`.
    pub coverage_targets: usize,
    pub max_target: f64,
    pub target_durations: Vec<f64>,
    /// Speeds for the optimal-speed sweep; `None` means 15 points in (0.3, 1.6).
    pub sweep_speeds: Option<Vec<f64>>,
    pub max_intruder_speed: f64,
    pub grid: GridSpec,
    /// Re-draw interval for the turning network in straightline-optimality.
    pub redraw_interval: f64,
    /// Detection samples for the turning network in straightline-optimality.
    pub detection_samples: usize,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams {
            times: vec![0.0, 1.0, 5.0],
            interval: 1.0,
            coverage_targets: 10,
            max_target: 0.99,
            target_durations: vec![0.5, 1.0, 2.0, 5.0, 10.0],
            sweep_speeds: None,
            max_intruder_speed: 1.0,
            grid: GridSpec::default(),
            redraw_interval: 0.2,
            detection_samples: 4_000,
        }
    }
}

impl ScenarioParams {
    pub fn sweep(&self) -> Vec<f64> {
        match &self.sweep_speeds {
            Some(v) => v.clone(),
            None => (1..=15).map(|k| 0.3 + 1.3 * k as f64 / 16.0).collect(),
        }
    }
}

/// Verdict thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Absolute error allowed on coverage fractions.
    pub coverage_abs: f64,
    /// Differences within this many standard errors count as equal.
    pub z_score: f64,
    pub round_trip: f64,
    /// Relative error allowed on rates and means.
    pub relative: f64,
    /// KS statistic must be below `ks_coefficient / sqrt(n)`.
    pub ks_coefficient: f64,
    pub closed_form: f64,
    /// Allowed distance of the sweep argmin from the optimum, in grid steps.
    pub sweep_steps: f64,
    pub equilibrium_margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            coverage_abs: 0.01,
            z_score: 3.0,
            round_trip: 1e-10,
            relative: 0.03,
            ks_coefficient: 1.63,
            closed_form: 1e-8,
            sweep_steps: 1.0,
            equilibrium_margin: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub scenario: Option<Scenario>,
    pub network: NetworkConfig,
    pub mobility: Mobility,
    pub intruder: Option<IntruderSpec>,
    pub horizon: Option<f64>,
    pub replications: Option<usize>,
    pub test_points: Option<usize>,
    pub seed: u64,
    pub output: OutputConfig,
    pub params: ScenarioParams,
    pub tolerances: Tolerances,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            scenario: None,
            network: NetworkConfig {
                density: 1.0,
                sensing_radius: 0.5,
                speed_law: SpeedDistribution::Fixed(1.0),
                direction_law: DirectionDistribution::Uniform,
            },
            mobility: Mobility::StraightLine,
            intruder: None,
            horizon: None,
            replications: None,
            test_points: None,
            seed: 42,
            output: OutputConfig::default(),
            params: ScenarioParams::default(),
            tolerances: Tolerances::default(),
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub replications: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("invalid config")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Applies flag overrides and fills every scenario default.
    pub fn resolve(mut self, scenario: Scenario, flags: &Overrides) -> Result<Self> {
        if let Some(s) = self.scenario {
            if s != scenario {
                bail!("scenario: config names `{s}` but `{scenario}` was requested");
            }
        }
        self.scenario = Some(scenario);
        if let Some(seed) = flags.seed {
            self.seed = seed;
        }
        if let Some(r) = flags.replications {
            self.replications = Some(r);
        }
        if let Some(dir) = &flags.out {
            self.output.dir = dir.clone();
        }
        if let Some(f) = flags.format {
            self.output.format = Some(f);
        }
        self.replications
            .get_or_insert(scenario.default_replications());
        self.test_points
            .get_or_insert(scenario.default_test_points());
        self.intruder.get_or_insert(scenario.default_intruder());
        self.validate(scenario)?;
        Ok(self)
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario.expect("resolved config")
    }

    pub fn replications(&self) -> usize {
        self.replications.unwrap_or(0)
    }

    pub fn test_points(&self) -> usize {
        self.test_points.unwrap_or(0)
    }

    pub fn intruder(&self) -> IntruderSpec {
        self.intruder.unwrap_or_else(IntruderSpec::stationary)
    }

    /// The single sensor speed, for scenarios whose theory assumes one.
    pub fn fixed_speed(&self) -> Result<f64> {
        match self.network.speed_law {
            SpeedDistribution::Fixed(v) => Ok(v),
            _ => bail!(
                "network.speed_law: scenario `{}` needs a fixed speed",
                self.scenario()
            ),
        }
    }

    fn validate(&self, scenario: Scenario) -> Result<()> {
        self.network.validate().context("network")?;
        self.mobility.validate().context("mobility")?;
        self.intruder().validate().context("intruder")?;
        if let Some(h) = self.horizon {
            if !(h.is_finite() && h > 0.0) {
                bail!("horizon: must be finite and > 0, got {h}");
            }
        }
        let needs_reps = !matches!(
            scenario,
            Scenario::RequiredSpeed | Scenario::GameEquilibrium
        );
        if needs_reps && self.replications() < 2 {
            bail!("replications: scenario `{scenario}` needs at least 2");
        }
        let needs_points = matches!(
            scenario,
            Scenario::AreaCoverage | Scenario::IntervalCoverage | Scenario::StraightlineOptimality
        );
        if needs_points && self.test_points() == 0 {
            bail!("test_points: scenario `{scenario}` needs at least 1");
        }
        let p = &self.params;
        if p.times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            bail!("params.times: every time must be finite and >= 0");
        }
        if !(p.interval.is_finite() && p.interval >= 0.0) {
            bail!("params.interval: must be finite and >= 0");
        }
        if !(p.max_target > 0.0 && p.max_target < 1.0) {
            bail!("params.max_target: must lie in (0, 1)");
        }
        if p.target_durations
            .iter()
            .any(|t| !(t.is_finite() && *t > 0.0))
        {
            bail!("params.target_durations: every duration must be finite and > 0");
        }
        if p.sweep().len() < 3 || p.sweep().iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            bail!("params.sweep_speeds: need at least 3 positive speeds");
        }
        if !(p.max_intruder_speed.is_finite() && p.max_intruder_speed >= 0.0) {
            bail!("params.max_intruder_speed: must be finite and >= 0");
        }
        if !(p.redraw_interval.is_finite() && p.redraw_interval > 0.0) {
            bail!("params.redraw_interval: must be finite and > 0");
        }
        if scenario == Scenario::StraightlineOptimality && p.detection_samples < 2 {
            bail!("params.detection_samples: needs at least 2");
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("coverage_abs", t.coverage_abs),
            ("z_score", t.z_score),
            ("round_trip", t.round_trip),
            ("relative", t.relative),
            ("ks_coefficient", t.ks_coefficient),
            ("closed_form", t.closed_form),
            ("sweep_steps", t.sweep_steps),
            ("equilibrium_margin", t.equilibrium_margin),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                bail!("tolerances.{name}: must be finite and >= 0, got {v}");
            }
        }
        let intruder = self.intruder();
        match scenario {
            Scenario::DetectStatic | Scenario::Durations | Scenario::StraightlineOptimality
                if intruder != IntruderSpec::stationary() =>
            {
                bail!("intruder: scenario `{scenario}` needs a stationary intruder without sensing time")
            }
            Scenario::DetectSensingTime | Scenario::OptimalSpeedSweep
                if !(intruder.speed() == 0.0 && intruder.sensing_time > 0.0) =>
            {
                bail!("intruder: scenario `{scenario}` needs a stationary intruder with sensing_time > 0")
            }
            Scenario::DetectMobile if intruder.sensing_time != 0.0 => {
                bail!("intruder.sensing_time: scenario `{scenario}` needs 0")
            }
            _ => {}
        }
        Ok(())
    }
}
