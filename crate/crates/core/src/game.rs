//! Zero-sum mobility game between the sensor fleet and an intruder.
//!
//! The sensors commit to a heading law; the intruder, knowing only that law,
//! picks a straight-line speed and heading that minimize the effective sensor
//! speed and so maximize its expected detection time `1/(2λr·v̄_s)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic::{effective_speed_with_error, relative_speed_factor};
use crate::model::{wrap_angle, DirectionDistribution, ModelError};
use crate::quadrature::DEFAULT_PANELS;
use crate::replicate::map_items;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("{field} must be finite and {bound}, got {value}")]
    InvalidParameter {
        field: &'static str,
        bound: &'static str,
        value: f64,
    },
    #[error("grid needs at least 2 speeds and 4 angles")]
    InvalidGrid,
    #[error("law family must contain the uniform law")]
    MissingUniform,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameParams {
    pub density: f64,
    pub radius: f64,
    pub sensor_speed: f64,
    pub max_intruder_speed: f64,
}

impl GameParams {
    pub fn validate(&self) -> Result<(), GameError> {
        let check = |field, value: f64, strict: bool| {
            let ok = value.is_finite() && if strict { value > 0.0 } else { value >= 0.0 };
            if ok {
                Ok(())
            } else {
                Err(GameError::InvalidParameter {
                    field,
                    bound: if strict { "> 0" } else { ">= 0" },
                    value,
                })
            }
        };
        check("density", self.density, true)?;
        check("radius", self.radius, true)?;
        check("sensor_speed", self.sensor_speed, true)?;
        check("max_intruder_speed", self.max_intruder_speed, false)
    }

    pub fn payoff(&self, effective_speed: f64) -> Payoff {
        if effective_speed <= UNDETECTABLE_SPEED * self.sensor_speed {
            Payoff::Undetectable
        } else {
            Payoff::Finite(1.0 / (2.0 * self.density * self.radius * effective_speed))
        }
    }
}

/// Relative effective speed at or below which the intruder is treated as
/// never detected.
pub const UNDETECTABLE_SPEED: f64 = 1e-12;

/// Expected detection time; `Undetectable` ranks above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payoff {
    Finite(f64),
    Undetectable,
}

impl Payoff {
    pub fn as_f64(&self) -> f64 {
        match self {
            Payoff::Finite(v) => *v,
            Payoff::Undetectable => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub angles: usize,
    pub speeds: usize,
    /// Simpson panels for the coarse grid pass, rounded up to a multiple of
    /// `angles`. Refinement always uses the full quadrature.
    pub coarse_panels: usize,
    /// Relative width at which golden-section refinement stops.
    pub refine_tolerance: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            angles: 720,
            speeds: 201,
            coarse_panels: 1440,
            refine_tolerance: 1e-6,
        }
    }
}

impl GridSpec {
    fn validate(&self) -> Result<(), GameError> {
        if self.speeds < 2
            || self.angles < 4
            || self.refine_tolerance.is_nan()
            || self.refine_tolerance <= 0.0
        {
            return Err(GameError::InvalidGrid);
        }
        Ok(())
    }

    pub fn angle_step(&self) -> f64 {
        TAU / self.angles as f64
    }

    pub fn speed_step(&self, max_speed: f64) -> f64 {
        max_speed / (self.speeds - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestResponse {
    pub heading: f64,
    pub speed: f64,
    pub min_effective_speed: f64,
    pub payoff: Payoff,
}

/// Effective speed on a fixed node grid, for the coarse search.
struct CoarseEvaluator {
    nodes: usize,
    stride: usize,
    // Simpson weight times density at each node; empty if the law has no density
    weighted_density: Vec<f64>,
    atoms: Vec<(f64, f64)>,
}

impl CoarseEvaluator {
    fn new(law: &DirectionDistribution, grid: &GridSpec) -> Self {
        let nodes = grid
            .coarse_panels
            .max(grid.angles)
            .next_multiple_of(grid.angles);
        let nodes = if nodes % 2 == 1 { 2 * nodes } else { nodes };
        let h = TAU / nodes as f64;
        let weighted_density = if law.continuous_weight() > 0.0 {
            (0..nodes)
                .map(|j| {
                    // periodic Simpson: 4/3 on odd nodes, 2/3 on even ones
                    let w = if j % 2 == 1 { 4.0 } else { 2.0 } * h / 3.0;
                    w * law.density(j as f64 * h)
                })
                .collect()
        } else {
            Vec::new()
        };
        CoarseEvaluator {
            nodes,
            stride: nodes / grid.angles,
            weighted_density,
            atoms: law.atoms(),
        }
    }

    /// Effective speeds for every grid angle at one intruder speed.
    fn row(&self, intruder_speed: f64, sensor_speed: f64) -> Vec<f64> {
        let c = intruder_speed / sensor_speed;
        let scale = sensor_speed * (1.0 + c);
        let h = TAU / self.nodes as f64;
        let table: Vec<f64> = (0..self.nodes)
            .map(|k| relative_speed_factor(k as f64 * h, c))
            .collect();
        (0..self.nodes / self.stride)
            .map(|a| {
                let shift = a * self.stride;
                let theta_t = shift as f64 * h;
                let mut integral = 0.0;
                if !self.weighted_density.is_empty() {
                    let n = self.nodes;
                    for (j, wd) in self.weighted_density.iter().enumerate() {
                        integral += wd * table[(j + n - shift) % n];
                    }
                }
                let atoms: f64 = self
                    .atoms
                    .iter()
                    .map(|(w, theta_s)| w * relative_speed_factor(theta_s - theta_t, c))
                    .sum();
                scale * (integral + atoms)
            })
            .collect()
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (lo0, hi0) = (a, b);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let stop = tol * a.abs().max(b.abs()).max(1.0);
    while b - a > stop {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    // the interior estimate may lose to a bracket end when the minimum sits on it
    [(lo0, f(lo0)), (hi0, f(hi0)), (mid, f(mid))]
        .into_iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .unwrap()
}

fn fine_effective_speed(
    law: &DirectionDistribution,
    heading: f64,
    speed: f64,
    sensor_speed: f64,
) -> f64 {
    effective_speed_with_error(law, heading, speed, sensor_speed, DEFAULT_PANELS).value
}

/// Intruder's best straight-line response to a sensor heading law: grid
/// search over heading × speed, then coordinate-wise golden-section refinement
/// of the best grid cells and of the co-moving point of every atom.
pub fn best_response_intruder(
    law: &DirectionDistribution,
    params: &GameParams,
    grid: &GridSpec,
) -> Result<BestResponse, GameError> {
    params.validate()?;
    grid.validate()?;
    law.validate()?;
    let vs = params.sensor_speed;
    let vmax = params.max_intruder_speed;
    let dv = grid.speed_step(vmax);
    let dtheta = grid.angle_step();

    let evaluator = CoarseEvaluator::new(law, grid);
    let speeds: Vec<f64> = (0..grid.speeds).map(|k| k as f64 * dv).collect();
    let rows = map_items(&speeds, |&v| evaluator.row(v, vs));

    let mut cells: Vec<(f64, usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(k, row)| row.iter().enumerate().map(move |(a, val)| (*val, a, k)))
        .collect();
    cells.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut starts: Vec<(f64, f64)> = Vec::new();
    for &(_, a, k) in &cells {
        let theta = a as f64 * dtheta;
        let far = starts.iter().all(|&(t, v)| {
            crate::model::angle_diff(t, theta).abs() > 2.0 * dtheta
                || (v - speeds[k]).abs() > 2.0 * dv
        });
        if far {
            starts.push((theta, speeds[k]));
        }
        if starts.len() == 4 {
            break;
        }
    }

    let objective = |theta: f64, v: f64| fine_effective_speed(law, theta, v, vs);
    let mut best: Option<(f64, f64, f64)> = None;
    let mut consider = |theta: f64, v: f64, val: f64| {
        if best.is_none_or(|b| val < b.2) {
            best = Some((wrap_angle(theta), v, val));
        }
    };

    for (_, theta_s) in law.atoms() {
        let v = vs.min(vmax);
        consider(theta_s, v, objective(theta_s, v));
    }

    let tol = grid.refine_tolerance;
    for (theta0, v0) in starts {
        let (mut theta, mut v) = (theta0, v0);
        let mut val = objective(theta, v);
        for _ in 0..50 {
            let (t_new, _) =
                golden_section(&|t| objective(t, v), theta - dtheta, theta + dtheta, tol);
            let lo = (v - dv).max(0.0);
            let hi = (v + dv).min(vmax);
            let (v_new, f_new) = if hi > lo {
                golden_section(&|s| objective(t_new, s), lo, hi, tol)
            } else {
                (v, objective(t_new, v))
            };
            let moved = crate::model::angle_diff(t_new, theta).abs() > tol * TAU
                || (v_new - v).abs() > tol * vmax.max(1e-300);
            let improved = f_new < val;
            if improved {
                theta = t_new;
                v = v_new;
                val = f_new;
            }
            if !improved || !moved {
                break;
            }
        }
        consider(theta, v, val);
    }

    let (heading, speed, min_effective_speed) = best.expect("at least one candidate");
    Ok(BestResponse {
        heading,
        speed,
        min_effective_speed,
        payoff: params.payoff(min_effective_speed),
    })
}

/// Expected detection time the intruder secures against `law`.
pub fn minimax_value(
    law: &DirectionDistribution,
    params: &GameParams,
    grid: &GridSpec,
) -> Result<Payoff, GameError> {
    Ok(best_response_intruder(law, params, grid)?.payoff)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedLaw {
    pub name: String,
    pub law: DirectionDistribution,
}

impl NamedLaw {
    pub fn new(name: impl Into<String>, law: DirectionDistribution) -> Self {
        NamedLaw {
            name: name.into(),
            law,
        }
    }
}

/// Uniform, a point mass, two von Mises concentrations and a two-point mixture.
pub fn reference_family() -> Vec<NamedLaw> {
    vec![
        NamedLaw::new("uniform", DirectionDistribution::Uniform),
        NamedLaw::new("point_mass_0", DirectionDistribution::point_mass(0.0)),
        NamedLaw::new("von_mises_0_2", DirectionDistribution::von_mises(0.0, 2.0)),
        NamedLaw::new("von_mises_0_8", DirectionDistribution::von_mises(0.0, 8.0)),
        NamedLaw::new(
            "two_point_0_half_pi",
            DirectionDistribution::equal_mixture(vec![
                DirectionDistribution::point_mass(0.0),
                DirectionDistribution::point_mass(std::f64::consts::FRAC_PI_2),
            ]),
        ),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawEvaluation {
    pub name: String,
    pub best_response: BestResponse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub laws: Vec<LawEvaluation>,
    /// Uniform's intruder-minimized effective speed minus the best other
    /// law's; `+∞` when the family is just the uniform law.
    pub uniform_margin: f64,
    /// No law beats uniform by more than the slack.
    pub uniform_is_maximal: bool,
    /// Intruder best-response speed against uniform sensors.
    pub uniform_response_speed: f64,
    /// That speed is within one grid step of zero.
    pub stationary_intruder_is_best: bool,
    pub passed: bool,
}

/// Slack on the ordering of intruder-minimized effective speeds.
pub const EQUILIBRIUM_SLACK: f64 = 1e-6;

/// Checks that uniform headings maximize the intruder-minimized effective
/// speed over `family`, and that a stationary intruder is the best response
/// to uniform sensors.
pub fn equilibrium_check(
    params: &GameParams,
    family: &[NamedLaw],
    grid: &GridSpec,
) -> Result<EquilibriumReport, GameError> {
    if !family
        .iter()
        .any(|l| l.law == DirectionDistribution::Uniform)
    {
        return Err(GameError::MissingUniform);
    }
    let laws = family
        .iter()
        .map(|l| {
            Ok(LawEvaluation {
                name: l.name.clone(),
                best_response: best_response_intruder(&l.law, params, grid)?,
            })
        })
        .collect::<Result<Vec<_>, GameError>>()?;
    let uniform = family
        .iter()
        .zip(&laws)
        .find(|(l, _)| l.law == DirectionDistribution::Uniform)
        .map(|(_, e)| e.best_response)
        .expect("checked above");
    let best_other = family
        .iter()
        .zip(&laws)
        .filter(|(l, _)| l.law != DirectionDistribution::Uniform)
        .map(|(_, e)| e.best_response.min_effective_speed)
        .fold(f64::NEG_INFINITY, f64::max);
    let uniform_margin = uniform.min_effective_speed - best_other;
    let uniform_is_maximal = uniform_margin >= -EQUILIBRIUM_SLACK;
    let step = grid.speed_step(params.max_intruder_speed);
    let stationary_intruder_is_best = uniform.speed <= step;
    Ok(EquilibriumReport {
        laws,
        uniform_margin,
        uniform_is_maximal,
        uniform_response_speed: uniform.speed,
        stationary_intruder_is_best,
        passed: uniform_is_maximal && stationary_intruder_is_best,
    })
}
