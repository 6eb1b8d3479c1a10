//! Closed-form coverage and detection-time results for Poisson-deployed
//! mobile sensors.
//!
//! Everything here is a pure function of its inputs. The only numerical step
//! is the heading integral in [`effective_speed`], done with composite Simpson
//! over one period starting at the intruder heading so that the kink of the
//! relative-speed factor at matched headings falls on the interval endpoints.

use std::f64::consts::{PI, SQRT_2, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{wrap_angle, DirectionDistribution};
use crate::quadrature::{simpson_with_error, QuadratureResult, DEFAULT_PANELS, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("{name} must be finite and {bound}, got {value}")]
    OutOfDomain {
        name: &'static str,
        bound: &'static str,
        value: f64,
    },
    #[error("target coverage {target} is below the initial coverage {initial}")]
    BelowInitialCoverage { target: f64, initial: f64 },
    #[error("sensing time {sensing_time} >= 2r/v = {limit}: the intruder is never detected")]
    NeverDetected { sensing_time: f64, limit: f64 },
    #[error("quadrature error estimate {error_estimate:e} exceeds tolerance {tolerance:e}")]
    QuadratureNotConverged { error_estimate: f64, tolerance: f64 },
}

fn nonneg(name: &'static str, value: f64) -> Result<f64, AnalyticError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(AnalyticError::OutOfDomain {
            name,
            bound: ">= 0",
            value,
        })
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64, AnalyticError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(AnalyticError::OutOfDomain {
            name,
            bound: "> 0",
            value,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageSummary {
    /// Fraction of area covered at any instant.
    pub area: f64,
    /// Fraction of area covered at least once during the interval.
    pub interval: f64,
    /// Long-run fraction of time a point is covered.
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DurationSummary {
    pub mean_uncovered: f64,
    pub mean_covered: f64,
    pub mean_cycle: f64,
}

/// Exponential first-detection law with the given rate; a zero rate means
/// the intruder is never detected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionLaw {
    pub rate: f64,
}

impl DetectionLaw {
    pub fn mean(&self) -> f64 {
        if self.rate > 0.0 {
            1.0 / self.rate
        } else {
            f64::INFINITY
        }
    }

    /// `P(X >= t)`.
    pub fn survival(&self, t: f64) -> f64 {
        (-self.rate * t).exp()
    }

    pub fn cdf(&self, t: f64) -> f64 {
        -(-self.rate * t).exp_m1()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensingTimeLaw {
    pub effective_radius: f64,
    /// Rate of the exponential part `T` of `Y = t_d + T`.
    pub rate: f64,
    pub sensing_time: f64,
    pub mean_detection: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalSpeed {
    pub speed: f64,
    pub mean_detection: f64,
}

/// `1 − exp(−λπr²)`; also the long-run fraction of time a point is covered.
pub fn area_coverage(density: f64, radius: f64) -> Result<f64, AnalyticError> {
    let density = nonneg("density", density)?;
    let radius = nonneg("radius", radius)?;
    Ok(-(-density * PI * radius * radius).exp_m1())
}

/// Fraction of area covered at least once during an interval of length
/// `duration` when sensors move in straight lines with mean speed `mean_speed`.
pub fn interval_coverage_straight(
    density: f64,
    radius: f64,
    mean_speed: f64,
    duration: f64,
) -> Result<f64, AnalyticError> {
    let density = nonneg("density", density)?;
    let radius = nonneg("radius", radius)?;
    let mean_speed = nonneg("mean_speed", mean_speed)?;
    let duration = nonneg("duration", duration)?;
    let swept = PI * radius * radius + 2.0 * radius * mean_speed * duration;
    Ok(-(-density * swept).exp_m1())
}

pub fn coverage_summary(
    density: f64,
    radius: f64,
    mean_speed: f64,
    duration: f64,
) -> Result<CoverageSummary, AnalyticError> {
    let area = area_coverage(density, radius)?;
    Ok(CoverageSummary {
        area,
        interval: interval_coverage_straight(density, radius, mean_speed, duration)?,
        time: area,
    })
}

/// Mean sensor speed at which straight-line sensors cover a fraction `target`
/// of the area within `duration`.
pub fn required_speed(
    density: f64,
    radius: f64,
    target: f64,
    duration: f64,
) -> Result<f64, AnalyticError> {
    let density = positive("density", density)?;
    let radius = positive("radius", radius)?;
    let duration = positive("duration", duration)?;
    if !(target.is_finite() && target < 1.0) {
        return Err(AnalyticError::OutOfDomain {
            name: "target",
            bound: "< 1",
            value: target,
        });
    }
    let initial = area_coverage(density, radius)?;
    if target < initial {
        return Err(AnalyticError::BelowInitialCoverage { target, initial });
    }
    let v =
        -(density * PI * radius * radius + (-target).ln_1p()) / (2.0 * density * radius * duration);
    // rounding at the threshold may leave a tiny negative
    Ok(v.max(0.0))
}

/// First detection of a static intruder: exponential with rate `2λr·v̄`.
pub fn static_detection_law(
    density: f64,
    radius: f64,
    mean_speed: f64,
) -> Result<DetectionLaw, AnalyticError> {
    let density = nonneg("density", density)?;
    let radius = nonneg("radius", radius)?;
    let mean_speed = nonneg("mean_speed", mean_speed)?;
    Ok(DetectionLaw {
        rate: 2.0 * density * radius * mean_speed,
    })
}

/// Mean covered and uncovered stretches of a fixed point's timeline.
pub fn duration_summary(
    density: f64,
    radius: f64,
    speed: f64,
) -> Result<DurationSummary, AnalyticError> {
    let density = positive("density", density)?;
    let radius = positive("radius", radius)?;
    let speed = positive("speed", speed)?;
    let hit_rate = 2.0 * density * radius * speed;
    let a = density * PI * radius * radius;
    Ok(DurationSummary {
        mean_uncovered: 1.0 / hit_rate,
        mean_covered: a.exp_m1() / hit_rate,
        mean_cycle: a.exp() / hit_rate,
    })
}

/// Detection with a minimum contact time `t_d`: `Y = t_d + T`, with `T`
/// exponential at rate `2λ·r_eff·v` and `r_eff = sqrt(r² − v²t_d²/4)`.
pub fn sensing_time_law(
    density: f64,
    radius: f64,
    speed: f64,
    sensing_time: f64,
) -> Result<SensingTimeLaw, AnalyticError> {
    let density = nonneg("density", density)?;
    let radius = positive("radius", radius)?;
    let speed = nonneg("speed", speed)?;
    let sensing_time = nonneg("sensing_time", sensing_time)?;
    let half_chord = 0.5 * speed * sensing_time;
    if half_chord >= radius {
        return Err(AnalyticError::NeverDetected {
            sensing_time,
            limit: 2.0 * radius / speed,
        });
    }
    let effective_radius = ((radius - half_chord) * (radius + half_chord)).sqrt();
    let rate = 2.0 * density * effective_radius * speed;
    let mean_detection = if rate > 0.0 {
        sensing_time + 1.0 / rate
    } else {
        f64::INFINITY
    };
    Ok(SensingTimeLaw {
        effective_radius,
        rate,
        sensing_time,
        mean_detection,
    })
}

/// Sensor speed minimizing the mean detection time under a sensing time `t_d`.
pub fn optimal_speed(
    density: f64,
    radius: f64,
    sensing_time: f64,
) -> Result<OptimalSpeed, AnalyticError> {
    let density = positive("density", density)?;
    let radius = positive("radius", radius)?;
    let sensing_time = positive("sensing_time", sensing_time)?;
    let lr2 = density * radius * radius;
    Ok(OptimalSpeed {
        speed: SQRT_2 * radius / sensing_time,
        mean_detection: (1.0 + 2.0 * lr2) * sensing_time / (2.0 * lr2),
    })
}

/// `w(u) = sqrt(1 − 4c/(1+c)² · cos²(u/2))`, the relative speed of a sensor
/// in the intruder frame divided by `v_s(1+c)`.
pub fn relative_speed_factor(u: f64, c: f64) -> f64 {
    let c_hat = 1.0 + c;
    let k = 4.0 * c / (c_hat * c_hat);
    let half = (0.5 * u).cos();
    (1.0 - k * half * half).max(0.0).sqrt()
}

/// Mean relative sensor speed seen by an intruder moving at `intruder_speed`
/// along `intruder_heading`, with the quadrature error estimate.
///
/// Point-mass components are summed exactly; only the density part is
/// integrated.
pub fn effective_speed_with_error(
    law: &DirectionDistribution,
    intruder_heading: f64,
    intruder_speed: f64,
    sensor_speed: f64,
    panels: usize,
) -> QuadratureResult {
    if intruder_speed == 0.0 {
        // w ≡ 1 and the law integrates to one
        return QuadratureResult {
            value: sensor_speed,
            error_estimate: 0.0,
        };
    }
    let c = intruder_speed / sensor_speed;
    let scale = sensor_speed * (1.0 + c);
    let theta_t = wrap_angle(intruder_heading);
    let atoms: f64 = law
        .atoms()
        .iter()
        .map(|(w, theta_s)| w * relative_speed_factor(theta_s - theta_t, c))
        .sum();
    let continuous = if law.continuous_weight() > 0.0 {
        simpson_with_error(
            |u| relative_speed_factor(u, c) * law.density(theta_t + u),
            0.0,
            TAU,
            panels,
        )
    } else {
        QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
        }
    };
    QuadratureResult {
        value: scale * (atoms + continuous.value),
        error_estimate: scale * continuous.error_estimate,
    }
}

/// Effective sensor speed `v̄_s` for a mobile intruder. Fails when the
/// quadrature error estimate exceeds the default tolerance.
pub fn effective_speed(
    law: &DirectionDistribution,
    intruder_heading: f64,
    intruder_speed: f64,
    sensor_speed: f64,
) -> Result<f64, AnalyticError> {
    positive("sensor_speed", sensor_speed)?;
    nonneg("intruder_speed", intruder_speed)?;
    let r = effective_speed_with_error(
        law,
        intruder_heading,
        intruder_speed,
        sensor_speed,
        DEFAULT_PANELS,
    );
    // tolerance applies to the heading integral, before scaling by v_s(1+c)
    let scale = sensor_speed + intruder_speed;
    if r.error_estimate > DEFAULT_TOLERANCE * scale {
        return Err(AnalyticError::QuadratureNotConverged {
            error_estimate: r.error_estimate / scale,
            tolerance: DEFAULT_TOLERANCE,
        });
    }
    Ok(r.value)
}

/// Detection of a mobile intruder: exponential with rate `2λr·v̄_s`.
pub fn mobile_detection_law(
    density: f64,
    radius: f64,
    effective_speed: f64,
) -> Result<DetectionLaw, AnalyticError> {
    static_detection_law(density, radius, effective_speed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    // Frozen with an independent mpmath evaluation (20 digits).
    const F_A_1_1: f64 = 0.956_786_081_736_227_75;
    const F_A_1_HALF: f64 = 0.544_061_872_234_003_76;
    const F_I_1_HALF_1_1: f64 = 0.832_269_736_348_691_63;
    const MEAN_COVERED_REF: f64 = 1.193_280_050_738_015_5;
    const REQUIRED_SPEED_09_2: f64 = 0.758_593_464_798_298_8;

    #[test]
    fn area_coverage_values() {
        assert_eq!(area_coverage(0.0, 1.0).unwrap(), 0.0);
        assert!((area_coverage(1.0, 1.0).unwrap() - F_A_1_1).abs() < 1e-15);
        assert!((area_coverage(1.0, 0.5).unwrap() - F_A_1_HALF).abs() < 1e-15);
        assert!(area_coverage(-1.0, 1.0).is_err());
        assert!(area_coverage(1.0, -0.1).is_err());
    }

    #[test]
    fn interval_coverage_values() {
        let base = interval_coverage_straight(1.0, 0.5, 1.0, 0.0).unwrap();
        assert_eq!(base, area_coverage(1.0, 0.5).unwrap());
        let one = interval_coverage_straight(1.0, 0.5, 1.0, 1.0).unwrap();
        assert!((one - F_I_1_HALF_1_1).abs() < 1e-15);
        let still = interval_coverage_straight(1.0, 0.5, 0.0, 5.0).unwrap();
        assert_eq!(still, base);
        assert!(interval_coverage_straight(1.0, 0.5, -1.0, 1.0).is_err());
    }

    #[test]
    fn required_speed_values() {
        let initial = area_coverage(1.0, 0.5).unwrap();
        assert_eq!(required_speed(1.0, 0.5, initial, 1.0).unwrap(), 0.0);
        let v = required_speed(1.0, 0.5, F_I_1_HALF_1_1, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // the rounded 7-digit target inverts to 1 up to its own rounding
        let v = required_speed(1.0, 0.5, 0.832_267_6, 1.0).unwrap();
        assert!((v - 1.0).abs() < 2e-5);
        let v = required_speed(1.0, 0.5, 0.9, 2.0).unwrap();
        assert!((v - REQUIRED_SPEED_09_2).abs() < 1e-14);
        let back = interval_coverage_straight(1.0, 0.5, v, 2.0).unwrap();
        assert!((back - 0.9).abs() < 1e-12);
    }

    #[test]
    fn required_speed_rejects_invalid_targets() {
        assert!(matches!(
            required_speed(1.0, 0.5, 0.3, 1.0),
            Err(AnalyticError::BelowInitialCoverage { .. })
        ));
        assert!(required_speed(1.0, 0.5, 1.0, 1.0).is_err());
        assert!(required_speed(1.0, 0.5, 0.9, 0.0).is_err());
    }

    #[test]
    fn static_detection_values() {
        let law = static_detection_law(1.0, 0.5, 1.0).unwrap();
        assert_eq!(law.rate, 1.0);
        assert_eq!(law.mean(), 1.0);
        assert!((law.survival(2.0) - (-2.0f64).exp()).abs() < 1e-15);
        let still = static_detection_law(1.0, 0.5, 0.0).unwrap();
        assert_eq!(still.rate, 0.0);
        assert_eq!(still.mean(), f64::INFINITY);
        assert_eq!(static_detection_law(2.0, 0.5, 1.0).unwrap().rate, 2.0);
    }

    #[test]
    fn duration_values() {
        let d = duration_summary(1.0, 0.5, 1.0).unwrap();
        assert!((d.mean_uncovered - 1.0).abs() < 1e-15);
        assert!((d.mean_covered - MEAN_COVERED_REF).abs() < 1e-14);
        assert!((d.mean_cycle - (1.0 + MEAN_COVERED_REF)).abs() < 1e-14);
        let fast = duration_summary(1.0, 0.5, 2.0).unwrap();
        assert!((fast.mean_covered - 0.5 * d.mean_covered).abs() < 1e-15);
        assert!((fast.mean_uncovered - 0.5 * d.mean_uncovered).abs() < 1e-15);
        assert!((fast.mean_cycle - 0.5 * d.mean_cycle).abs() < 1e-15);
        assert!(duration_summary(1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn sensing_time_values() {
        let zero = sensing_time_law(1.0, 0.5, 1.0, 0.0).unwrap();
        assert_eq!(zero.effective_radius, 0.5);
        assert_eq!(zero.mean_detection, 1.0);
        let law = sensing_time_law(1.0, 0.5, 1.0, 0.6).unwrap();
        assert!((law.effective_radius - 0.4).abs() < 1e-15);
        assert!((law.mean_detection - 1.85).abs() < 1e-14);
        let edge = sensing_time_law(1.0, 0.5, 1.0, 1.0 - 1e-9).unwrap();
        assert!(edge.effective_radius < 1e-4);
        assert!(edge.mean_detection > 1e3);
        assert!(matches!(
            sensing_time_law(1.0, 0.5, 1.0, 1.0),
            Err(AnalyticError::NeverDetected { .. })
        ));
    }

    #[test]
    fn optimal_speed_values() {
        let opt = optimal_speed(1.0, 0.5, 0.6).unwrap();
        assert!((opt.speed - 1.178_511_301_977_579_3).abs() < 1e-15);
        assert!((opt.mean_detection - 1.8).abs() < 1e-14);
        let at = sensing_time_law(1.0, 0.5, opt.speed, 0.6).unwrap();
        assert!((at.mean_detection - opt.mean_detection).abs() < 1e-12);
        let lo = sensing_time_law(1.0, 0.5, 0.5 * opt.speed, 0.6).unwrap();
        assert!(at.mean_detection < lo.mean_detection);
        // 1.5·v* exceeds 2r/t_d: contact never lasts t_d, the mean is infinite
        assert!(matches!(
            sensing_time_law(1.0, 0.5, 1.5 * opt.speed, 0.6),
            Err(AnalyticError::NeverDetected { .. })
        ));
        let hi = sensing_time_law(1.0, 0.5, 1.25 * opt.speed, 0.6).unwrap();
        assert!(at.mean_detection < hi.mean_detection);
        assert!(optimal_speed(1.0, 0.5, 0.0).is_err());
    }

    fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
        let g = 0.5 * (5f64.sqrt() - 1.0);
        while b - a > 1e-10 {
            let x1 = b - g * (b - a);
            let x2 = a + g * (b - a);
            if f(x1) < f(x2) {
                b = x2;
            } else {
                a = x1;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn mean_detection_is_minimized_at_optimal_speed() {
        for &(density, radius, td) in &[(1.0, 0.5, 0.6), (2.0, 1.0, 0.3), (0.5, 2.0, 1.7)] {
            let limit = 2.0 * radius / td;
            let mean = |v: f64| {
                sensing_time_law(density, radius, v, td)
                    .unwrap()
                    .mean_detection
            };
            let argmin = golden_min(mean, 1e-6 * limit, limit * (1.0 - 1e-6));
            let opt = optimal_speed(density, radius, td).unwrap();
            assert!(
                (argmin - opt.speed).abs() < 1e-4 * opt.speed,
                "{argmin} vs {}",
                opt.speed
            );
            // unimodal: sampled means decrease then increase
            let grid: Vec<f64> = (1..200).map(|i| mean(limit * i as f64 / 200.0)).collect();
            let k = grid
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0;
            assert!(grid[..=k].windows(2).all(|w| w[0] >= w[1]));
            assert!(grid[k..].windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn relative_speed_factor_values() {
        assert_eq!(relative_speed_factor(0.0, 1.0), 0.0);
        for c in [0.0, 0.3, 1.0, 2.5] {
            assert!((relative_speed_factor(PI, c) - 1.0).abs() < 1e-15);
        }
        assert!((relative_speed_factor(FRAC_PI_2, 1.0) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn effective_speed_uniform_cases() {
        let u = DirectionDistribution::Uniform;
        assert!((effective_speed(&u, 0.3, 0.0, 1.7).unwrap() - 1.7).abs() < 1e-12);
        let v = effective_speed(&u, 0.0, 1.0, 1.0).unwrap();
        assert!((v - 4.0 / PI).abs() < 1e-12);
        // kink moves with the heading; the shifted interval keeps it at the ends
        let v = effective_speed(&u, 2.1, 2.0, 2.0).unwrap();
        assert!((v - 8.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn effective_speed_point_mass_is_velocity_difference() {
        let law = DirectionDistribution::point_mass(0.7);
        for vt in [0.0, 0.5, 1.0, 1.5] {
            let v = effective_speed(&law, 0.7, vt, 1.0).unwrap();
            assert!((v - (vt - 1.0f64).abs()).abs() < 1e-12, "{vt}: {v}");
        }
    }

    #[test]
    fn effective_speed_von_mises_matches_reference() {
        // mpmath: (1+c)·∫ w(θ−θt) f_vm(θ; 0, κ) dθ
        let cases = [
            (2.0, FRAC_PI_2, 0.5, 1.081_103_971_718_751_7),
            (4.0, 0.0, 0.5, 0.607_665_503_402_327_4),
            (2.0, 0.0, 1.0, 0.621_828_442_791_680_9),
        ];
        for (kappa, theta_t, vt, expected) in cases {
            let law = DirectionDistribution::von_mises(0.0, kappa);
            let v = effective_speed(&law, theta_t, vt, 1.0).unwrap();
            assert!((v - expected).abs() < 1e-10, "{kappa} {theta_t} {vt}: {v}");
        }
    }

    #[test]
    fn mobile_detection_values() {
        assert_eq!(mobile_detection_law(1.0, 0.5, 1.0).unwrap().rate, 1.0);
        let r = mobile_detection_law(1.0, 0.5, 4.0 / PI).unwrap().rate;
        assert!((r - 1.273_239_544_735_162_7).abs() < 1e-15);
        let co_moving = mobile_detection_law(1.0, 0.5, 0.0).unwrap();
        assert_eq!(co_moving.mean(), f64::INFINITY);
    }

    #[test]
    fn uniform_effective_speed_is_heading_invariant() {
        let u = DirectionDistribution::Uniform;
        for vt in [0.25, 1.0, 3.0] {
            let reference = effective_speed(&u, 0.0, vt, 1.0).unwrap();
            for k in 0..36 {
                let theta = k as f64 * TAU / 36.0;
                let v = effective_speed(&u, theta, vt, 1.0).unwrap();
                assert!((v - reference).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn uniform_effective_speed_is_nondecreasing_in_intruder_speed() {
        let u = DirectionDistribution::Uniform;
        let values: Vec<f64> = (0..100)
            .map(|i| effective_speed(&u, 0.0, 3.0 * i as f64 / 99.0, 1.0).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!((values[0] - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn area_coverage_monotone(l in 0.0..5.0f64, r in 0.0..3.0f64, dl in 0.0..1.0f64, dr in 0.0..1.0f64) {
            let base = area_coverage(l, r).unwrap();
            prop_assert!(area_coverage(l + dl, r).unwrap() >= base);
            prop_assert!(area_coverage(l, r + dr).unwrap() >= base);
            prop_assert!((0.0..=1.0).contains(&base));
        }

        #[test]
        fn interval_coverage_monotone(
            l in 0.0..3.0f64, r in 0.0..2.0f64, v in 0.0..3.0f64, t in 0.0..5.0f64, d in 0.0..1.0f64,
        ) {
            let base = interval_coverage_straight(l, r, v, t).unwrap();
            prop_assert!(base >= area_coverage(l, r).unwrap());
            prop_assert!(interval_coverage_straight(l + d, r, v, t).unwrap() >= base);
            prop_assert!(interval_coverage_straight(l, r + d, v, t).unwrap() >= base);
            prop_assert!(interval_coverage_straight(l, r, v + d, t).unwrap() >= base);
            prop_assert!(interval_coverage_straight(l, r, v, t + d).unwrap() >= base);
        }

        #[test]
        fn required_speed_round_trips(
            l in 0.1..3.0f64, r in 0.1..2.0f64, gap in 0.0..1.0f64, t in 0.1..10.0f64,
        ) {
            let initial = area_coverage(l, r).unwrap();
            let target = initial + gap * (1.0 - initial) * 0.999;
            prop_assume!(target < 1.0);
            let v = required_speed(l, r, target, t).unwrap();
            let back = interval_coverage_straight(l, r, v, t).unwrap();
            prop_assert!((back - target).abs() < 1e-10);
        }

        #[test]
        fn covered_fraction_of_cycle_is_area_coverage(l in 0.05..3.0f64, r in 0.05..1.5f64, v in 0.1..5.0f64) {
            let d = duration_summary(l, r, v).unwrap();
            let f = area_coverage(l, r).unwrap();
            prop_assert!((d.mean_covered / d.mean_cycle - f).abs() < 1e-12);
            prop_assert!((d.mean_cycle - d.mean_covered - d.mean_uncovered).abs() < 1e-12 * d.mean_cycle);
        }

        #[test]
        fn sensing_time_delays_detection(l in 0.1..3.0f64, r in 0.1..2.0f64, v in 0.1..3.0f64, frac in 0.01..0.99f64) {
            let td = frac * 2.0 * r / v;
            let y = sensing_time_law(l, r, v, td).unwrap();
            let x = static_detection_law(l, r, v).unwrap();
            prop_assert!(y.mean_detection > x.mean());
        }

        #[test]
        fn relative_speed_factor_range(u in -20.0..20.0f64, c in 0.0..5.0f64) {
            let w = relative_speed_factor(u, c);
            let lower = (1.0 - c).abs() / (1.0 + c);
            prop_assert!(w >= lower - 1e-12 && w <= 1.0 + 1e-12);
            prop_assert!((relative_speed_factor(u + TAU, c) - w).abs() < 1e-9);
            // law of cosines
            let rel = (1.0 + c * c - 2.0 * c * u.cos()).max(0.0).sqrt();
            prop_assert!((rel - (1.0 + c) * w).abs() < 1e-9);
        }
    }
}
