//! Simulator against closed forms away from the reference configuration.

use std::f64::consts::FRAC_PI_2;

use dyncov::analytic::{duration_summary, effective_speed, static_detection_law};
use dyncov::game::{GameParams, Payoff};
use dyncov::sim::{detection_samples, duration_experiment, DetectionPlan};
use dyncov::stats::{exp_rate_mle, proportion_ci, SampleSummary};
use dyncov::{DirectionDistribution, IntruderSpec, Mobility, NetworkConfig, SpeedDistribution};

fn network(law: DirectionDistribution) -> NetworkConfig {
    NetworkConfig::new(1.0, 0.5, SpeedDistribution::Fixed(1.0), law).unwrap()
}

/// Mean simulated detection time sits within 3 SE of the game payoff.
fn check_payoff(law: DirectionDistribution, vt: f64, heading: f64, seed: u64) {
    let params = GameParams {
        density: 1.0,
        radius: 0.5,
        sensor_speed: 1.0,
        max_intruder_speed: vt,
    };
    let veff = effective_speed(&law, heading, vt, 1.0).unwrap();
    let Payoff::Finite(payoff) = params.payoff(veff) else {
        panic!("expected a finite payoff");
    };
    let set = detection_samples(
        &network(law),
        Mobility::StraightLine,
        &IntruderSpec::mobile(vt, heading),
        &DetectionPlan::for_rate(1.0 / payoff),
        3_000,
        seed,
    )
    .unwrap();
    let s = set.summary();
    assert!(
        (s.mean - payoff).abs() < 3.0 * s.std_error,
        "mean {} vs payoff {payoff} (se {})",
        s.mean,
        s.std_error
    );
}

#[test]
fn chasing_co_moving_sensors() {
    // sensors all head east at 1, intruder east at 0.5: relative speed 0.5
    check_payoff(DirectionDistribution::point_mass(0.0), 0.5, 0.0, 11);
}

#[test]
fn crossing_a_concentrated_fleet() {
    check_payoff(
        DirectionDistribution::von_mises(0.0, 2.0),
        0.5,
        FRAC_PI_2,
        12,
    );
}

#[test]
fn against_a_two_point_fleet() {
    let law = DirectionDistribution::equal_mixture(vec![
        DirectionDistribution::point_mass(0.0),
        DirectionDistribution::point_mass(FRAC_PI_2),
    ]);
    check_payoff(law, 0.8, 0.3, 13);
}

#[test]
fn censoring_matches_exponential_tail() {
    let cfg = NetworkConfig::uniform(1.0, 0.5, 1.0).unwrap();
    let law = static_detection_law(1.0, 0.5, 1.0).unwrap();
    let horizon = 2.0;
    let n = 4_000;
    let set = detection_samples(
        &cfg,
        Mobility::StraightLine,
        &IntruderSpec::stationary(),
        &DetectionPlan::with_horizon(horizon),
        n,
        5,
    )
    .unwrap();
    let p = proportion_ci(set.censored as u64, n as u64).unwrap();
    let expected = law.survival(horizon);
    // widen the 95% interval slightly so the check is not a coin flip
    let slack = 0.5 * (p.ci_high - p.ci_low);
    assert!(
        p.ci_low - slack <= expected && expected <= p.ci_high + slack,
        "censored {} vs e^-2 = {expected}",
        p.estimate
    );
    for s in set.samples.iter().filter(|s| s.censored) {
        assert_eq!(s.value, horizon);
    }
}

#[test]
fn durations_off_reference() {
    let (density, radius, speed) = (2.0, 0.3, 0.5);
    let cfg = NetworkConfig::uniform(density, radius, speed).unwrap();
    let expected = duration_summary(density, radius, speed).unwrap();
    let d = duration_experiment(&cfg, Mobility::StraightLine, 40.0, 20.0, 800, 21).unwrap();
    let gap = exp_rate_mle(&d.uncovered).unwrap();
    let target = 1.0 / expected.mean_uncovered;
    assert!(
        (gap.rate - target).abs() < 0.05 * target,
        "gap rate {} vs {target}",
        gap.rate
    );
    let covered = SampleSummary::of(&d.covered);
    assert!(
        (covered.mean - expected.mean_covered).abs() < 3.0 * covered.std_error + 0.01,
        "covered {} vs {}",
        covered.mean,
        expected.mean_covered
    );
}

#[cfg(feature = "parallel")]
#[test]
fn pool_and_loop_agree_on_detection() {
    use dyncov::replicate::{run_parallel, run_sequential};
    use dyncov::sim::sample_detection_time;
    let cfg = NetworkConfig::uniform(1.0, 0.5, 1.0).unwrap();
    let plan = DetectionPlan::for_rate(1.0);
    let intruder = IntruderSpec::mobile(0.7, 1.0);
    let job = |rng: &mut rand_chacha::ChaCha8Rng, _i: usize| {
        sample_detection_time(
            &cfg,
            Mobility::Redraw { interval: 0.5 },
            &intruder,
            &plan,
            rng,
        )
        .unwrap()
    };
    assert_eq!(run_parallel(&job, 200, 3), run_sequential(&job, 200, 3));
}
