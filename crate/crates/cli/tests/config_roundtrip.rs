use dyncov::game::GridSpec;
use dyncov::{DirectionDistribution, IntruderSpec, Mobility, NetworkConfig, SpeedDistribution};
use dyncov_cli::config::{
    ExperimentConfig, Format, OutputConfig, Scenario, ScenarioParams, Tolerances,
};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, Just(0.0), Just(1e-300), Just(0.1 + 0.2)]
}

fn direction() -> impl Strategy<Value = DirectionDistribution> {
    let leaf = prop_oneof![
        Just(DirectionDistribution::Uniform),
        finite().prop_map(DirectionDistribution::PointMass),
        (finite(), 0.0..50.0f64)
            .prop_map(|(mean, kappa)| DirectionDistribution::VonMises { mean, kappa }),
    ];
    leaf.prop_recursive(2, 6, 3, |inner| {
        prop::collection::vec((0.0..1.0f64, inner), 1..3).prop_map(DirectionDistribution::Mixture)
    })
}

fn speed() -> impl Strategy<Value = SpeedDistribution> {
    prop_oneof![
        finite().prop_map(SpeedDistribution::Fixed),
        (finite(), finite()).prop_map(|(lo, hi)| SpeedDistribution::Uniform { lo, hi }),
        prop::collection::vec((finite(), 0.0..1.0f64), 1..4).prop_map(|vw| {
            let (values, weights) = vw.into_iter().unzip();
            SpeedDistribution::Discrete { values, weights }
        }),
    ]
}

fn config() -> impl Strategy<Value = ExperimentConfig> {
    (
        (
            prop::option::of(prop::sample::select(Scenario::ALL.to_vec())),
            finite(),
            finite(),
            speed(),
            direction(),
            prop_oneof![
                Just(Mobility::StraightLine),
                finite().prop_map(|interval| Mobility::Redraw { interval })
            ],
            prop::option::of(prop_oneof![
                Just(IntruderSpec::stationary()),
                (finite(), finite(), finite())
                    .prop_map(|(v, h, td)| IntruderSpec::mobile(v, h).with_sensing_time(td)),
            ]),
        ),
        (
            prop::option::of(finite()),
            prop::option::of(0..1_000_000usize),
            prop::option::of(0..1_000_000usize),
            any::<u64>(),
            prop::option::of(prop_oneof![Just(Format::Csv), Just(Format::Json)]),
            prop::collection::vec(finite(), 0..4),
            prop::option::of(prop::collection::vec(finite(), 0..4)),
            (1usize..1000, 1usize..1000, finite()),
        ),
    )
        .prop_map(
            |(
                (scenario, density, sensing_radius, speed_law, direction_law, mobility, intruder),
                (
                    horizon,
                    replications,
                    test_points,
                    seed,
                    format,
                    times,
                    sweep_speeds,
                    (angles, speeds, tol),
                ),
            )| ExperimentConfig {
                scenario,
                network: NetworkConfig {
                    density,
                    sensing_radius,
                    speed_law,
                    direction_law,
                },
                mobility,
                intruder,
                horizon,
                replications,
                test_points,
                seed,
                output: OutputConfig {
                    dir: "runs/a b".into(),
                    format,
                },
                params: ScenarioParams {
                    times,
                    sweep_speeds,
                    grid: GridSpec {
                        angles,
                        speeds,
                        coarse_panels: angles * 2,
                        refine_tolerance: tol,
                    },
                    ..ScenarioParams::default()
                },
                tolerances: Tolerances {
                    relative: tol.abs(),
                    ..Tolerances::default()
                },
            },
        )
}

proptest! {
    #[test]
    fn config_survives_json(c in config()) {
        let text = serde_json::to_string(&c).unwrap();
        let back = ExperimentConfig::from_json(&text).unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn resolved_config_survives_json() {
    let c = ExperimentConfig::default()
        .resolve(Scenario::DetectMobile, &Default::default())
        .unwrap();
    let back = ExperimentConfig::from_json(&serde_json::to_string_pretty(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}
