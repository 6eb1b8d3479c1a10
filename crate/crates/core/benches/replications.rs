//! Sequential loop against the rayon pool on the two hot workloads.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
#[cfg(feature = "parallel")]
use dyncov::replicate::run_parallel;
use dyncov::replicate::run_sequential;
use dyncov::sim::{sample_detection_time, sample_origin_timeline, DetectionPlan};
use dyncov::{IntruderSpec, Mobility, NetworkConfig};
use rand_chacha::ChaCha8Rng;

fn detection(c: &mut Criterion) {
    let cfg = NetworkConfig::uniform(1.0, 0.5, 1.0).unwrap();
    let plan = DetectionPlan::for_rate(1.0);
    let intruder = IntruderSpec::stationary();
    let job = |rng: &mut ChaCha8Rng, _i: usize| {
        sample_detection_time(&cfg, Mobility::StraightLine, &intruder, &plan, rng).unwrap()
    };
    let mut group = c.benchmark_group("detection");
    group.sample_size(10);
    for n in [256usize, 1024] {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| run_sequential(&job, black_box(n), 7))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| run_parallel(&job, black_box(n), 7))
        });
    }
    group.finish();
}

fn timelines(c: &mut Criterion) {
    let cfg = NetworkConfig::uniform(1.0, 0.5, 1.0).unwrap();
    let job = |rng: &mut ChaCha8Rng, _i: usize| {
        sample_origin_timeline(&cfg, Mobility::Redraw { interval: 1.0 }, 20.0, rng)
            .intervals
            .len()
    };
    let mut group = c.benchmark_group("timelines");
    group.sample_size(10);
    let n = 128;
    group.bench_function(BenchmarkId::new("sequential", n), |b| {
        b.iter(|| run_sequential(&job, black_box(n), 3))
    });
    #[cfg(feature = "parallel")]
    group.bench_function(BenchmarkId::new("parallel", n), |b| {
        b.iter(|| run_parallel(&job, black_box(n), 3))
    });
    group.finish();
}

criterion_group!(benches, detection, timelines);
criterion_main!(benches);
