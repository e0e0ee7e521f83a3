use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use orbitq::par::{evaluate_batch, Mode};
use orbitq::sample::{random_point, rng_from_seed};
use orbitq::verify::{run, Suite, VerifyConfig};
use orbitq::Field;

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_batch");
    let mut rng = rng_from_seed(1);
    let points: Vec<_> = (0..2000)
        .map(|i| random_point(Field::Complex, 6, 1 + i % 2, &mut rng))
        .collect();
    for (name, mode) in [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)] {
        group.bench_with_input(BenchmarkId::new(name, points.len()), &mode, |b, &mode| {
            b.iter(|| evaluate_batch(black_box(&points), mode))
        });
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_orbit_invariance_k2");
    group.sample_size(10);
    for (name, mode) in [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)] {
        let cfg = VerifyConfig {
            trials: Some(200),
            mode,
            ..VerifyConfig::default()
        };
        group.bench_function(name, |b| b.iter(|| run(Suite::OrbitInvarianceK2, &cfg)));
    }
    group.finish();
}

criterion_group!(benches, batch, suite);
criterion_main!(benches);
