//! Suite throughput: the rayon fan-out over (manifold, check) tasks against
//! the sequential fallback, plus the per-point curvature kernel.

use criterion::{criterion_group, criterion_main, Criterion};
use ssnmc::catalog::{build, ManifoldParams};
use ssnmc::curvature::point_curvatures;
use ssnmc::{run_suite, JetMode, Parallelism, PhiMode, SuiteConfig};

fn bench_default_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("default-suite");
    group.sample_size(10);
    let mut cfg = SuiteConfig::default_suite(7);
    cfg.points = 4;

    #[cfg(feature = "parallel")]
    {
        let mut par = cfg.clone();
        par.parallelism = Parallelism::Rayon;
        group.bench_function("rayon", |b| {
            b.iter(|| run_suite(&par).expect("suite"));
        });
    }

    let mut seq = cfg.clone();
    seq.parallelism = Parallelism::Sequential;
    group.bench_function("sequential", |b| {
        b.iter(|| run_suite(&seq).expect("suite"));
    });
    group.finish();
}

fn bench_curvature_kernel(c: &mut Criterion) {
    let m = build(&ManifoldParams::new("random", 4, 1.0, PhiMode::Generic, 3)).unwrap();
    let x = m.sample_plan(1, 5).points[0].clone();
    c.bench_function("point-curvatures-4d", |b| {
        b.iter(|| point_curvatures(&m, &x, JetMode::Analytic).expect("curvature"));
    });
    let sphere = build(&ManifoldParams::new("sphere", 3, 1.0, PhiMode::Constant, 3)).unwrap();
    let y = sphere.sample_plan(1, 5).points[0].clone();
    c.bench_function("point-curvatures-s3-fd-jets", |b| {
        b.iter(|| point_curvatures(&sphere, &y, JetMode::FiniteDifference).expect("curvature"));
    });
}

criterion_group!(benches, bench_default_suite, bench_curvature_kernel);
criterion_main!(benches);
