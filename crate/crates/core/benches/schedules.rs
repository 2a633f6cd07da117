use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sswm_core::correlations::{amplitude_a3_with, quadrature_a3};
use sswm_core::params::load_preset;
use sswm_core::spectra::{evaluate_with, FrequencyGrid2D, Quantity, DEFAULT_MAX_POINTS};
use sswm_core::Schedule;

const SCHEDULES: [(&str, Schedule); 2] = [("sequential", Schedule::Sequential), ("parallel", Schedule::Parallel)];

fn grid(n: usize) -> FrequencyGrid2D {
    FrequencyGrid2D::new(-100.0, 80.0, n, 100.0, 80.0, n).unwrap()
}

fn evaluate(c: &mut Criterion) {
    let p = load_preset("fig3a").unwrap().params;
    let mut group = c.benchmark_group("evaluate_kernel");
    for n in [256, 512] {
        let g = grid(n);
        for (name, s) in SCHEDULES {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| evaluate_with(Quantity::Kernel, &p, g, s, DEFAULT_MAX_POINTS).unwrap())
            });
        }
    }
    group.finish();
}

fn transform(c: &mut Criterion) {
    let p = load_preset("fig3a").unwrap().params;
    let mut group = c.benchmark_group("amplitude_a3");
    for n in [256, 512] {
        let field = evaluate_with(Quantity::Kernel, &p, &grid(n), Schedule::Parallel, DEFAULT_MAX_POINTS).unwrap();
        for (name, s) in SCHEDULES {
            group.bench_with_input(BenchmarkId::new(name, n), &field, |b, f| {
                b.iter(|| amplitude_a3_with(f, s).unwrap())
            });
        }
    }
    group.finish();
}

fn quadrature(c: &mut Criterion) {
    let p = load_preset("fig3a").unwrap().params;
    let g = grid(256);
    let points: Vec<(f64, f64)> = (0..8).map(|k| (0.1 * k as f64, 0.05 * k as f64)).collect();
    let mut group = c.benchmark_group("quadrature_8pt");
    group.sample_size(10);
    for (name, s) in SCHEDULES {
        group.bench_function(name, |b| b.iter(|| quadrature_a3(&p, &points, &g, s)));
    }
    group.finish();
}

criterion_group!(benches, evaluate, transform, quadrature);
criterion_main!(benches);
