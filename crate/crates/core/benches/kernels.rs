use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lattice_dec::operators::laplacian_with;
use lattice_dec::oracle::fourier_green_grid;
use lattice_dec::spectral::operator_norm_estimate_with;
use lattice_dec::{stencil, Cochain, Degree, Execution, OracleConfig, Window, C64};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn label(exec: Execution) -> &'static str {
    match exec {
        Execution::Sequential => "sequential",
        Execution::Parallel => "parallel",
    }
}

fn sample(n: usize) -> Vec<C64> {
    Window::new(n).sites().map(|i| C64::new((i.k as f64).sin(), (i.s as f64).cos())).collect()
}

fn bench_stencil(c: &mut Criterion) {
    let mut group = c.benchmark_group("stencil");
    for n in [64usize, 256] {
        let w = Window::new(n);
        let src = sample(n);
        let mut out = vec![C64::new(0.0, 0.0); w.len()];
        for exec in MODES {
            group.bench_with_input(BenchmarkId::new(label(exec), n), &n, |b, _| {
                b.iter(|| stencil::apply_into(black_box(&src), w, &mut out, w, C64::new(4.0, 0.0), exec))
            });
        }
    }
    group.finish();
}

fn bench_laplacian(c: &mut Criterion) {
    let mut group = c.benchmark_group("laplacian_1form");
    let n = 128;
    let form = Cochain::from_components(Degree::One, Window::new(n), vec![sample(n), sample(n)]).unwrap();
    for exec in MODES {
        group.bench_function(label(exec), |b| b.iter(|| laplacian_with(black_box(&form), exec)));
    }
    group.finish();
}

fn bench_power_iteration(c: &mut Criterion) {
    let mut group = c.benchmark_group("power_iteration");
    group.sample_size(10);
    for exec in MODES {
        group.bench_function(label(exec), |b| {
            b.iter(|| operator_norm_estimate_with(Degree::Zero, 64, 200, 1e-15, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_fourier_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("fourier_grid");
    group.sample_size(10);
    for exec in MODES {
        let config = OracleConfig { exec, ..OracleConfig::default() };
        group.bench_function(label(exec), |b| {
            b.iter(|| fourier_green_grid(10, C64::new(-1.0, 0.0), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_stencil, bench_laplacian, bench_power_iteration, bench_fourier_grid);
criterion_main!(benches);
