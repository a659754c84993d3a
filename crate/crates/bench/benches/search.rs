use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qwsearch_core::graphs::{complete, hypercube, laplacian, paley};
use qwsearch_core::hypercube::{general_pair, table1};
use qwsearch_core::linalg::{eig_jacobi, eig_tridiagonal, fwht};
use qwsearch_core::search::search_params;
use qwsearch_core::simulator::{run, run_reduced, RunOptions};
use qwsearch_core::{HypercubeBasis, MarkedState, SpectralDecomposition};

fn eigensolvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigensolver");
    group.sample_size(10);
    for q in [29usize, 61, 101] {
        let lap = laplacian(&paley(q).unwrap());
        group.bench_with_input(BenchmarkId::new("jacobi", q), &lap, |b, m| {
            b.iter(|| eig_jacobi(black_box(m)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("tridiagonal", q), &lap, |b, m| {
            b.iter(|| eig_tridiagonal(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn walsh_hadamard(c: &mut Criterion) {
    let mut group = c.benchmark_group("fwht");
    for n in [10u32, 16, 20] {
        let data: Vec<f64> = (0..1usize << n).map(|i| (i % 7) as f64).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &data, |b, d| {
            b.iter_batched(
                || d.clone(),
                |mut v| fwht(black_box(&mut v)),
                criterion::BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn hypercube_forms(c: &mut Criterion) {
    c.bench_function("general_pair(16, 8)", |b| {
        b.iter(|| general_pair(black_box(16), black_box(8)).unwrap())
    });
    c.bench_function("table1(16)", |b| b.iter(|| table1(black_box(16)).unwrap()));
    let basis = HypercubeBasis::new(16).unwrap();
    let w = MarkedState::pair(1 << 16, 0, 3).unwrap();
    c.bench_function("search_params hypercube 16 oracle", |b| {
        b.iter(|| search_params(&basis, black_box(&w)).unwrap())
    });
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    let k64 = complete(64).unwrap();
    let w64 = MarkedState::single(64, 0).unwrap();
    group.bench_function("dense K64", |b| {
        b.iter(|| run(&k64, &w64, RunOptions::default()).unwrap())
    });
    let q8 = hypercube(8).unwrap();
    let wq = MarkedState::single(256, 0).unwrap();
    let dec = SpectralDecomposition::of_laplacian(&laplacian(&q8)).unwrap();
    group.bench_function("reduced Q8 from dense basis", |b| {
        b.iter(|| run_reduced(&dec, &wq, RunOptions::default()).unwrap())
    });
    let basis = HypercubeBasis::new(16).unwrap();
    let w = MarkedState::pair(1 << 16, 0, (1 << 16) - 1).unwrap();
    group.bench_function("reduced Q16 antipodal", |b| {
        b.iter(|| run_reduced(&basis, &w, RunOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    eigensolvers,
    walsh_hadamard,
    hypercube_forms,
    simulation
);
criterion_main!(benches);
