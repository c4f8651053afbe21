use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qfi_bench::{tfi, tfi_problem, J, LAMBDA};
use qfi_core::freefermion::{
    eta_table, qfi_product_state_ff, quench_asymptote_ksum, LambdaStar, QuenchSpec,
};
use qfi_core::{build_hamiltonian, eigendecompose, EtaKernel};

fn eigen(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigendecompose");
    g.sample_size(10);
    for n in [6, 8, 10] {
        let (h, _) = build_hamiltonian(&tfi(n)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| eigendecompose(black_box(h)).unwrap())
        });
    }
    g.finish();
}

fn ed_qfi(c: &mut Criterion) {
    let mut g = c.benchmark_group("ed_qfi");
    for n in [6, 8, 10] {
        let (problem, psi) = tfi_problem(n);
        g.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| problem.qfi(black_box(&psi), black_box(0.5)).unwrap())
        });
    }
    g.finish();
}

fn gamma(c: &mut Criterion) {
    let (problem, psi) = tfi_problem(8);
    c.bench_function("gamma_forms/8", |b| b.iter(|| problem.gamma_forms(black_box(&psi), 0.5).unwrap()));
}

fn ff_qfi(c: &mut Criterion) {
    let mut g = c.benchmark_group("ff_qfi");
    for n in [8, 16, 32] {
        g.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| qfi_product_state_ff(J, LAMBDA, black_box(0.5), n, 0.0, 0.0).unwrap())
        });
    }
    g.finish();
}

fn eta(c: &mut Criterion) {
    c.bench_function("eta_table/256", |b| {
        b.iter(|| eta_table(J, LAMBDA, black_box(1e4), 256, EtaKernel::TimeAveraged).unwrap())
    });
}

fn ksum(c: &mut Criterion) {
    let q = QuenchSpec::new(J, LAMBDA, LambdaStar::Finite(7.0)).unwrap();
    c.bench_function("quench_ksum/2000", |b| b.iter(|| quench_asymptote_ksum(black_box(&q), 2000).unwrap()));
}

criterion_group!(benches, eigen, ed_qfi, gamma, ff_qfi, eta, ksum);
criterion_main!(benches);
