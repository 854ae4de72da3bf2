use criterion::{criterion_group, criterion_main, Criterion};

use glz_bench::{dense, involution, special};
use glz_core::congruence::elementary_factorization;
use glz_core::exactmat::hnf;
use glz_core::involution::canonical_form;
use glz_core::verify::run_suite;
use glz_core::InvolutionProfile;

fn hermite(c: &mut Criterion) {
    let a = dense(8, 1);
    c.bench_function("hnf 8x8", move |b| b.iter(|| hnf(&a)));
}

fn canonical(c: &mut Criterion) {
    let p = involution(InvolutionProfile::new(2, 2, 2), 7);
    c.bench_function("canonical_form n=8", move |b| {
        b.iter(|| canonical_form(&p).unwrap())
    });
}

fn factorization(c: &mut Criterion) {
    let m = special(4, 40, 3);
    c.bench_function("elementary_factorization n=4", move |b| {
        b.iter(|| elementary_factorization(&m).unwrap())
    });
}

fn mutual_subgroup_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    group.bench_function("L1_7 n=4 x100", |b| {
        b.iter(|| run_suite("L1_7", 4, 100, 42).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    hermite,
    canonical,
    factorization,
    mutual_subgroup_suite
);
criterion_main!(benches);
