//! Partitioned versus sequential law checking on the largest structures the
//! suite touches: the 36-element direct square and the 16-element Fano
//! lambda-lattice.

use criterion::{criterion_group, criterion_main, Criterion};
use sasaki_core::algebra::direct_product;
use sasaki_core::laws::law;
use sasaki_core::sasaki::{derive_sasaki, Scheme};
use sasaki_core::{check_law, check_law_sequential, fixtures, Algebra};

fn with_pair(a: &Algebra, scheme: Scheme) -> Algebra {
    let pair = derive_sasaki(a, scheme).unwrap();
    a.with_binary("odot", pair.odot).with_binary("imp", pair.imp)
}

fn bench_adjointness_on_square(c: &mut Criterion) {
    let fig7 = fixtures::fixture("fig7_ex2").unwrap();
    let square = with_pair(&direct_product(&fig7, &fig7).unwrap(), Scheme::S2);
    let a1 = law("A1");
    let mut group = c.benchmark_group("a1_fig7_square");
    group.bench_function("partitioned", |b| {
        b.iter(|| check_law(&square, a1).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| check_law_sequential(&square, a1).unwrap())
    });
    group.finish();
}

fn bench_compat_on_fano(c: &mut Criterion) {
    let fano = with_pair(&fixtures::fixture("fano").unwrap(), Scheme::S2);
    let f1 = law("F1");
    let mut group = c.benchmark_group("f1_fano");
    group.bench_function("partitioned", |b| b.iter(|| check_law(&fano, f1).unwrap()));
    group.bench_function("sequential", |b| {
        b.iter(|| check_law_sequential(&fano, f1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_adjointness_on_square, bench_compat_on_fano);
criterion_main!(benches);
