//! Groebner runs on one worker thread against the full pool. Building with
//! `--no-default-features` drops rayon entirely; both arms then run the
//! sequential fallback.

use std::hint::black_box;

use commvar::genmat::CommutatorSystem;
use commvar::groebner::{buchberger, Budget};
use commvar::{par, PrimeField};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn system(n: usize) -> CommutatorSystem<PrimeField> {
    CommutatorSystem::build(PrimeField::new(32003).unwrap(), n).unwrap()
}

fn groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner-I");
    group.sample_size(10);
    for n in [2usize, 3] {
        let sys = system(n);
        for (label, threads) in [("sequential", 1usize), ("parallel", 0)] {
            group.bench_with_input(BenchmarkId::new(label, n), &sys, |b, sys| {
                b.iter(|| {
                    par::with_threads(threads, || {
                        buchberger(sys.ring(), black_box(sys.generators()), Budget::unlimited())
                            .unwrap()
                    })
                })
            });
        }
    }
    group.finish();
}

fn recheck(c: &mut Criterion) {
    let sys = system(3);
    let gb = buchberger(sys.ring(), sys.generators(), Budget::unlimited()).unwrap();
    let mut group = c.benchmark_group("criterion-recheck-n3");
    group.sample_size(10);
    for (label, threads) in [("sequential", 1usize), ("parallel", 0)] {
        group.bench_function(label, |b| {
            b.iter(|| par::with_threads(threads, || black_box(gb.satisfies_criterion())))
        });
    }
    group.finish();
}

criterion_group!(benches, groebner, recheck);
criterion_main!(benches);
