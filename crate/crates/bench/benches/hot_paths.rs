use criterion::{criterion_group, criterion_main, Criterion};
use epwlab_bench::{fixture_l, lagrangian_f5, minus2_samples};
use epwlab_core::epw::{corank_census, sextic_equation};
use epwlab_core::lattice::{conto_check, discriminant_form, LatticeFixture};
use std::hint::black_box;

fn epw(c: &mut Criterion) {
    let a = lagrangian_f5();
    let mut g = c.benchmark_group("epw");
    g.sample_size(10);
    g.bench_function("sextic_f5", |b| b.iter(|| sextic_equation(black_box(&a), 1).unwrap()));
    g.bench_function("census_f5", |b| b.iter(|| corank_census(black_box(&a), 5).unwrap()));
    g.finish();
}

fn lattice(c: &mut Criterion) {
    let l = fixture_l();
    c.bench_function("discriminant_form_l", |b| b.iter(|| discriminant_form(black_box(&l)).unwrap()));
    let lambda = LatticeFixture::new().lambda;
    let xs = minus2_samples(100);
    c.bench_function("conto_100", |b| {
        b.iter(|| xs.iter().map(|x| conto_check(&lambda, x).unwrap().integral as usize).sum::<usize>())
    });
}

criterion_group!(benches, epw, lattice);
criterion_main!(benches);
