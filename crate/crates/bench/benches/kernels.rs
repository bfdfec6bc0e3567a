use balpair_bench::{largest_complex, nakayama, random_matrix};
use balpair_core::approx::{resolution, resolution_dim};
use balpair_core::compare::{build_eta, dualizing_data};
use balpair_core::corpus;
use balpair_core::equivfunctor::FunctorSession;
use balpair_core::quiveralg::{default_ext_bound, hom_space};
use balpair_core::totalization::{auto_width, build_quasi_bicomplex, totalize};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn linear_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [16, 64, 128] {
        let a = random_matrix(3, n, n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| black_box(a.rref())));
    }
    group.finish();
    let a = random_matrix(2, 48, 64, 1);
    c.bench_function("kernel_basis 48x64", |b| b.iter(|| black_box(a.kernel_basis())));
}

fn modules(c: &mut Criterion) {
    let e = nakayama(2);
    let big = e.probes.iter().max_by_key(|m| m.total_dim()).unwrap();
    c.bench_function("hom_space probes", |b| {
        b.iter(|| e.probes.iter().map(|m| hom_space(m, big).dim()).sum::<usize>())
    });
    let bound = default_ext_bound(&e.algebra);
    c.bench_function("gproj resolution", |b| {
        b.iter(|| e.probes.iter().map(|m| resolution(e.x(), m, bound).unwrap().length()).sum::<usize>())
    });
    c.bench_function("gproj resolution_dim", |b| b.iter(|| e.probes.iter().filter_map(|m| resolution_dim(e.x(), m, bound)).max()));
}

fn totalization(c: &mut Criterion) {
    let e = nakayama(2);
    let m = largest_complex(&e);
    let bound = default_ext_bound(&e.algebra);
    let w = auto_width(e.x(), m, bound).unwrap();
    c.bench_function("quasi_bicomplex", |b| b.iter(|| black_box(build_quasi_bicomplex(e.x(), m, w).unwrap())));
    let qb = build_quasi_bicomplex(e.x(), m, w).unwrap();
    c.bench_function("totalize", |b| b.iter(|| black_box(totalize(&qb, m).unwrap())));
}

fn comparison(c: &mut Criterion) {
    let e = &corpus::commutative(2, 0).unwrap()[1];
    let bound = default_ext_bound(&e.algebra);
    let dd = dualizing_data(&e.algebra, e.profile.d).unwrap();
    let g = &e.x_complexes[e.x_complexes.len() - 1];
    c.bench_function("build_eta plane", |b| {
        b.iter(|| {
            let mut s = FunctorSession::new(e.x(), e.y(), bound);
            black_box(build_eta(&mut s, &dd, g).unwrap())
        })
    });
}

criterion_group!(benches, linear_algebra, modules, totalization, comparison);
criterion_main!(benches);
