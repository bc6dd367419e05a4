use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use prolong_bench::sample_matrix;
use prolong_core::bundles::{gysin_check, CircleBundle};
use prolong_core::engel::{engel_check, lie_bracket, prolonged_engel_frame, prolonged_spanner};
use prolong_core::groups::Manifold3Data;
use prolong_core::linalg::smith_normal_form;
use prolong_core::torus::{build_phi_alpha, classify_covering_map};

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [4, 8, 16] {
        let m = sample_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| smith_normal_form(black_box(m)))
        });
    }
    group.finish();
}

fn gysin(c: &mut Criterion) {
    let p = CircleBundle::with_euler_i64(Manifold3Data::torus3(), &[2, 0, 0]).unwrap();
    c.bench_function("gysin_check T3 e=(2,0,0) n=4", |b| {
        b.iter(|| gysin_check(black_box(&p), 4))
    });
}

fn classify(c: &mut Criterion) {
    let phi = build_phi_alpha(5, [1, 2, 3]).unwrap();
    c.bench_function("classify n=5", |b| {
        b.iter(|| classify_covering_map(black_box(&phi), 64))
    });
}

fn engel(c: &mut Criterion) {
    let d = prolonged_engel_frame(3, [1, 2, 0]).unwrap();
    c.bench_function("engel_check grid 6", |b| {
        b.iter(|| engel_check(black_box(&d), 6, 1e-6))
    });
    let x = prolonged_spanner(3, [1, 2, 0]);
    let y = prolonged_spanner(2, [1, 1, 0]);
    c.bench_function("nested lie_bracket", |b| {
        b.iter(|| lie_bracket(&x, &lie_bracket(black_box(&x), &y)))
    });
}

criterion_group!(benches, smith, gysin, classify, engel);
criterion_main!(benches);
