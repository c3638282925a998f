use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use weakid_bench::{gens, group, sequential};
use weakid_core::bcs::{max_centralizer_chain, DEFAULT_CHAIN_CAP};
use weakid_core::disc::is_discriminating_finite;
use weakid_core::{check_weak, min_height, verbal_image, SearchConfig};

fn bench_check(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_weak");
    g.sample_size(10);
    let s3 = group("sym:3");
    let comm = gens(&["[g1,g2]"]);
    g.bench_function("sym3_commutator_h2", |b| {
        b.iter(|| check_weak(black_box(&s3), &comm, 2, &sequential()).unwrap())
    });
    let a5 = group("alt:5");
    let g1 = gens(&["g1"]);
    for (name, config) in [("seq", sequential()), ("par", SearchConfig::default())] {
        g.bench_function(format!("a5_g1_h6_{name}"), |b| {
            b.iter(|| check_weak(black_box(&a5), &g1, 6, &config).unwrap())
        });
    }
    g.finish();
}

fn bench_height(c: &mut Criterion) {
    let mut g = c.benchmark_group("min_height");
    g.sample_size(10);
    for spec in ["q8", "alt:4", "sl:2:3"] {
        let grp = group(spec);
        let comm = gens(&["[g1,g2]"]);
        g.bench_function(spec, |b| {
            b.iter(|| min_height(black_box(&grp), &comm, 4, &sequential()).unwrap())
        });
    }
    g.finish();
}

fn bench_subgroups(c: &mut Criterion) {
    let a5 = group("alt:5");
    let comm = gens(&["[g1,g2]"]);
    c.bench_function("verbal_image_a5_commutator", |b| {
        b.iter(|| verbal_image(black_box(&a5), &comm).unwrap())
    });
    let gl = group("gl:2:3");
    c.bench_function("centralizer_chain_gl23", |b| {
        b.iter(|| max_centralizer_chain(black_box(&gl), DEFAULT_CHAIN_CAP).unwrap())
    });
    let q8 = group("q8");
    c.bench_function("disc_q8", |b| {
        b.iter(|| is_discriminating_finite(black_box(&q8), 24))
    });
}

criterion_group!(benches, bench_check, bench_height, bench_subgroups);
criterion_main!(benches);
