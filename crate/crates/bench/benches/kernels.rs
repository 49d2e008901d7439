use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use fuzzre::algebra::{LMonoid, StructureKind};
use fuzzre::lift::lift;
use fuzzre::linalg::{compose, reflexive_transitive_closure};
use fuzzre::position::glushkov;
use fuzzre::regex::{parse, Word};
use fuzzre::runtime::degree;
use fuzzre::synthesis::synthesize_reduced;
use fuzzre_bench::{layered_expression, random_reflexive_matrix};

fn bench_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for kind in [StructureKind::Godel, StructureKind::Product] {
        let lm = LMonoid::new(kind);
        for n in [8usize, 16, 32, 64] {
            let m = random_reflexive_matrix(lm, n, 0x5EED ^ n as u64);
            group.bench_function(format!("{kind:?}_{n}"), |b| {
                b.iter(|| black_box(reflexive_transitive_closure(black_box(&m)).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_compose(c: &mut Criterion) {
    let lm = LMonoid::new(StructureKind::Godel);
    let a = random_reflexive_matrix(lm, 64, 1);
    let b_mat = random_reflexive_matrix(lm, 64, 2);
    c.bench_function("compose_64", |b| {
        b.iter(|| black_box(compose(black_box(&a), black_box(&b_mat)).unwrap()))
    });
}

fn bench_degree(c: &mut Criterion) {
    let lm = LMonoid::new(StructureKind::Product);
    let expr = layered_expression(16);
    let alpha = parse(&expr, lm).unwrap();
    let lr = lift(&alpha, lm);
    let automaton = synthesize_reduced(&glushkov(&lr.alpha_r), &lr, lm).unwrap();
    let word = Word::from_letters(&"xy".repeat(32)).unwrap();
    c.bench_function("degree_layered_16_word_64", |b| {
        b.iter(|| black_box(degree(black_box(&automaton), black_box(&word)).unwrap()))
    });
}

criterion_group!(benches, bench_closure, bench_compose, bench_degree);
criterion_main!(benches);
