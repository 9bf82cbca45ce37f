use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use multiutil::enumerate::{all_strict_partial_orders, standard_example};
use multiutil::semiorder::grid_report;
use multiutil::{
    build_multi_embedding, build_realizer, order_dimension, FiniteTopology, Grid, GroundSet,
    SearchBudget, SemiorderFamily,
};

fn dimension(c: &mut Criterion) {
    let s3 = standard_example(3).unwrap();
    let s4 = standard_example(4).unwrap();
    let budget = SearchBudget { max_k: 4, max_n: 8 };
    c.bench_function("dimension/S_3", |b| {
        b.iter(|| order_dimension(black_box(&s3), budget))
    });
    c.bench_function("dimension/S_4", |b| {
        b.iter(|| order_dimension(black_box(&s4), budget))
    });
}

fn realizer_and_embedding(c: &mut Criterion) {
    let g = GroundSet::indexed(5).unwrap();
    let t = FiniteTopology::discrete(&g);
    let orders = all_strict_partial_orders(&g);
    c.bench_function("realizer/all n=5", |b| {
        b.iter(|| {
            for q in &orders {
                black_box(build_realizer(&q.reflexive_closure()).unwrap());
            }
        })
    });
    c.bench_function("embedding/all n=5", |b| {
        b.iter(|| {
            for q in &orders {
                black_box(build_multi_embedding(&q.polar(), &t).unwrap());
            }
        })
    });
}

fn semiorder(c: &mut Criterion) {
    let grid = Grid::new(-3.0, 3.0, 0.05).unwrap();
    let family = SemiorderFamily::new(1.0, grid.points()).unwrap();
    let mut group = c.benchmark_group("semiorder");
    group.sample_size(10);
    group.bench_function("grid report 121x121", |b| {
        b.iter(|| grid_report(black_box(&family), &grid))
    });
    group.finish();
}

criterion_group!(benches, dimension, realizer_and_embedding, semiorder);
criterion_main!(benches);
