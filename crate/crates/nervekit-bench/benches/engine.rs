//! Benchmarks for the hot paths of the verification engine: nerve
//! construction, horn-filling classification, the shift construction, and
//! the full torsor characterization.

use criterion::{criterion_group, criterion_main, Criterion};
use nervekit::*;
use std::collections::BTreeMap;
use std::hint::black_box;

fn two_group_z4_parity() -> FiniteBicategory {
    let h = cyclic_group_category(4);
    let g = cyclic_group_category(2);
    let t: BTreeMap<Id, Id> = (0..4)
        .map(|i| (format!("g{}", i), format!("g{}", i % 2)))
        .collect();
    let mut action = BTreeMap::new();
    for x in &g.morphisms {
        for y in &h.morphisms {
            action.insert((x.clone(), y.clone()), y.clone());
        }
    }
    build_two_group(&h, &g, &t, &action).unwrap()
}

fn bench_duskin_nerve(c: &mut Criterion) {
    let b = two_group_z4_parity();
    c.bench_function("duskin_nerve(2-group Z/4 -> Z/2, cap 3)", |bench| {
        bench.iter(|| duskin_nerve(black_box(&b), 3).unwrap())
    });
}

fn bench_classify(c: &mut Criterion) {
    let n = cyclic_group_category(4).nerve(3).unwrap();
    c.bench_function("classify(nerve Z/4, bound 4)", |bench| {
        bench.iter(|| classify(black_box(&n), 4).unwrap())
    });
}

fn bench_decalage(c: &mut Criterion) {
    let n = cyclic_group_category(4).nerve(4).unwrap();
    c.bench_function("decalage(nerve Z/4, cap 4)", |bench| {
        bench.iter(|| decalage(black_box(&n)).unwrap())
    });
}

fn bench_exact_fibration(c: &mut Criterion) {
    let b = locally_discrete(&cyclic_group_category(3));
    let t = build_trivial_torsor(&b).unwrap();
    let proj = canonical_projection(&t.action.action).unwrap();
    let map = nerve_map(&proj, 3).unwrap();
    c.bench_function("is_exact_fibration(Z/3 projection nerve, dim 2)", |bench| {
        bench.iter(|| is_exact_fibration(black_box(&map), 2).unwrap())
    });
}

fn bench_glenn_check(c: &mut Criterion) {
    let b = locally_discrete(&cyclic_group_category(3));
    let t = build_trivial_torsor(&b).unwrap();
    c.bench_function("verify_glenn_torsor(trivial Z/3 torsor, bound 4)", |bench| {
        bench.iter(|| verify_glenn_torsor(black_box(&t), 4).unwrap())
    });
}

criterion_group!(
    benches,
    bench_duskin_nerve,
    bench_classify,
    bench_decalage,
    bench_exact_fibration,
    bench_glenn_check
);
criterion_main!(benches);
