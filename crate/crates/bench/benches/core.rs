use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use equivk::format::load_example;
use equivk::ktheory::{even_case, mv_presentation};
use equivk::rootsys::{build_root_datum, enumerate_weyl, LatticeChoice};
use equivk::verify::verify_branching_table;
use equivk::zlinalg::smith_normal_form;
use equivk::IntMatrix;

fn weyl(c: &mut Criterion) {
    let f4 = build_root_datum("F4", LatticeChoice::Root).unwrap();
    c.bench_function("weyl_f4", |b| b.iter(|| enumerate_weyl(black_box(&f4)).unwrap().order()));
}

fn snf(c: &mut Criterion) {
    // deterministic dense 8×8 matrix with mixed signs
    let rows: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| ((i * 7 + j * 13) % 19) as i64 - 9).collect()).collect();
    let a = IntMatrix::from_rows(&rows);
    c.bench_function("snf_8x8", |b| b.iter(|| smith_normal_form(black_box(&a))));
}

fn presentations(c: &mut Criterion) {
    let sp2 = load_example("sp2").unwrap().diagram.unwrap();
    let w = sp2.windows(4, 4).unwrap();
    c.bench_function("mv_presentation_sp2_r4", |b| b.iter(|| mv_presentation(&sp2, black_box(&w)).unwrap()));
    let g2 = load_example("g2-d12").unwrap().diagram.unwrap();
    let w = g2.windows(6, 6).unwrap();
    c.bench_function("even_case_g2_r6", |b| b.iter(|| even_case(&g2, black_box(&w)).unwrap()));
}

fn branching(c: &mut Criterion) {
    c.bench_function("branching_table", |b| b.iter(verify_branching_table));
}

criterion_group!(benches, weyl, snf, presentations, branching);
criterion_main!(benches);
