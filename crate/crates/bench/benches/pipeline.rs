use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nilcoh_bench::{random_matrix, root_system};
use nilcoh_core::linalg::smith_normal_form;
use nilcoh_core::specseq::{e_infinity, FilteredComplex};
use nilcoh_core::unipotent::{lower_central_series, make_group};
use nilcoh_core::{
    build_ce_complex, chevalley_structure_constants, cohomology, coxeter_number, enumerate_weyl_group, kostant_predict,
    verify_kostant, weil_restrict,
};

fn weyl(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_enumeration");
    for ty in ["A3", "B3", "D4"] {
        let rs = root_system(ty);
        g.bench_with_input(BenchmarkId::from_parameter(ty), &rs, |b, rs| {
            b.iter(|| enumerate_weyl_group(black_box(rs)).unwrap())
        });
    }
    g.finish();
}

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [8, 16, 32] {
        let m = random_matrix(n, n, 20, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    g.finish();
}

fn ce_cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("ce_cohomology");
    g.sample_size(20);
    for (ty, d) in [("A2", 1), ("A3", 1), ("B3", 1), ("A2", 2)] {
        let l = weil_restrict(&chevalley_structure_constants(&root_system(ty)), d);
        g.bench_with_input(BenchmarkId::new(ty, d), &l, |b, l| {
            b.iter(|| cohomology(&build_ce_complex(black_box(l)).unwrap()))
        });
    }
    g.finish();
}

fn kostant_pipeline(c: &mut Criterion) {
    let rs = root_system("C3");
    c.bench_function("kostant_c3", |b| {
        b.iter(|| {
            let w = enumerate_weyl_group(&rs).unwrap();
            let coh = cohomology(&build_ce_complex(&chevalley_structure_constants(&rs)).unwrap());
            assert!(verify_kostant(&kostant_predict(&rs, &w), &coh, coxeter_number(&rs)).passed);
        })
    });
}

fn spectral_sequence(c: &mut Criterion) {
    let l = chevalley_structure_constants(&root_system("A3"));
    let complex = build_ce_complex(&l).unwrap();
    let f = FilteredComplex::weight_height(&l, &complex, 7).unwrap();
    c.bench_function("e_infinity_a3_weight_height", |b| b.iter(|| e_infinity(black_box(&f))));
}

fn group(c: &mut Criterion) {
    let g = make_group(&root_system("B2"), 5, 2).unwrap();
    let order = g.order() as u64;
    let pairs: Vec<_> = (0..256u64).map(|i| (g.decode(i * 7919 % order), g.decode(i * 104_729 % order))).collect();
    c.bench_function("unipotent_mul_b2_p5_k2", |b| {
        b.iter(|| pairs.iter().map(|(x, y)| g.mul(black_box(x), black_box(y))).collect::<Vec<_>>())
    });
    let small = make_group(&root_system("A2"), 5, 2).unwrap();
    let mut grp = c.benchmark_group("lower_central_series");
    grp.sample_size(10);
    grp.bench_function("a2_p5_k2", |b| b.iter(|| lower_central_series(black_box(&small)).unwrap()));
    grp.finish();
}

criterion_group!(benches, weyl, snf, ce_cohomology, kostant_pipeline, spectral_sequence, group);
criterion_main!(benches);
