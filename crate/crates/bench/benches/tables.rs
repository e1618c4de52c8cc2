use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fsblocks::harness::{self, RunOptions};
use fsblocks::subsections::Analysis;
use fsblocks::{CharacterTable, CyclotomicNumber};
use fsblocks_bench::group;

fn character_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("chartab");
    g.sample_size(10);
    for spec in ["SL(2,3)", "PSL(2,7)", "S(5)", "PGL(2,9)"] {
        let grp = group(spec);
        g.bench_function(spec, |b| b.iter(|| CharacterTable::compute(black_box(&grp)).unwrap()));
    }
    g.finish();
}

fn blocks_and_checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("blocks");
    g.sample_size(10);
    for spec in ["FR(D8,SD16)", "FR(Q8,Q16)"] {
        let grp = group(spec);
        let t = CharacterTable::compute(&grp).unwrap();
        g.bench_function(format!("analysis {spec}"), |b| {
            b.iter(|| Analysis::with_table(grp.clone(), t.clone()).unwrap())
        });
        g.bench_function(format!("scan {spec}"), |b| {
            b.iter(|| harness::scan_group(black_box(spec), "all", &RunOptions::default()))
        });
    }
    g.finish();
}

fn table_rows(c: &mut Criterion) {
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    let rows = harness::rows_for("q8").unwrap();
    g.bench_function("q8", |b| {
        b.iter(|| rows.iter().map(|r| harness::run_row(r, &RunOptions::default())).count())
    });
    g.finish();
}

fn cyclotomic_arithmetic(c: &mut Criterion) {
    let a = (0..8).fold(CyclotomicNumber::zero(24), |acc, k| {
        acc.add(&CyclotomicNumber::root_of_unity(24, k).scale_int(k - 3))
    });
    let b = a.galois_apply(5).unwrap();
    c.bench_function("cyclotomic mul 24", |x| x.iter(|| black_box(&a).mul(black_box(&b))));
    c.bench_function("cyclotomic inverse 24", |x| x.iter(|| black_box(&a).inverse().unwrap()));
}

criterion_group!(benches, character_tables, blocks_and_checks, table_rows, cyclotomic_arithmetic);
criterion_main!(benches);
