use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qformlab::etasearch::{census_all, census_result, verify_remark_identities};
use qformlab::DirichletChar;

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    group.bench_function("lattice_walk", |b| b.iter(|| black_box(census_all())));
    let members = census_all().remove(&DirichletChar::M8).unwrap_or_default();
    group.bench_function("expressible/-8", |b| {
        b.iter(|| black_box(census_result(DirichletChar::M8, members.clone()).unwrap()))
    });
    group.finish();
    c.bench_function("remark_identities/60", |b| b.iter(|| black_box(verify_remark_identities(60))));
}

criterion_group!(benches, census);
criterion_main!(benches);
