use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qformlab::eisenstein::{eisenstein3, EisensteinSpec};
use qformlab::qseries::{eta_quotient_expansion, q_truncation};
use qformlab::quadforms::{derive_all, derive_formula, rep_count_bruteforce};
use qformlab::DirichletChar;
use qformlab_bench::{cusp_quotients, sample_vectors};

fn eta(c: &mut Criterion) {
    let quotients = cusp_quotients();
    let mut group = c.benchmark_group("eta_quotient_expansion");
    for precision in [60, 240] {
        group.bench_with_input(BenchmarkId::from_parameter(precision), &precision, |b, &p| {
            b.iter(|| {
                for f in &quotients {
                    black_box(eta_quotient_expansion(f, q_truncation(p)));
                }
            })
        });
    }
    group.finish();
}

fn eisenstein(c: &mut Criterion) {
    let spec = EisensteinSpec::new(DirichletChar::M24, DirichletChar::TRIVIAL, 1).unwrap();
    c.bench_function("eisenstein3/240", |b| b.iter(|| black_box(eisenstein3(&spec, 240))));
}

fn formulas(c: &mut Criterion) {
    let vectors = sample_vectors();
    c.bench_function("derive_formula/sample", |b| {
        b.iter(|| {
            for &l in &vectors {
                black_box(derive_formula(l).unwrap());
            }
        })
    });
    let mut slow = c.benchmark_group("tables");
    slow.sample_size(10);
    slow.bench_function("derive_all/60", |b| b.iter(|| black_box(derive_all(None, 60).unwrap())));
    slow.bench_function("bruteforce/n=50", |b| {
        b.iter(|| {
            for &l in &vectors {
                black_box(rep_count_bruteforce(&l.form(), 50));
            }
        })
    });
    slow.finish();
}

criterion_group!(benches, eta, eisenstein, formulas);
criterion_main!(benches);
