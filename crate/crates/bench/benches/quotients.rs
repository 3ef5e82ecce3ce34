use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use lexshell::complex::verify_shelling;
use lexshell::partition::{b_s_table, build_partitioning, lex_quotient};
use lexshell::series::{molien, PermGroup};
use lexshell::wreath::{face_ring_hilbert, wreath_complex};

fn wreath(c: &mut Criterion) {
    let mut group = c.benchmark_group("wreath");
    for n in [3, 4] {
        group.bench_with_input(BenchmarkId::new("build", n), &n, |b, &n| {
            b.iter(|| wreath_complex(2, black_box(n)).unwrap())
        });
    }
    let cx = wreath_complex(2, 4).unwrap();
    let order: Vec<usize> = (0..cx.facet_count()).collect();
    group.bench_function("shell/2,4", |b| b.iter(|| verify_shelling(&cx, black_box(&order)).unwrap()));
    let small = wreath_complex(3, 2).unwrap();
    group.bench_function("hilbert/3,2", |b| b.iter(|| face_ring_hilbert(&small, black_box(40))));
    group.finish();
}

fn partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition");
    group.sample_size(10);
    for n in [6, 7] {
        group.bench_with_input(BenchmarkId::new("build", n), &n, |b, &n| {
            b.iter(|| lex_quotient(black_box(n)).unwrap())
        });
    }
    let p7 = lex_quotient(7).unwrap();
    group.bench_function("flag_h/7", |b| b.iter(|| black_box(&p7).flag_h()));
    group.bench_function("b_s/7", |b| b.iter(|| b_s_table(black_box(7)).unwrap()));
    group.bench_function("partitioning/7", |b| b.iter(|| build_partitioning(black_box(7)).unwrap()));
    group.finish();
}

fn series(c: &mut Criterion) {
    let g = PermGroup::wreath(2, 4).unwrap();
    c.bench_function("molien/2,4", |b| b.iter(|| molien(&g, black_box(40)).unwrap()));
}

criterion_group!(benches, wreath, partition, series);
criterion_main!(benches);
