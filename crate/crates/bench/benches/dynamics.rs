use ar_iet::analysis::{preimage_clusters, ExactSum};
use ar_iet::gasket::{default_seed, directing_prefix, reconstruct_triple};
use ar_iet::iet::{build_ar9, trajectory, Partition};
use ar_iet::induction::{induce_step, iterate_induction};
use ar_iet::rational::{int, ratio};
use ar_iet::towers::towers_at_stage;
use ar_iet::words::stage_words;
use ar_iet::{Alphabet, DirectingPrefix, OrderTag};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn prefix() -> DirectingPrefix {
    "121323121323".parse().unwrap()
}

fn gasket(c: &mut Criterion) {
    let seed = default_seed();
    let p = prefix();
    c.bench_function("reconstruct_triple/12", |b| {
        b.iter(|| reconstruct_triple(black_box(&p), &seed).unwrap())
    });
    let t = reconstruct_triple(&p, &seed).unwrap();
    c.bench_function("directing_prefix/12", |b| b.iter(|| directing_prefix(black_box(&t), 64)));
}

fn words(c: &mut Criterion) {
    let mut g = c.benchmark_group("stage_words");
    for n in [6usize, 10, 14] {
        let p: DirectingPrefix = "123".repeat(n / 3 + 1)[..n].parse().unwrap();
        g.bench_with_input(BenchmarkId::new("a9", n), &p, |b, p| {
            b.iter(|| stage_words(p, Alphabet::A9, 1 << 22).unwrap())
        });
    }
    g.finish();
}

fn orbits_and_induction(c: &mut Criterion) {
    let t = reconstruct_triple(&prefix(), &default_seed()).unwrap();
    let m = build_ar9(&t, OrderTag::FIRST, [int(0), int(0)]).unwrap();
    let x = &m.piece(4).lo + ratio(1, 7);
    c.bench_function("trajectory/1000", |b| {
        b.iter(|| trajectory(&m, black_box(&x), 1000, Partition::Nine).unwrap())
    });
    c.bench_function("induce_step", |b| b.iter(|| induce_step(black_box(&m), 1).unwrap()));
    let stages = iterate_induction(&m, 6).unwrap();
    c.bench_function("towers_at_stage/6", |b| {
        b.iter(|| towers_at_stage(&m, black_box(&stages), 6).unwrap())
    });
    let target = trajectory(&m, &x, 100, Partition::Three).unwrap();
    c.bench_function("preimage_clusters/100", |b| {
        b.iter(|| preimage_clusters(&m, black_box(&target)).unwrap())
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("exact_sum/reciprocal_squares_10k", |b| {
        b.iter(|| ExactSum::of_reciprocals((1..=10_000u64).map(|n| n * n)))
    });
}

criterion_group!(benches, gasket, words, orbits_and_induction, series);
criterion_main!(benches);
