use criterion::{criterion_group, criterion_main, Criterion};
use horokit::boundary::limit_restrictions;
use horokit::groups::{cayley_ball, Group};
use std::hint::black_box;

fn balls(c: &mut Criterion) {
    let mut g = c.benchmark_group("cayley_ball");
    for (name, group, radius) in [
        ("z2_r32", Group::Zd { dim: 2 }, 32),
        ("f2_r8", Group::Free { rank: 2 }, 8),
        ("heisenberg_r8", Group::Heisenberg, 8),
    ] {
        let gens = group.standard_generators();
        g.bench_function(name, |b| {
            b.iter(|| cayley_ball(black_box(&group), &gens, radius, 2_000_000).unwrap())
        });
    }
    g.finish();
}

fn restrictions(c: &mut Criterion) {
    let mut g = c.benchmark_group("limit_restrictions");
    g.sample_size(10);
    for (name, group, r, r_max, window) in [
        ("z_r3", Group::Zd { dim: 1 }, 3, 20, 5),
        ("z2_r1", Group::Zd { dim: 2 }, 1, 12, 4),
        ("f2_r2", Group::Free { rank: 2 }, 2, 7, 2),
    ] {
        let gens = group.standard_generators();
        g.bench_function(name, |b| {
            b.iter(|| {
                limit_restrictions(black_box(&group), &gens, r, r_max, window, 2_000_000).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, balls, restrictions);
criterion_main!(benches);
