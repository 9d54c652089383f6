use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use recolor_bench::fixtures;
use recolor_core::fpt::{recolor, FptOptions};
use recolor_core::gadgets::{np_reduce, w1_reduce};
use recolor_core::oracle::{oracle_distance, OracleOptions};
use recolor_core::xp::{solve_xp, XpOptions};
use recolor_core::Graph;

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for (name, inst) in fixtures() {
        let lists = inst.lists().into_owned();
        let (g, a, b, ell) = (inst.graph(), inst.alpha(), inst.beta(), inst.ell());
        group.bench_with_input(BenchmarkId::new("oracle", name), &inst, |bench, _| {
            bench.iter(|| oracle_distance(g, &lists, a, b, &OracleOptions::default()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("xp", name), &inst, |bench, _| {
            bench.iter(|| solve_xp(g, &lists, a, b, black_box(ell), &XpOptions::default()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fpt", name), &inst, |bench, _| {
            bench.iter(|| {
                recolor(g, inst.k(), black_box(ell), a, b, &FptOptions::default()).unwrap()
            })
        });
    }
    group.finish();
}

fn generators(c: &mut Criterion) {
    let k3 = Graph::complete(3);
    c.bench_function("np_reduce K3", |b| {
        b.iter(|| np_reduce(black_box(&k3)).unwrap())
    });
    c.bench_function("w1_reduce K3 t=3", |b| {
        b.iter(|| w1_reduce(black_box(&k3), 3).unwrap())
    });
}

criterion_group!(benches, solvers, generators);
criterion_main!(benches);
