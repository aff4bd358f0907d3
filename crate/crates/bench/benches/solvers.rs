use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ordo_core::cones::{cone_axiom_report, iota, LeftOrderCone};
use ordo_core::diffuse::diffuse_scan;
use ordo_core::extend::{backtrack_solve, peel_solve, ExtensionProblem, RSet, DEFAULT_BACKTRACK_CAP};
use ordo_core::{GroupSpec, Window};

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("cone_axiom_report");
    for g in [GroupSpec::integers(), GroupSpec::klein(), GroupSpec::free(2).unwrap()] {
        let field = iota(&LeftOrderCone::standard(&g));
        let w = Window::ball(&g, 2, true);
        group.bench_with_input(BenchmarkId::from_parameter(g.to_string()), &w, |b, w| {
            b.iter(|| cone_axiom_report(black_box(&field), w, true))
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for (g, r) in [(GroupSpec::integers(), 5), (GroupSpec::klein(), 2), (GroupSpec::free(2).unwrap(), 1)] {
        let w = Window::ball(&g, r, true);
        let p = ExtensionProblem::new(w.clone(), RSet::canonical_full(&w), true).unwrap();
        group.bench_function(BenchmarkId::new("peel", g.to_string()), |b| b.iter(|| peel_solve(black_box(&p))));
        if w.len() <= DEFAULT_BACKTRACK_CAP {
            group.bench_function(BenchmarkId::new("backtrack", g.to_string()), |b| {
                b.iter(|| backtrack_solve(black_box(&p), DEFAULT_BACKTRACK_CAP, None))
            });
        }
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let z = GroupSpec::integers();
    let w = Window::ball(&z, 3, true);
    c.bench_function("diffuse_scan/zn:1 ball 3", |b| b.iter(|| diffuse_scan(&z, black_box(&w), 7, None)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = axioms, solvers, scan
}
criterion_main!(benches);
