use bratu_core::{
    make_grid_1d, make_grid_2d, newton_solve, solve_banded, solve_tridiag, studies, Bratu1d,
    Bratu2d, NewtonConfig, NonlinearSystem,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn newton_1d(c: &mut Criterion) {
    let mut group = c.benchmark_group("newton_1d");
    for m in [101, 401, 1601] {
        let problem = Bratu1d::new(make_grid_1d(m).unwrap(), 0.5).unwrap();
        let cfg = NewtonConfig::default().with_tol(1e-8).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &problem, |b, p| {
            b.iter(|| newton_solve(p, p.initial_guess(), &cfg))
        });
    }
    group.finish();
}

fn newton_2d(c: &mut Criterion) {
    let mut group = c.benchmark_group("newton_2d");
    for n in [11, 21, 41] {
        let problem = Bratu2d::new(make_grid_2d(n, n, 1.0).unwrap(), 0.8).unwrap();
        let cfg = NewtonConfig::default().with_tol(1e-8).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &problem, |b, p| {
            b.iter(|| newton_solve(p, p.initial_guess().unwrap(), &cfg))
        });
    }
    group.finish();
}

fn direct_solves(c: &mut Criterion) {
    let p1 = Bratu1d::new(make_grid_1d(10_001).unwrap(), 0.5).unwrap();
    let j1 = p1.jacobian(&p1.initial_guess()).unwrap();
    let rhs1 = vec![1.0; j1.dim()];
    c.bench_function("thomas_10000", |b| {
        b.iter(|| solve_tridiag(black_box(&j1), &rhs1))
    });

    let p2 = Bratu2d::new(make_grid_2d(41, 41, 1.0).unwrap(), 0.5).unwrap();
    let j2 = p2.jacobian(&p2.initial_guess().unwrap()).unwrap();
    let rhs2 = vec![1.0; j2.dim()];
    c.bench_function("banded_lu_39x41", |b| {
        b.iter(|| solve_banded(black_box(&j2), &rhs2))
    });
}

fn sweep(c: &mut Criterion) {
    let grid = make_grid_1d(101).unwrap();
    let cfg = NewtonConfig::default();
    c.bench_function("threshold_sweep_m101", |b| {
        b.iter(|| studies::threshold_sweep(0.87, 0.88, 0.001, &grid, &cfg))
    });
}

criterion_group!(benches, newton_1d, newton_2d, direct_solves, sweep);
criterion_main!(benches);
