use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qes_bench::{clh_row1, sextic_on_surface};
use qes_core::oracle::{radial_eigenvalues, GridSpec};
use qes_core::solver::{self, determinant_energy_roots};
use qes_core::{tables, PotentialSpec, QuantumNumbers, Tolerances};

fn clh_ground_state(c: &mut Criterion) {
    let (couplings, q) = clh_row1();
    c.bench_function("clh_wavefunction row 1", |b| {
        b.iter(|| solver::clh_wavefunction(black_box(&couplings), black_box(&q)).unwrap())
    });
}

fn sextic_determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("sextic determinant roots");
    for p in [1u32, 4, 16, 64] {
        let s = sextic_on_surface(p, 3);
        let spec = PotentialSpec::sextic(s.mu, s.lambda, s.eta).unwrap();
        let q = QuantumNumbers::from_k(3, i64::from(p)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, _| {
            b.iter(|| determinant_energy_roots(black_box(&spec), black_box(&q)).unwrap())
        });
    }
    group.finish();
}

fn sextic_states(c: &mut Criterion) {
    let s = sextic_on_surface(8, 3);
    let spec = PotentialSpec::sextic(s.mu, s.lambda, s.eta).unwrap();
    let q = QuantumNumbers::from_k(3, 8).unwrap();
    c.bench_function("solve sextic p = 8", |b| {
        b.iter(|| solver::solve(black_box(&spec), black_box(&q), &Tolerances::default()).unwrap())
    });
}

fn tables(c: &mut Criterion) {
    c.bench_function("table 1", |b| b.iter(|| tables::reproduce_table1().unwrap()));
    c.bench_function("table 3", |b| b.iter(|| tables::reproduce_image_table(3).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let (couplings, q) = clh_row1();
    let spec = PotentialSpec::clh(couplings.a, couplings.b, couplings.c).unwrap();
    let grid = GridSpec::default_for(&spec, &q, 1).unwrap();
    for n in [1000usize, 4000] {
        let grid = grid.with_points(n).unwrap();
        group.bench_with_input(BenchmarkId::new("clh row 1", n), &grid, |b, grid| {
            b.iter(|| radial_eigenvalues(&spec, &q, black_box(grid), 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, clh_ground_state, sextic_determinant, sextic_states, tables, oracle);
criterion_main!(benches);
