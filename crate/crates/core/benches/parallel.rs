use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qlight::algebra::is_entangling_with;
use qlight::bpm::{
    lp_modes_parabolic, propagate_with, Grid, Mode, VectorField2D, WaveguideProfile,
};
use qlight::circuit::{build_qft_circuit, run_circuit_with};
use qlight::sampling::{haar_unitary, random_vector, rng};
use qlight::{Parallelism, QubitState};

const POLICIES: [Parallelism; 2] = [Parallelism::Sequential, Parallelism::Parallel];

fn qft(c: &mut Criterion) {
    let mut g = c.benchmark_group("qft_run_10q");
    let circuit = build_qft_circuit(10).unwrap();
    let psi = QubitState::normalized(random_vector(&mut rng(1), 1 << 10)).unwrap();
    for p in POLICIES {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{p:?}")),
            &p,
            |b, &p| b.iter(|| run_circuit_with(&circuit, &psi, p).unwrap()),
        );
    }
    g.finish();
}

fn entangling(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_entangling");
    let u = haar_unitary(&mut rng(2), 4);
    for p in POLICIES {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{p:?}")),
            &p,
            |b, &p| b.iter(|| is_entangling_with(&u, p).unwrap()),
        );
    }
    g.finish();
}

fn bpm(c: &mut Criterion) {
    let mut g = c.benchmark_group("bpm_128x128_10_steps");
    let grid = Grid::square(128, 0.5e-6).unwrap();
    let profile = WaveguideProfile::parabolic_with_mode_width(grid, 1.45, 1.55e-6, 5e-6).unwrap();
    let modes = lp_modes_parabolic(&profile);
    let field = VectorField2D::x_polarized(&modes.lp11a, 0.0);
    for p in POLICIES {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{p:?}")),
            &p,
            |b, &p| b.iter(|| propagate_with(&profile, &field, 1e-6, 10, Mode::Scalar, p).unwrap()),
        );
    }
    g.finish();
}

criterion_group!(benches, qft, entangling, bpm);
criterion_main!(benches);
