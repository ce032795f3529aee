//! Seeded random states and unitaries for tests, benches and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, C64, ZERO};
use crate::state::UnitaryMatrix;

/// The generator used everywhere a seed is accepted.
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of `seed`; used to give every shot or
/// scenario its own generator so results do not depend on scheduling.
pub fn stream_rng(seed: u64, stream: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniformly random unit vector in `C^dim`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Ginibre matrix.
///
/// Orthonormalizing columns in order is the QR factorization with a
/// positive real diagonal in R, which is exactly the Haar measure.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> UnitaryMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for q in &cols {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, qa) in v.iter_mut().zip(q) {
                    *x -= proj * qa;
                }
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|a| a / norm).collect());
    }
    let m = CMatrix::from_fn(dim, |i, j| cols[j][i]);
    UnitaryMatrix::from_matrix_unchecked(m)
}

/// Haar-random element of SU(2)⊗SU(2) up to phase, i.e. a random local gate.
pub fn random_local_gate<R: Rng + ?Sized>(rng: &mut R) -> UnitaryMatrix {
    let a = haar_unitary(rng, 2);
    let b = haar_unitary(rng, 2);
    UnitaryMatrix::from_matrix_unchecked(a.matrix().kron(b.matrix()))
}

/// Random single-qubit amplitude pair with unit norm.
pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> [C64; 2] {
    let v = random_vector(rng, 2);
    [v[0], v[1]]
}

pub fn zero_vector(dim: usize) -> Vec<C64> {
    vec![ZERO; dim]
}
