//! u(4) generators, Lie closure, and the entangling-gate classifier.
//!
//! A two-qubit gate is *primitive* if it maps every product state to a
//! product state and *entangling* otherwise. [`is_entangling`] decides this
//! by scanning a fixed set of product inputs; the Lie-algebraic check
//! (closure of the one-qubit generators together with `−i log U`) is
//! reported alongside as a diagnostic.

use std::fmt;

use nalgebra::DMatrix;

use crate::linalg::{pauli, CMatrix, C64, I, ONE, ZERO};
use crate::par::{self, Parallelism};
use crate::sampling;
use crate::state::{QubitState, Tensor, UnitaryMatrix};
use crate::{Error, Result};

/// Rank threshold relative to each candidate's norm.
pub const RANK_TOL: f64 = 1e-9;
/// Largest Hermitian deviation accepted for closure seeds.
pub const SEED_HERMITIAN_TOL: f64 = 1e-10;
/// Schmidt threshold for calling an image entangled.
pub const SCHMIDT_TOL: f64 = 1e-9;
/// Eigenphases beyond `π − BRANCH_MARGIN` are flagged as near the cut.
pub const BRANCH_MARGIN: f64 = 1e-6;

/// `(e_ij)_mn = δ_im δ_jn`, indices 1-based.
pub fn eij(i: usize, j: usize) -> Result<CMatrix> {
    if !(1..=4).contains(&i) || !(1..=4).contains(&j) {
        return Err(Error::IndexOutOfRange { i, j });
    }
    let mut m = CMatrix::zeros(4);
    m[(i - 1, j - 1)] = ONE;
    Ok(m)
}

/// Symbolic u(4) generator, indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `e_ii`
    E(usize),
    /// `i(e_ij − e_ji)`
    I(usize, usize),
    /// `e_ij + e_ji`
    J(usize, usize),
}

impl Generator {
    pub fn matrix(self) -> CMatrix {
        let e = |i, j| eij(i, j).expect("generator indices are in range");
        match self {
            Generator::E(i) => e(i, i),
            Generator::I(i, j) => (&e(i, j) - &e(j, i)).scale(I),
            Generator::J(i, j) => &e(i, j) + &e(j, i),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}{i}"),
            Generator::I(i, j) => write!(f, "I{i}{j}"),
            Generator::J(i, j) => write!(f, "J{i}{j}"),
        }
    }
}

/// Hermitian matrices with unique labels.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianBasisSet {
    pub elements: Vec<CMatrix>,
    pub labels: Vec<String>,
}

impl HermitianBasisSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The 16 generators: `I_ij`, `J_ij` for `i < j`, then `e_ii`.
pub fn u4_generators() -> HermitianBasisSet {
    let mut gens = Vec::with_capacity(16);
    for i in 1..=4 {
        for j in i + 1..=4 {
            gens.push(Generator::I(i, j));
        }
    }
    for i in 1..=4 {
        for j in i + 1..=4 {
            gens.push(Generator::J(i, j));
        }
    }
    gens.extend((1..=4).map(Generator::E));
    HermitianBasisSet {
        elements: gens.iter().map(|g| g.matrix()).collect(),
        labels: gens.iter().map(|g| g.to_string()).collect(),
    }
}

/// `σ_μ ⊗ σ_ν`.
pub fn pauli_tensor(mu: usize, nu: usize) -> Result<CMatrix> {
    if mu > 3 || nu > 3 {
        return Err(Error::IndexOutOfRange { i: mu, j: nu });
    }
    Ok(pauli(mu).kron(&pauli(nu)))
}

/// `coefficient × generator`.
pub type Term = (i8, Generator);

use Generator::{E, I as Ig, J};

/// `σ_μ ⊗ σ_ν` written in the `I/J/e` generators, row `μ`, column `ν`.
static PAULI_TABLE: [[&[Term]; 4]; 4] = [
    [
        &[(1, E(1)), (1, E(2)), (1, E(3)), (1, E(4))],
        &[(1, J(1, 2)), (1, J(3, 4))],
        &[(-1, Ig(1, 2)), (-1, Ig(3, 4))],
        &[(1, E(1)), (-1, E(2)), (1, E(3)), (-1, E(4))],
    ],
    [
        &[(1, J(1, 3)), (1, J(2, 4))],
        &[(1, J(1, 4)), (1, J(2, 3))],
        &[(-1, Ig(1, 4)), (1, Ig(2, 3))],
        &[(1, J(1, 3)), (-1, J(2, 4))],
    ],
    [
        &[(-1, Ig(1, 3)), (-1, Ig(2, 4))],
        &[(-1, Ig(1, 4)), (-1, Ig(2, 3))],
        &[(-1, J(1, 4)), (1, J(2, 3))],
        &[(-1, Ig(1, 3)), (1, Ig(2, 4))],
    ],
    [
        &[(1, E(1)), (1, E(2)), (-1, E(3)), (-1, E(4))],
        &[(1, J(1, 2)), (-1, J(3, 4))],
        &[(-1, Ig(1, 2)), (1, Ig(3, 4))],
        &[(1, E(1)), (-1, E(2)), (-1, E(3)), (1, E(4))],
    ],
];

/// Generator expansion of `σ_μ ⊗ σ_ν`.
pub fn pauli_table_entry(mu: usize, nu: usize) -> Result<&'static [Term]> {
    if mu > 3 || nu > 3 {
        return Err(Error::IndexOutOfRange { i: mu, j: nu });
    }
    Ok(PAULI_TABLE[mu][nu])
}

/// Evaluate an integer combination of generators.
pub fn combination(terms: &[Term]) -> CMatrix {
    terms.iter().fold(CMatrix::zeros(4), |acc, &(c, g)| {
        &acc + &g.matrix().scale(C64::from(c as f64))
    })
}

/// One-qubit generators `{1⊗1, 1⊗σ_ν, σ_μ⊗1}`.
pub fn local_generators() -> HermitianBasisSet {
    let mut elements = vec![pauli_tensor(0, 0).unwrap()];
    let mut labels = vec!["1⊗1".to_string()];
    for nu in 1..=3 {
        elements.push(pauli_tensor(0, nu).unwrap());
        labels.push(format!("1⊗σ{nu}"));
    }
    for mu in 1..=3 {
        elements.push(pauli_tensor(mu, 0).unwrap());
        labels.push(format!("σ{mu}⊗1"));
    }
    HermitianBasisSet { elements, labels }
}

/// Real coordinates of a Hermitian 4×4: diagonal, then `(re, im)` of the
/// strict upper triangle.
fn vectorize(m: &CMatrix) -> [f64; 16] {
    let mut v = [0.0; 16];
    for i in 0..4 {
        v[i] = m[(i, i)].re;
    }
    let mut k = 4;
    for i in 0..4 {
        for j in i + 1..4 {
            // off-diagonal pairs appear twice in the Frobenius product
            v[k] = m[(i, j)].re * std::f64::consts::SQRT_2;
            v[k + 1] = m[(i, j)].im * std::f64::consts::SQRT_2;
            k += 2;
        }
    }
    v
}

fn devectorize(v: &[f64; 16]) -> CMatrix {
    let mut m = CMatrix::zeros(4);
    for i in 0..4 {
        m[(i, i)] = C64::from(v[i]);
    }
    let mut k = 4;
    for i in 0..4 {
        for j in i + 1..4 {
            let z = C64::new(v[k], v[k + 1]) / std::f64::consts::SQRT_2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
            k += 2;
        }
    }
    m
}

/// Orthonormal basis of a real span, grown one candidate at a time.
#[derive(Default)]
struct RealSpan {
    basis: Vec<[f64; 16]>,
}

impl RealSpan {
    /// Adds the component of `m` orthogonal to the span if it is larger
    /// than [`RANK_TOL`] relative to `m`. Returns the new basis element.
    fn insert(&mut self, m: &CMatrix) -> Option<CMatrix> {
        let mut v = vectorize(m);
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if scale == 0.0 {
            return None;
        }
        for _ in 0..2 {
            for b in &self.basis {
                let p: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= p * y;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= RANK_TOL * scale {
            return None;
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        self.basis.push(v);
        Some(devectorize(&v))
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Real rank of a set of Hermitian 4×4 matrices.
pub fn real_rank(elements: &[CMatrix]) -> usize {
    let mut span = RealSpan::default();
    for m in elements {
        span.insert(m);
    }
    span.dim()
}

/// Dimension of the real Lie algebra generated by `seeds` under
/// `(A, B) ↦ −i[A, B]`.
pub fn lie_closure_dimension(seeds: &[CMatrix]) -> Result<usize> {
    for s in seeds {
        if s.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: s.dim(),
            });
        }
        let deviation = s.hermiticity_deviation();
        if !(deviation <= SEED_HERMITIAN_TOL) {
            return Err(Error::NotHermitian { deviation });
        }
    }
    let mut span = RealSpan::default();
    let mut elements: Vec<CMatrix> = seeds.iter().filter_map(|s| span.insert(s)).collect();
    let mut frontier = 0;
    while frontier < elements.len() {
        let end = elements.len();
        for a in frontier..end {
            for b in 0..a {
                let c = elements[a].commutator(&elements[b]).scale(-I);
                if let Some(e) = span.insert(&c) {
                    elements.push(e);
                }
            }
        }
        frontier = end;
        if span.dim() == 16 {
            break;
        }
    }
    Ok(span.dim())
}

/// `−i log U` from a complex Schur factorization, principal branch
/// (eigenphases in `(−π, π]`), together with the eigen-decomposition.
pub struct HermitianLog {
    pub eigenphases: Vec<f64>,
    eigenvectors: CMatrix,
}

impl HermitianLog {
    pub fn new(u: &UnitaryMatrix) -> Self {
        let n = u.dim();
        let m = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
        let (q, t) = nalgebra::Schur::new(m).unpack();
        let eigenphases = (0..n).map(|i| t[(i, i)].arg()).collect();
        let eigenvectors = CMatrix::from_fn(n, |i, j| q[(i, j)]);
        HermitianLog {
            eigenphases,
            eigenvectors,
        }
    }

    /// `Q diag(phases) Q†` for the given eigenphase assignment.
    pub fn with_phases(&self, phases: &[f64]) -> CMatrix {
        let q = &self.eigenvectors;
        let d = CMatrix::diagonal(&phases.iter().map(|&p| C64::from(p)).collect::<Vec<_>>());
        q.matmul(&d).matmul(&q.adjoint())
    }

    pub fn principal(&self) -> CMatrix {
        self.with_phases(&self.eigenphases)
    }

    pub fn near_branch_cut(&self) -> bool {
        self.eigenphases
            .iter()
            .any(|p| p.abs() > std::f64::consts::PI - BRANCH_MARGIN)
    }

    /// Groups of eigenvalue indices whose phases coincide on the circle.
    fn clusters(&self) -> Vec<Vec<usize>> {
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for (i, &p) in self.eigenphases.iter().enumerate() {
            let found = clusters.iter_mut().find(|c| {
                let d = (p - self.eigenphases[c[0]]).rem_euclid(std::f64::consts::TAU);
                d.min(std::f64::consts::TAU - d) < BRANCH_MARGIN
            });
            match found {
                Some(c) => c.push(i),
                None => clusters.push(vec![i]),
            }
        }
        clusters
    }
}

/// Algebraic side of the classifier.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicDiagnostic {
    pub eigenphases: Vec<f64>,
    /// Some eigenvalue lies within [`BRANCH_MARGIN`] of −1.
    pub branch_cut_flag: bool,
    /// Closure of the locals with the principal-branch logarithm.
    pub principal_closure: usize,
    /// Smallest closure over logarithm branches (each eigenvalue cluster
    /// shifted by `2πk`, `k ∈ {−1, 0, 1}`).
    pub closure: usize,
    pub entangling: bool,
}

/// Closure dimension of the locals plus `−i log U` over logarithm branches.
pub fn algebraic_diagnostic(u: &UnitaryMatrix) -> Result<AlgebraicDiagnostic> {
    require_two_qubit_unitary(u)?;
    let log = HermitianLog::new(u);
    let locals = local_generators().elements;
    let closure_with = |h: CMatrix| -> Result<usize> {
        let mut seeds = locals.clone();
        seeds.push(h);
        lie_closure_dimension(&seeds)
    };
    let principal_closure = closure_with(log.principal())?;

    // A local gate whose eigenphases wrap has a principal logarithm
    // outside the local algebra; some shifted branch lands back inside.
    let clusters = log.clusters();
    let mut closure = principal_closure;
    let combos = 3usize.pow(clusters.len() as u32);
    for code in 0..combos {
        if closure == 7 {
            break;
        }
        let mut phases = log.eigenphases.clone();
        let mut rest = code;
        for c in &clusters {
            let k = (rest % 3) as f64 - 1.0;
            rest /= 3;
            for &i in c {
                phases[i] += std::f64::consts::TAU * k;
            }
        }
        closure = closure.min(closure_with(log.with_phases(&phases))?);
    }
    Ok(AlgebraicDiagnostic {
        eigenphases: log.eigenphases.clone(),
        branch_cut_flag: log.near_branch_cut(),
        principal_closure,
        closure,
        entangling: closure == 16,
    })
}

/// Verdict of [`is_entangling`].
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglingReport {
    pub entangling: bool,
    /// Number of product inputs scanned.
    pub inputs_checked: usize,
    /// Largest second Schmidt coefficient among the images.
    pub max_schmidt_minor: f64,
    /// Index of the first input whose image is entangled.
    pub witness: Option<usize>,
    pub algebraic: AlgebraicDiagnostic,
}

impl EntanglingReport {
    /// Both verdicts agree, or the algebraic one is unreliable.
    pub fn consistent(&self) -> bool {
        self.algebraic.branch_cut_flag || self.algebraic.entangling == self.entangling
    }
}

/// Number of seeded random product states appended to the Bloch grid.
pub const RANDOM_PRODUCTS: usize = 100;
const RANDOM_PRODUCT_SEED: u64 = 0x0005_eed0_fa11;

fn bloch_state(theta: f64, phi: f64) -> [C64; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [C64::from(c), C64::from_polar(s, phi)]
}

/// The fixed product-state inputs: a 5⁴ Bloch grid (polar angle `kπ/4`,
/// azimuth `2πk/5` per qubit) followed by seeded random products.
pub fn product_test_states() -> Vec<QubitState> {
    let single: Vec<[C64; 2]> = (0..5)
        .flat_map(|a| (0..5).map(move |b| (a, b)))
        .map(|(a, b)| {
            bloch_state(
                a as f64 * std::f64::consts::FRAC_PI_4,
                b as f64 * std::f64::consts::TAU / 5.0,
            )
        })
        .collect();
    let mut states = Vec::with_capacity(single.len().pow(2) + RANDOM_PRODUCTS);
    for a in &single {
        for b in &single {
            states.push(product(*a, *b));
        }
    }
    let mut rng = sampling::rng(RANDOM_PRODUCT_SEED);
    for _ in 0..RANDOM_PRODUCTS {
        let a = sampling::random_qubit(&mut rng);
        let b = sampling::random_qubit(&mut rng);
        states.push(product(a, b));
    }
    states
}

fn product(a: [C64; 2], b: [C64; 2]) -> QubitState {
    let a = QubitState::from_parts_unchecked(a.to_vec(), vec![Default::default()]);
    let b = QubitState::from_parts_unchecked(b.to_vec(), vec![Default::default()]);
    a.tensor(&b)
}

fn require_two_qubit_unitary(u: &UnitaryMatrix) -> Result<()> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_deviation();
    if !(deviation <= crate::CIRCUIT_TOL) {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

pub fn is_entangling(u: &UnitaryMatrix) -> Result<EntanglingReport> {
    is_entangling_with(u, Parallelism::default())
}

pub fn is_entangling_with(u: &UnitaryMatrix, policy: Parallelism) -> Result<EntanglingReport> {
    require_two_qubit_unitary(u)?;
    let inputs = product_test_states();
    let minors = par::map_indexed(policy, inputs.len(), |k| {
        let image = QubitState::from_parts_unchecked(
            u.matrix().mul_vec(inputs[k].amplitudes()),
            inputs[k].coding().to_vec(),
        );
        image.schmidt_coefficients().expect("two-qubit image")[1]
    });
    let witness = minors.iter().position(|&s| s > SCHMIDT_TOL);
    let max_schmidt_minor = minors.iter().copied().fold(0.0, f64::max);
    Ok(EntanglingReport {
        entangling: witness.is_some(),
        inputs_checked: inputs.len(),
        max_schmidt_minor,
        witness,
        algebraic: algebraic_diagnostic(u)?,
    })
}

/// The SWAP gate.
pub fn swap() -> UnitaryMatrix {
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_fn(4, |i, j| {
        let swapped = ((j & 1) << 1) | (j >> 1);
        if i == swapped {
            ONE
        } else {
            ZERO
        }
    }))
}

/// CNOT with the first qubit as control.
pub fn cnot() -> UnitaryMatrix {
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_fn(4, |i, j| {
        let image = if j >= 2 { j ^ 1 } else { j };
        if i == image {
            ONE
        } else {
            ZERO
        }
    }))
}
