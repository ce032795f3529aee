//! State vectors, unitaries and the two-qubit diagnostics built on them.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::linalg::{CMatrix, C64, ONE, ZERO};
use crate::par::{self, Parallelism};
use crate::sampling;
use crate::{Error, Result, ALGEBRAIC_TOL};

/// Physical carrier of a qubit line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Coding {
    /// LP₀₁ polarization: |0⟩ = H, |1⟩ = V.
    #[default]
    Polarization,
    /// LP₁₁ orientation: |0⟩ = b, |1⟩ = a.
    Lp11,
}

impl Coding {
    pub fn symbol(self, bit: u8) -> char {
        match (self, bit) {
            (Coding::Polarization, 0) => 'H',
            (Coding::Polarization, _) => 'V',
            (Coding::Lp11, 0) => 'b',
            (Coding::Lp11, _) => 'a',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coding::Polarization => "polarization",
            Coding::Lp11 => "lp11",
        }
    }

    pub fn from_name(s: &str) -> Option<Coding> {
        match s {
            "polarization" => Some(Coding::Polarization),
            "lp11" => Some(Coding::Lp11),
            _ => None,
        }
    }
}

/// Kronecker product for states and unitaries alike.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

/// Kronecker product of two states or two unitaries; `a` occupies the
/// high bits.
pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

/// Square matrix with `U†U = I` checked at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    matrix: CMatrix,
}

impl UnitaryMatrix {
    /// Validates unitarity to [`ALGEBRAIC_TOL`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, ALGEBRAIC_TOL)
    }

    pub fn with_tolerance(matrix: CMatrix, tol: f64) -> Result<Self> {
        let deviation = matrix.unitarity_deviation();
        if !(deviation <= tol) {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(UnitaryMatrix { matrix })
    }

    /// For constructors whose output is unitary by formula; their tests
    /// carry the check instead.
    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        UnitaryMatrix { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix {
            matrix: CMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Number of qubits the matrix acts on, if the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        UnitaryMatrix {
            matrix: self.matrix.adjoint(),
        }
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &UnitaryMatrix) -> Self {
        UnitaryMatrix {
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    /// Multiply by a unimodular scalar.
    pub fn with_phase(&self, phi: f64) -> Self {
        UnitaryMatrix {
            matrix: self.matrix.scale(crate::linalg::cis(phi)),
        }
    }

    pub fn unitarity_deviation(&self) -> f64 {
        self.matrix.unitarity_deviation()
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

impl Tensor for UnitaryMatrix {
    fn tensor(&self, other: &Self) -> Self {
        UnitaryMatrix {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

impl std::ops::Index<(usize, usize)> for UnitaryMatrix {
    type Output = C64;
    fn index(&self, ij: (usize, usize)) -> &C64 {
        &self.matrix[ij]
    }
}

/// `true` iff some unimodular `c` gives `max |U − cV| ≤ tol`.
///
/// `c` is read off the largest-magnitude entry of `V`, so no division by a
/// near-zero entry can happen.
pub fn equal_up_to_global_phase(u: &UnitaryMatrix, v: &UnitaryMatrix, tol: f64) -> bool {
    if u.dim() != v.dim() {
        return false;
    }
    let (k, vk) = v
        .matrix
        .as_slice()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("matrix has at least one entry");
    let ratio = u.matrix.as_slice()[k] / vk;
    let c = if ratio.norm() > 0.0 {
        ratio / ratio.norm()
    } else {
        ONE
    };
    u.matrix.max_abs_diff(&v.matrix.scale(c)) <= tol
}

/// Amplitude vector over the n-qubit computational basis, msb-first.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    amplitudes: Vec<C64>,
    coding: Vec<Coding>,
}

impl QubitState {
    /// Validates length 2ⁿ and normalization to [`ALGEBRAIC_TOL`].
    /// All qubits default to polarization coding.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        let n = len.trailing_zeros() as usize;
        Self::with_coding(amplitudes, vec![Coding::default(); n])
    }

    pub fn with_coding(amplitudes: Vec<C64>, coding: Vec<Coding>) -> Result<Self> {
        let n = coding.len();
        if amplitudes.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amplitudes.len(),
            });
        }
        let norm = crate::linalg::norm_sqr(&amplitudes);
        if !((norm - 1.0).abs() <= ALGEBRAIC_TOL) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(QubitState { amplitudes, coding })
    }

    /// Normalizes the given amplitudes before validating.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = crate::linalg::norm_sqr(&amplitudes).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Computational basis state `|index⟩` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > crate::MAX_QUBITS {
            return Err(Error::QubitRange(n));
        }
        if index >= 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: index,
            });
        }
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[index] = ONE;
        Ok(QubitState {
            amplitudes,
            coding: vec![Coding::default(); n],
        })
    }

    /// Basis state from an msb-first bitstring such as `"0110"`.
    pub fn from_bitstring(bits: &str) -> Result<Self> {
        let n = bits.len();
        let mut index = 0usize;
        for (pos, ch) in bits.chars().enumerate() {
            let b = match ch {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "bitstring {bits:?} has non-binary symbol at position {pos}"
                    )))
                }
            };
            index = (index << 1) | b;
        }
        Self::basis(n, index)
    }

    /// Single-qubit state `a|0⟩ + b|1⟩`.
    pub fn qubit(a: C64, b: C64) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub(crate) fn from_parts_unchecked(amplitudes: Vec<C64>, coding: Vec<Coding>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << coding.len());
        QubitState { amplitudes, coding }
    }

    pub fn n(&self) -> usize {
        self.coding.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn coding(&self) -> &[Coding] {
        &self.coding
    }

    pub fn set_coding(&mut self, coding: Vec<Coding>) -> Result<()> {
        if coding.len() != self.n() {
            return Err(Error::QubitCount {
                expected: self.n(),
                found: coding.len(),
            });
        }
        self.coding = coding;
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        crate::linalg::norm_sqr(&self.amplitudes)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Apply `u` to `targets` (first target = most significant gate bit).
    pub fn apply_unitary(&self, u: &UnitaryMatrix, targets: &[usize]) -> Result<QubitState> {
        self.apply_unitary_with(u, targets, Parallelism::default())
    }

    pub fn apply_unitary_with(
        &self,
        u: &UnitaryMatrix,
        targets: &[usize],
        policy: Parallelism,
    ) -> Result<QubitState> {
        let layout = TargetLayout::new(self.n(), targets)?;
        if u.dim() != 1 << targets.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << targets.len(),
                found: u.dim(),
            });
        }
        let m = u.matrix();
        let old = &self.amplitudes;
        let amplitudes = par::map_indexed_min(policy, old.len(), |i| {
            let row = layout.local_index(i);
            let base = i & !layout.mask;
            m.row(row)
                .iter()
                .zip(&layout.spread)
                .map(|(&g, &off)| g * old[base | off])
                .sum()
        });
        Ok(QubitState {
            amplitudes,
            coding: self.coding.clone(),
        })
    }

    /// Apply a basis permutation `|j⟩ ↦ |perm[j]⟩` on `targets`.
    pub fn apply_permutation(&self, perm: &[usize], targets: &[usize]) -> Result<QubitState> {
        self.apply_permutation_with(perm, targets, Parallelism::default())
    }

    pub fn apply_permutation_with(
        &self,
        perm: &[usize],
        targets: &[usize],
        policy: Parallelism,
    ) -> Result<QubitState> {
        let layout = TargetLayout::new(self.n(), targets)?;
        if perm.len() != 1 << targets.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << targets.len(),
                found: perm.len(),
            });
        }
        let mut inverse = vec![usize::MAX; perm.len()];
        for (j, &p) in perm.iter().enumerate() {
            if p >= perm.len() || inverse[p] != usize::MAX {
                return Err(Error::InvalidParameter(
                    "table is not a permutation".to_string(),
                ));
            }
            inverse[p] = j;
        }
        let old = &self.amplitudes;
        let amplitudes = par::map_indexed_min(policy, old.len(), |i| {
            let local = layout.local_index(i);
            old[(i & !layout.mask) | layout.spread[inverse[local]]]
        });
        Ok(QubitState {
            amplitudes,
            coding: self.coding.clone(),
        })
    }

    /// Multinomial sample of `shots` outcomes; keys are msb-first bitstrings.
    pub fn measure(&self, shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let mut cumulative = Vec::with_capacity(self.amplitudes.len());
        let mut acc = 0.0;
        for a in &self.amplitudes {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        let total = acc;
        let mut counts = vec![0u64; self.amplitudes.len()];
        let mut rng = sampling::rng(seed);
        for _ in 0..shots {
            let u: f64 = rng.random::<f64>() * total;
            let k = cumulative
                .partition_point(|&c| c <= u)
                .min(counts.len() - 1);
            counts[k] += 1;
        }
        let n = self.n();
        Ok(counts
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(k, c)| (bitstring(k, n), c))
            .collect())
    }

    fn require_two_qubits(&self) -> Result<()> {
        if self.n() != 2 {
            return Err(Error::QubitCount {
                expected: 2,
                found: self.n(),
            });
        }
        Ok(())
    }

    /// Singular values of the 2×2 amplitude matrix, largest first.
    pub fn schmidt_coefficients(&self) -> Result<[f64; 2]> {
        self.require_two_qubits()?;
        let a = &self.amplitudes;
        let frob = self.norm_sqr();
        let det = (a[0] * a[3] - a[1] * a[2]).norm();
        let disc = (frob * frob - 4.0 * det * det).max(0.0).sqrt();
        let s_max = ((frob + disc) / 2.0).sqrt();
        // σ₁σ₂ = |det| is better conditioned than the difference formula
        let s_min = if s_max > 0.0 { det / s_max } else { 0.0 };
        Ok([s_max, s_min])
    }

    /// Number of Schmidt coefficients above `tol`.
    pub fn schmidt_rank(&self, tol: f64) -> Result<usize> {
        Ok(self
            .schmidt_coefficients()?
            .iter()
            .filter(|&&s| s > tol)
            .count())
    }

    /// Reduced density matrix of qubit 1 after tracing out qubit 0.
    pub fn partial_trace_control(&self) -> Result<DensityMatrix2> {
        self.require_two_qubits()?;
        let a = &self.amplitudes;
        let mut rho = [[ZERO; 2]; 2];
        for (i, row) in rho.iter_mut().enumerate() {
            for (j, r) in row.iter_mut().enumerate() {
                *r = a[i] * a[j].conj() + a[2 + i] * a[2 + j].conj();
            }
        }
        Ok(DensityMatrix2 { entries: rho })
    }
}

impl Tensor for QubitState {
    fn tensor(&self, other: &Self) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        let coding = self.coding.iter().chain(&other.coding).copied().collect();
        QubitState { amplitudes, coding }
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut first = true;
        for (k, a) in self.amplitudes.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let label: String = (0..n)
                .map(|q| self.coding[q].symbol(((k >> (n - 1 - q)) & 1) as u8))
                .collect();
            write!(f, "({:.6}{:+.6}i)|{label}⟩", a.re, a.im)?;
        }
        Ok(())
    }
}

/// msb-first bitstring of `index` on `n` bits.
pub fn bitstring(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| {
            if (index >> (n - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Bit bookkeeping for a gate acting on a subset of qubits.
struct TargetLayout {
    /// position of each target bit in the register index
    positions: Vec<usize>,
    /// register-index offset of each local basis index
    spread: Vec<usize>,
    mask: usize,
}

impl TargetLayout {
    fn new(n: usize, targets: &[usize]) -> Result<Self> {
        let mut seen = 0usize;
        for &t in targets {
            if t >= n {
                return Err(Error::TargetOutOfRange { index: t, n });
            }
            if seen & (1 << t) != 0 {
                return Err(Error::DuplicateTarget(t));
            }
            seen |= 1 << t;
        }
        let k = targets.len();
        let positions: Vec<usize> = targets.iter().map(|&t| n - 1 - t).collect();
        let spread = (0..1usize << k)
            .map(|c| {
                positions
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| (c >> (k - 1 - j)) & 1 == 1)
                    .map(|(_, &p)| 1usize << p)
                    .sum()
            })
            .collect();
        let mask = positions.iter().map(|&p| 1usize << p).sum();
        Ok(TargetLayout {
            positions,
            spread,
            mask,
        })
    }

    #[inline]
    fn local_index(&self, i: usize) -> usize {
        let k = self.positions.len();
        self.positions
            .iter()
            .enumerate()
            .fold(0, |acc, (j, &p)| acc | (((i >> p) & 1) << (k - 1 - j)))
    }
}

/// 2×2 density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2 {
    pub entries: [[C64; 2]; 2],
}

impl DensityMatrix2 {
    /// `|ψ⟩⟨ψ|`.
    pub fn pure(psi: [C64; 2]) -> Self {
        let mut entries = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                entries[i][j] = psi[i] * psi[j].conj();
            }
        }
        DensityMatrix2 { entries }
    }

    pub fn trace(&self) -> f64 {
        (self.entries[0][0] + self.entries[1][1]).re
    }

    /// Eigenvalues, largest first.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let [[a, b], [_, d]] = self.entries;
        let mean = (a.re + d.re) / 2.0;
        let half_gap = (((a.re - d.re) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        [mean + half_gap, mean - half_gap]
    }

    pub fn purity(&self) -> f64 {
        let [l0, l1] = self.eigenvalues();
        l0 * l0 + l1 * l1
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        m
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let e = &self.entries;
        (e[0][1] - e[1][0].conj())
            .norm()
            .max(e[0][0].im.abs())
            .max(e[1][1].im.abs())
    }
}

impl std::ops::Add for DensityMatrix2 {
    type Output = DensityMatrix2;
    fn add(self, rhs: Self) -> Self {
        let mut entries = self.entries;
        for (row, other) in entries.iter_mut().zip(&rhs.entries) {
            for (a, b) in row.iter_mut().zip(other) {
                *a += b;
            }
        }
        DensityMatrix2 { entries }
    }
}

impl std::ops::Mul<DensityMatrix2> for f64 {
    type Output = DensityMatrix2;
    fn mul(self, rhs: DensityMatrix2) -> DensityMatrix2 {
        let mut entries = rhs.entries;
        for row in entries.iter_mut() {
            for e in row.iter_mut() {
                *e *= self;
            }
        }
        DensityMatrix2 { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cis, pauli};
    use crate::sampling::{haar_unitary, random_vector, rng};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn u(m: CMatrix) -> UnitaryMatrix {
        UnitaryMatrix::new(m).unwrap()
    }

    #[test]
    fn tensor_examples() {
        let i4 = tensor(&UnitaryMatrix::identity(2), &UnitaryMatrix::identity(2));
        assert_eq!(i4, UnitaryMatrix::identity(4));

        let s = tensor(
            &QubitState::basis(1, 0).unwrap(),
            &QubitState::basis(1, 1).unwrap(),
        );
        assert_eq!(s.amplitudes(), &[ZERO, ONE, ZERO, ZERO]);

        let zz = tensor(&u(pauli(3)), &u(pauli(3)));
        assert_eq!(zz.matrix(), &CMatrix::diagonal(&[ONE, -ONE, -ONE, ONE]));
    }

    #[test]
    fn tensor_is_associative() {
        let mut r = rng(11);
        let (a, b, c) = (
            haar_unitary(&mut r, 2),
            haar_unitary(&mut r, 4),
            haar_unitary(&mut r, 2),
        );
        let left = tensor(&tensor(&a, &b), &c);
        let right = tensor(&a, &tensor(&b, &c));
        assert!(left.max_abs_diff(&right) < 1e-15);
        // integer entries multiply exactly, so the index bookkeeping is
        // checked with no rounding at all
        let (x, y, z) = (u(pauli(1)), u(pauli(2)), u(pauli(3)));
        let left = tensor(&tensor(&x, &y), &z);
        let right = tensor(&x, &tensor(&y, &z));
        assert_eq!(left.matrix().as_slice(), right.matrix().as_slice());
    }

    #[test]
    fn apply_identity_and_phase_gate() {
        let mut r = rng(3);
        let psi = QubitState::new(random_vector(&mut r, 8)).unwrap();
        let same = psi
            .apply_unitary(&UnitaryMatrix::identity(4), &[2, 0])
            .unwrap();
        assert_eq!(same.amplitudes(), psi.amplitudes());

        let cz = u(CMatrix::diagonal(&[ONE, ONE, ONE, cis(PI)]));
        let out = QubitState::from_bitstring("11")
            .unwrap()
            .apply_unitary(&cz, &[0, 1])
            .unwrap();
        assert!((out.amplitudes()[3] + ONE).norm() < 1e-15);
    }

    #[test]
    fn apply_matches_dense_kron() {
        // X on qubit 1 of 3 equals (1 ⊗ X ⊗ 1)|ψ⟩
        let mut r = rng(4);
        let psi = QubitState::new(random_vector(&mut r, 8)).unwrap();
        let x = u(pauli(1));
        let dense = CMatrix::identity(2)
            .kron(&pauli(1))
            .kron(&CMatrix::identity(2));
        let expect = dense.mul_vec(psi.amplitudes());
        let got = psi.apply_unitary(&x, &[1]).unwrap();
        for (a, b) in got.amplitudes().iter().zip(&expect) {
            assert!((a - b).norm() < 1e-15);
        }
        // target order matters: gate index msb is the first target
        let g = haar_unitary(&mut r, 4);
        let a = psi.apply_unitary(&g, &[0, 2]).unwrap();
        let swap = u(CMatrix::from_fn(4, |i, j| {
            let sw = |k: usize| ((k & 1) << 1) | (k >> 1);
            if sw(j) == i {
                ONE
            } else {
                ZERO
            }
        }));
        let g_swapped = swap.compose(&g).compose(&swap);
        let b = psi.apply_unitary(&g_swapped, &[2, 0]).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn apply_rejects_bad_targets() {
        let psi = QubitState::basis(2, 0).unwrap();
        let g = UnitaryMatrix::identity(4);
        assert_eq!(
            psi.apply_unitary(&g, &[0, 0]),
            Err(Error::DuplicateTarget(0))
        );
        assert_eq!(
            psi.apply_unitary(&g, &[0, 5]),
            Err(Error::TargetOutOfRange { index: 5, n: 2 })
        );
        assert!(matches!(
            psi.apply_unitary(&g, &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn random_unitaries_preserve_norm() {
        let mut r = rng(2024);
        for trial in 0..1000 {
            let n = 1 + trial % 5;
            let k = 1 + trial % n.min(3);
            let psi = QubitState::new(random_vector(&mut r, 1 << n)).unwrap();
            let g = haar_unitary(&mut r, 1 << k);
            let targets: Vec<usize> = (0..k).map(|j| (j + trial) % n).collect();
            let out = psi.apply_unitary(&g, &targets).unwrap();
            assert!((out.norm_sqr() - 1.0).abs() <= 1e-12, "trial {trial}");
        }
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            QubitState::new(vec![ONE, ONE]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            QubitState::new(vec![ONE, ZERO, ZERO]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            UnitaryMatrix::new(CMatrix::diagonal(&[ONE, C64::new(2.0, 0.0)])),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn global_phase_comparison() {
        let mut r = rng(9);
        let g = haar_unitary(&mut r, 4);
        assert!(equal_up_to_global_phase(&g, &g.with_phase(PI / 3.0), 1e-12));
        assert!(!equal_up_to_global_phase(
            &UnitaryMatrix::identity(2),
            &u(pauli(1)),
            1e-12
        ));
        // reflexive, symmetric, phase-invariant
        let h = haar_unitary(&mut r, 4);
        assert!(equal_up_to_global_phase(&h, &h, 1e-12));
        assert_eq!(
            equal_up_to_global_phase(&g, &h, 1e-12),
            equal_up_to_global_phase(&h, &g, 1e-12)
        );
        for phi in [0.3, 2.0, -1.1] {
            assert!(equal_up_to_global_phase(
                &g.with_phase(phi),
                &g.with_phase(-phi),
                1e-12
            ));
        }
    }

    #[test]
    fn schmidt_rank_examples() {
        assert_eq!(
            QubitState::basis(2, 0)
                .unwrap()
                .schmidt_rank(1e-12)
                .unwrap(),
            1
        );
        let bell = QubitState::new(vec![
            C64::from(FRAC_1_SQRT_2),
            ZERO,
            ZERO,
            C64::from(FRAC_1_SQRT_2),
        ])
        .unwrap();
        assert_eq!(bell.schmidt_rank(1e-12).unwrap(), 2);
        assert!(matches!(
            QubitState::basis(3, 0).unwrap().schmidt_rank(1e-9),
            Err(Error::QubitCount { .. })
        ));
    }

    #[test]
    fn partial_trace_of_product_is_pure() {
        let alpha = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let s = tensor(
            &QubitState::basis(1, 0).unwrap(),
            &QubitState::qubit(alpha[0], alpha[1]).unwrap(),
        );
        let rho = s.partial_trace_control().unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix2::pure(alpha)) < 1e-15);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn schmidt_rank_one_iff_pure_reduced_state() {
        let mut r = rng(77);
        for trial in 0..500 {
            let s = if trial % 2 == 0 {
                let a = QubitState::new(random_vector(&mut r, 2)).unwrap();
                let b = QubitState::new(random_vector(&mut r, 2)).unwrap();
                tensor(&a, &b)
            } else {
                QubitState::new(random_vector(&mut r, 4)).unwrap()
            };
            let rank_one = s.schmidt_rank(1e-9).unwrap() == 1;
            let rho = s.partial_trace_control().unwrap();
            assert!(rho.hermiticity_deviation() < 1e-12);
            assert!((rho.trace() - 1.0).abs() < 1e-12);
            assert!(rho.eigenvalues()[1] >= -1e-12);
            assert_eq!(
                rank_one,
                rho.eigenvalues()[0] >= 1.0 - 1e-9,
                "trial {trial}"
            );
        }
    }

    #[test]
    fn measurement_contract() {
        let s = QubitState::from_bitstring("10").unwrap();
        let h = s.measure(100, 1).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h["10"], 100);

        let uniform = QubitState::new(vec![C64::from(0.5); 4]).unwrap();
        let shots = 100_000u64;
        let h = uniform.measure(shots, 42).unwrap();
        // binomial σ for p = 1/4
        let sigma = (shots as f64 * 0.25 * 0.75).sqrt();
        for key in ["00", "01", "10", "11"] {
            let dev = (h[key] as f64 - 25_000.0).abs();
            assert!(dev < 5.0 * sigma, "{key}: {}", h[key]);
        }
        assert_eq!(h, uniform.measure(shots, 42).unwrap());
        assert_eq!(uniform.measure(0, 1), Err(Error::ZeroShots));
    }

    #[test]
    fn permutation_application() {
        // cyclic shift on two qubits, applied to qubits [1, 0]
        let perm = [1, 2, 3, 0];
        let s = QubitState::from_bitstring("011").unwrap();
        let out = s.apply_permutation(&perm, &[1, 0]).unwrap();
        // local index of qubits (1,0) in "011" is 0b10 -> 3 = "11" on (q1,q0)
        assert_eq!(out.amplitudes()[0b111], ONE);
        assert!(s.apply_permutation(&[0, 0, 1, 2], &[0, 1]).is_err());
    }
}
