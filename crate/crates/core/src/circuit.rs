//! Circuits, the quantum Fourier transform, and truth-table oracles.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;

use rand::Rng;
use rustfft::FftPlanner;

use crate::jones::{self, FiberSegment};
use crate::linalg::{cis, CMatrix, C64, ONE, ZERO};
use crate::par::{self, Parallelism};
use crate::sampling;
use crate::state::{bitstring, Coding, QubitState, UnitaryMatrix};
use crate::twoqubit::{cphase_matrix, ControlledPhaseSpec};
use crate::{Error, Result, MAX_QUBITS};

/// A gate together with what it needs to build its matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    /// Normalized Hadamard `(1/√2)[[1, 1], [1, −1]]`.
    Hadamard,
    /// `diag(1, e^{iφ})`.
    PhaseShift(f64),
    /// `diag(1, 1, 1, e^{iθ})`, control first.
    ControlledPhase(f64),
    Swap,
    /// A fiber segment acting on one polarization qubit.
    Jones(FiberSegment),
    /// `D(α) X(θ) D(β)`.
    U2 {
        alpha: f64,
        theta: f64,
        beta: f64,
    },
    Unitary {
        label: String,
        matrix: UnitaryMatrix,
    },
    /// Basis permutation `|j⟩ ↦ |table[j]⟩`.
    Permutation {
        label: String,
        table: Vec<usize>,
    },
}

impl Gate {
    pub fn arity(&self) -> usize {
        match self {
            Gate::Hadamard | Gate::PhaseShift(_) | Gate::Jones(_) | Gate::U2 { .. } => 1,
            Gate::ControlledPhase(_) | Gate::Swap => 2,
            Gate::Unitary { matrix, .. } => matrix.qubits().unwrap_or(0),
            Gate::Permutation { table, .. } => {
                if table.len().is_power_of_two() {
                    table.len().trailing_zeros() as usize
                } else {
                    0
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Gate::Hadamard => "h",
            Gate::PhaseShift(_) => "phase",
            Gate::ControlledPhase(_) => "cphase",
            Gate::Swap => "swap",
            Gate::Jones(s) => s.kind().keyword(),
            Gate::U2 { .. } => "u2",
            Gate::Unitary { label, .. } | Gate::Permutation { label, .. } => label,
        }
    }

    /// Dense matrix of the gate on its own qubits.
    pub fn unitary(&self) -> UnitaryMatrix {
        match self {
            Gate::Hadamard => jones::hadamard(),
            Gate::PhaseShift(phi) => jones::phase_shift(*phi),
            Gate::ControlledPhase(theta) => cphase_matrix(&ControlledPhaseSpec::new(*theta)),
            Gate::Swap => crate::algebra::swap(),
            Gate::Jones(seg) => seg.unitary(),
            Gate::U2 { alpha, theta, beta } => jones::u2_from_angles(*alpha, *theta, *beta),
            Gate::Unitary { matrix, .. } => matrix.clone(),
            Gate::Permutation { table, .. } => permutation_matrix(table),
        }
    }
}

fn permutation_matrix(table: &[usize]) -> UnitaryMatrix {
    let mut m = CMatrix::zeros(table.len());
    for (j, &i) in table.iter().enumerate() {
        m[(i, j)] = ONE;
    }
    UnitaryMatrix::from_matrix_unchecked(m)
}

/// One gate application.
#[derive(Clone, Debug, PartialEq)]
pub struct Operation {
    pub gate: Gate,
    /// Qubit lines, most significant gate bit first.
    pub targets: Vec<usize>,
}

/// Ordered gate applications over `n` qubit lines.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitModel {
    n: usize,
    name: String,
    ops: Vec<Operation>,
    coding: Vec<Coding>,
}

impl CircuitModel {
    pub fn new(n: usize, name: impl Into<String>) -> Result<Self> {
        Self::with_coding(vec![Coding::default(); n], name)
    }

    /// Circuit whose line `q` carries `coding[q]`.
    pub fn with_coding(coding: Vec<Coding>, name: impl Into<String>) -> Result<Self> {
        let n = coding.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitRange(n));
        }
        Ok(CircuitModel {
            n,
            name: name.into(),
            ops: Vec::new(),
            coding,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coding(&self) -> &[Coding] {
        &self.coding
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Appends `gate` on `targets` after checking arity and indices.
    pub fn push(&mut self, gate: Gate, targets: &[usize]) -> Result<()> {
        let arity = gate.arity();
        if arity == 0 || arity != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << targets.len(),
                found: match &gate {
                    Gate::Permutation { table, .. } => table.len(),
                    g => g.unitary().dim(),
                },
            });
        }
        let mut seen = 0usize;
        for &t in targets {
            if t >= self.n {
                return Err(Error::TargetOutOfRange {
                    index: t,
                    n: self.n,
                });
            }
            if seen & (1 << t) != 0 {
                return Err(Error::DuplicateTarget(t));
            }
            seen |= 1 << t;
        }
        self.ops.push(Operation {
            gate,
            targets: targets.to_vec(),
        });
        Ok(())
    }

    /// Appends every operation of `other` with its lines shifted by `offset`.
    pub fn append(&mut self, other: &CircuitModel, offset: usize) -> Result<()> {
        for op in &other.ops {
            let targets: Vec<usize> = op.targets.iter().map(|t| t + offset).collect();
            self.push(op.gate.clone(), &targets)?;
        }
        Ok(())
    }

    /// The whole circuit as one matrix, column by column.
    pub fn unitary(&self) -> Result<UnitaryMatrix> {
        self.unitary_with(Parallelism::default())
    }

    pub fn unitary_with(&self, policy: Parallelism) -> Result<UnitaryMatrix> {
        let dim = 1usize << self.n;
        let cols = par::map_indexed(policy, dim, |j| {
            let basis = QubitState::basis(self.n, j).expect("index in range");
            run_circuit_with(self, &basis, Parallelism::Sequential).map(QubitState::into_amplitudes)
        });
        let cols = cols.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(UnitaryMatrix::from_matrix_unchecked(CMatrix::from_fn(
            dim,
            |i, j| cols[j][i],
        )))
    }
}

impl fmt::Display for CircuitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "circuit {} on {} qubits, {} ops",
            self.name,
            self.n,
            self.ops.len()
        )?;
        for op in &self.ops {
            let lines: Vec<String> = op.targets.iter().map(|t| format!("q{t}")).collect();
            writeln!(f, "  {} {}", op.gate.name(), lines.join(","))?;
        }
        Ok(())
    }
}

pub fn run_circuit(c: &CircuitModel, state: &QubitState) -> Result<QubitState> {
    run_circuit_with(c, state, Parallelism::default())
}

/// Applies the operations in order; the output carries the circuit's coding.
pub fn run_circuit_with(
    c: &CircuitModel,
    state: &QubitState,
    policy: Parallelism,
) -> Result<QubitState> {
    if state.n() != c.n {
        return Err(Error::QubitCount {
            expected: c.n,
            found: state.n(),
        });
    }
    let mut s = state.clone();
    for op in &c.ops {
        s = match &op.gate {
            Gate::Permutation { table, .. } => {
                s.apply_permutation_with(table, &op.targets, policy)?
            }
            g => s.apply_unitary_with(&g.unitary(), &op.targets, policy)?,
        };
    }
    s.set_coding(c.coding.clone())?;
    Ok(s)
}

fn check_qft_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitRange(n));
    }
    Ok(())
}

/// `F_{lk} = ω^{lk}/√N` with `ω = e^{2πi/N}`.
pub fn qft_matrix(n: usize) -> Result<UnitaryMatrix> {
    check_qft_size(n)?;
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    // reduce the exponent mod N so phases stay accurate at large N
    Ok(UnitaryMatrix::from_matrix_unchecked(CMatrix::from_fn(
        dim,
        |l, k| cis(TAU * ((l * k) % dim) as f64 / dim as f64) * scale,
    )))
}

/// `x = j₁2ⁿ⁻¹ + … + jₙ2⁰`. Any nonzero entry counts as 1.
pub fn index_from_bits(bits: &[u8]) -> usize {
    bits.iter()
        .fold(0, |acc, &b| (acc << 1) | usize::from(b != 0))
}

pub fn bits_from_index(x: usize, n: usize) -> Vec<u8> {
    (0..n).map(|q| ((x >> (n - 1 - q)) & 1) as u8).collect()
}

/// Gates in the QFT circuit before the bit-reversal swaps.
pub fn qft_gate_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Phase of the controlled rotation between lines `i < j`: `2π/2^{j−i+1}`.
pub fn controlled_rotation_angle(i: usize, j: usize) -> f64 {
    TAU / (1u64 << (j - i + 1)) as f64
}

/// Hadamards and controlled rotations, then bit-reversal swaps.
pub fn build_qft_circuit(n: usize) -> Result<CircuitModel> {
    check_qft_size(n)?;
    let mut c = CircuitModel::new(n, format!("qft{n}"))?;
    for i in 0..n {
        c.push(Gate::Hadamard, &[i])?;
        for j in i + 1..n {
            c.push(
                Gate::ControlledPhase(controlled_rotation_angle(i, j)),
                &[j, i],
            )?;
        }
    }
    for i in 0..n / 2 {
        c.push(Gate::Swap, &[i, n - 1 - i])?;
    }
    Ok(c)
}

/// A classically conditioned phase applied before a qubit's Hadamard.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionedRotation {
    pub qubit: usize,
    /// Earlier qubits that measured 1 and so contribute to the phase.
    pub conditioned_on: Vec<usize>,
    pub phase: f64,
}

/// One run of the measure-and-rotate Fourier transform.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiclassicalOutcome {
    /// Outcome in the Fourier basis, msb-first.
    pub outcome: String,
    /// Raw measurement of line `i`, in measurement order.
    pub measured: Vec<u8>,
    pub rotations: Vec<ConditionedRotation>,
}

/// Phase applied to line `i` given the earlier results `measured[..i]`.
pub fn semiclassical_phase(i: usize, measured: &[u8]) -> f64 {
    (0..i)
        .filter(|&k| measured[k] == 1)
        .map(|k| controlled_rotation_angle(k, i))
        .sum()
}

/// Qubit by qubit: conditioned phase, Hadamard, measurement with collapse.
pub fn semiclassical_qft(input: &str, seed: u64) -> Result<SemiclassicalOutcome> {
    let psi = QubitState::from_bitstring(input)?;
    let mut rng = sampling::rng(seed);
    Ok(semiclassical_run(&psi, &mut rng))
}

fn semiclassical_run<R: Rng>(psi: &QubitState, rng: &mut R) -> SemiclassicalOutcome {
    let n = psi.n();
    let mut amps = psi.amplitudes().to_vec();
    let mut measured = Vec::with_capacity(n);
    let mut rotations = Vec::new();
    for i in 0..n {
        let bit = 1usize << (n - 1 - i);
        let phase = semiclassical_phase(i, &measured);
        if phase != 0.0 {
            let p = cis(phase);
            for (k, a) in amps.iter_mut().enumerate() {
                if k & bit != 0 {
                    *a *= p;
                }
            }
            rotations.push(ConditionedRotation {
                qubit: i,
                conditioned_on: (0..i).filter(|&k| measured[k] == 1).collect(),
                phase,
            });
        }
        for k in 0..amps.len() {
            if k & bit == 0 {
                let (a, b) = (amps[k], amps[k | bit]);
                amps[k] = (a + b) * FRAC_1_SQRT_2;
                amps[k | bit] = (a - b) * FRAC_1_SQRT_2;
            }
        }
        let p1: f64 = amps
            .iter()
            .enumerate()
            .filter(|(k, _)| k & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        let m = u8::from(rng.random::<f64>() < p1);
        let keep = if m == 1 { p1 } else { 1.0 - p1 };
        let norm = keep.sqrt();
        for (k, a) in amps.iter_mut().enumerate() {
            if ((k & bit != 0) as u8) == m {
                *a /= norm;
            } else {
                *a = ZERO;
            }
        }
        measured.push(m);
    }
    // line i holds output bit n−1−i
    let outcome = measured
        .iter()
        .rev()
        .map(|&b| if b == 1 { '1' } else { '0' })
        .collect();
    SemiclassicalOutcome {
        outcome,
        measured,
        rotations,
    }
}

/// Outcome histogram over `shots` runs; shot `s` uses stream `s` of `seed`.
pub fn semiclassical_histogram(
    input: &str,
    shots: u64,
    seed: u64,
    policy: Parallelism,
) -> Result<BTreeMap<String, u64>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let psi = QubitState::from_bitstring(input)?;
    let outcomes = par::map_indexed(policy, shots as usize, |s| {
        semiclassical_run(&psi, &mut sampling::stream_rng(seed, s as u64)).outcome
    });
    let mut hist = BTreeMap::new();
    for o in outcomes {
        *hist.entry(o).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Total-variation distance between a histogram and a distribution over
/// msb-first bitstrings of length `n`.
pub fn total_variation(hist: &BTreeMap<String, u64>, probs: &[f64], n: usize) -> f64 {
    let shots: u64 = hist.values().sum();
    0.5 * probs
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let f = hist.get(&bitstring(k, n)).copied().unwrap_or(0) as f64 / shots as f64;
            (f - p).abs()
        })
        .sum::<f64>()
}

/// Far-field amplitudes of a coherent aperture: a unitary DFT with the
/// same sign and normalization as [`qft_matrix`].
pub fn farfield_dft(aperture: &[C64]) -> Vec<C64> {
    let n = aperture.len();
    if n == 0 {
        return Vec::new();
    }
    let mut buf = aperture.to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|a| *a *= scale);
    buf
}

/// Truth table of `f: {0,1}^m → {0,1}^{n_out}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSpec {
    m: usize,
    n_out: usize,
    table: Vec<usize>,
}

impl OracleSpec {
    pub fn new(m: usize, n_out: usize, table: Vec<usize>) -> Result<Self> {
        if m == 0 || n_out == 0 || m + n_out > MAX_QUBITS {
            return Err(Error::MalformedOracle(format!(
                "need m, n_out >= 1 and m + n_out <= {MAX_QUBITS}, got m={m} n_out={n_out}"
            )));
        }
        if table.len() != 1 << m {
            return Err(Error::MalformedOracle(format!(
                "table has {} rows, expected 2^{m} = {}",
                table.len(),
                1 << m
            )));
        }
        if let Some((x, &v)) = table.iter().enumerate().find(|(_, &v)| v >> n_out != 0) {
            return Err(Error::MalformedOracle(format!(
                "f({x}) = {v} does not fit in {n_out} bits"
            )));
        }
        Ok(OracleSpec { m, n_out, table })
    }

    /// One msb-first binary string per line; row `x` is `f(x)`. Blank lines
    /// and `#` comments are skipped.
    pub fn from_table_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if !line.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::MalformedOracle(format!(
                    "line {}: {line:?} is not a binary string",
                    lineno + 1
                )));
            }
            match width {
                None => width = Some(line.len()),
                Some(w) if w != line.len() => {
                    return Err(Error::MalformedOracle(format!(
                        "line {}: width {} differs from {w}",
                        lineno + 1,
                        line.len()
                    )))
                }
                _ => {}
            }
            rows.push(usize::from_str_radix(line, 2).expect("validated binary"));
        }
        let n_out = width.ok_or_else(|| Error::MalformedOracle("table is empty".into()))?;
        if !rows.len().is_power_of_two() || rows.len() < 2 {
            return Err(Error::MalformedOracle(format!(
                "{} rows is not a power of two >= 2",
                rows.len()
            )));
        }
        Self::new(rows.len().trailing_zeros() as usize, n_out, rows)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `x·2^{n_out} + ψ ↦ x·2^{n_out} + (f(x) ⊕ ψ)`.
    pub fn permutation(&self) -> Vec<usize> {
        let width = 1usize << self.n_out;
        (0..self.table.len() * width)
            .map(|k| {
                let (x, psi) = (k / width, k % width);
                x * width + (self.table[x] ^ psi)
            })
            .collect()
    }

    pub fn gate(&self) -> Gate {
        Gate::Permutation {
            label: "oracle".to_string(),
            table: self.permutation(),
        }
    }
}

/// Dense permutation matrix of the oracle.
pub fn build_oracle(spec: &OracleSpec) -> UnitaryMatrix {
    permutation_matrix(&spec.permutation())
}
