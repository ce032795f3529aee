//! Two-qubit controlled gates (G-gates).
//!
//! The control qubit is the first slot: LP₁₁ orientation for the fiber
//! phase gate, polarization for the beam-splitter gate. Both realize the
//! same map `β₁|0⟩(α₁|0⟩+α₂|1⟩) + β₂|1⟩(α₁|0⟩+α₂e^{iθ}|1⟩)` and implement
//! [`ControlledGate`].

use std::f64::consts::FRAC_PI_2;

use crate::linalg::{cis, CMatrix, C64, ONE, ZERO};
use crate::state::{Coding, QubitState, Tensor, UnitaryMatrix};
use crate::{Error, Result, ALGEBRAIC_TOL};

/// Controlled phase `θ` with an optional common propagation phase.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ControlledPhaseSpec {
    pub theta: f64,
    pub global_phase: f64,
}

impl ControlledPhaseSpec {
    pub fn new(theta: f64) -> Self {
        ControlledPhaseSpec {
            theta,
            global_phase: 0.0,
        }
    }
}

/// `e^{iγ} diag(1, 1, 1, e^{iθ})`.
pub fn cphase_matrix(spec: &ControlledPhaseSpec) -> UnitaryMatrix {
    let g = cis(spec.global_phase);
    UnitaryMatrix::from_matrix_unchecked(CMatrix::diagonal(&[g, g, g, g * cis(spec.theta)]))
}

/// Normalized control `(β₁, β₂)` and target `(α₁, α₂)` amplitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GGateIO {
    control: [C64; 2],
    target: [C64; 2],
}

impl GGateIO {
    pub fn new(control: [C64; 2], target: [C64; 2]) -> Result<Self> {
        for pair in [control, target] {
            let norm = pair[0].norm_sqr() + pair[1].norm_sqr();
            if !((norm - 1.0).abs() <= ALGEBRAIC_TOL) {
                return Err(Error::NotNormalized(norm));
            }
        }
        Ok(GGateIO { control, target })
    }

    pub fn control(&self) -> [C64; 2] {
        self.control
    }

    pub fn target(&self) -> [C64; 2] {
        self.target
    }

    /// `control ⊗ target` as a two-qubit state.
    pub fn product_state(&self, coding: [Coding; 2]) -> QubitState {
        let c = QubitState::from_parts_unchecked(self.control.to_vec(), vec![coding[0]]);
        let t = QubitState::from_parts_unchecked(self.target.to_vec(), vec![coding[1]]);
        c.tensor(&t)
    }
}

fn g_gate_amplitudes(io: &GGateIO, theta: f64, global_phase: f64) -> Vec<C64> {
    let [b1, b2] = io.control;
    let [a1, a2] = io.target;
    let g = cis(global_phase);
    vec![
        g * b1 * a1,
        g * b1 * a2,
        g * b2 * a1,
        g * b2 * a2 * cis(theta),
    ]
}

/// LP₁₁-position control, polarization target.
pub fn g_gate_apply(io: &GGateIO, spec: &ControlledPhaseSpec) -> QubitState {
    QubitState::from_parts_unchecked(
        g_gate_amplitudes(io, spec.theta, spec.global_phase),
        vec![Coding::Lp11, Coding::Polarization],
    )
}

/// Output of the controlled-beam-splitter realization.
#[derive(Clone, Debug, PartialEq)]
pub struct CbsOutput {
    pub state: QubitState,
    /// Phase the retarder on the diffracted target-V branch must imprint.
    pub retarder_setting: f64,
}

/// Retarder phase `θ′ = θ + π/2` cancelling the `−i` the diffracted
/// branch acquires in the grating, so that the net phase is `θ`.
pub fn retarder_setting(theta: f64) -> f64 {
    theta + FRAC_PI_2
}

/// Polarization-coded control and target (`H → |0⟩`, `V → |1⟩`).
pub fn cbs_gate_apply(io: &GGateIO, theta: f64) -> CbsOutput {
    CbsOutput {
        state: QubitState::from_parts_unchecked(
            g_gate_amplitudes(io, theta, 0.0),
            vec![Coding::Polarization, Coding::Polarization],
        ),
        retarder_setting: retarder_setting(theta),
    }
}

/// A two-qubit gate that applies a Jones matrix to the target conditioned
/// on the control basis state.
pub trait ControlledGate {
    /// The matrix applied to the target when the control is `|c⟩`.
    fn sector(&self, control: usize) -> CMatrix;

    /// Common phase applied to every sector.
    fn global_phase(&self) -> f64 {
        0.0
    }

    /// `e^{iγ} (|0⟩⟨0| ⊗ S₀ + |1⟩⟨1| ⊗ S₁)`.
    fn unitary(&self) -> UnitaryMatrix {
        let (s0, s1) = (self.sector(0), self.sector(1));
        let m = CMatrix::from_fn(4, |i, j| {
            if i / 2 != j / 2 {
                ZERO
            } else if i < 2 {
                s0[(i, j)]
            } else {
                s1[(i - 2, j - 2)]
            }
        });
        UnitaryMatrix::from_matrix_unchecked(m.scale(cis(self.global_phase())))
    }

    fn apply(&self, io: &GGateIO) -> Vec<C64> {
        let v = io.product_state([Coding::default(); 2]);
        self.unitary().matrix().mul_vec(v.amplitudes())
    }
}

/// Fiber phase gate: the birefringent region in sector `a` delays the
/// target's `|1⟩` component by `θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lp11PhaseGate(pub ControlledPhaseSpec);

impl ControlledGate for Lp11PhaseGate {
    fn sector(&self, control: usize) -> CMatrix {
        match control {
            0 => CMatrix::identity(2),
            _ => CMatrix::diagonal(&[ONE, cis(self.0.theta)]),
        }
    }

    fn global_phase(&self) -> f64 {
        self.0.global_phase
    }
}

/// Beam-splitter gate with controlled phase `θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CbsGate {
    pub theta: f64,
}

impl ControlledGate for CbsGate {
    fn sector(&self, control: usize) -> CMatrix {
        Lp11PhaseGate(ControlledPhaseSpec::new(self.theta)).sector(control)
    }
}

/// Arbitrary per-sector Jones matrices, one per control value.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorGate {
    sectors: [UnitaryMatrix; 2],
}

impl SectorGate {
    pub fn new(sector0: UnitaryMatrix, sector1: UnitaryMatrix) -> Result<Self> {
        for s in [&sector0, &sector1] {
            if s.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: s.dim(),
                });
            }
        }
        Ok(SectorGate {
            sectors: [sector0, sector1],
        })
    }
}

impl Default for SectorGate {
    /// The controlled-sign phase gate.
    fn default() -> Self {
        SectorGate {
            sectors: [
                UnitaryMatrix::identity(2),
                UnitaryMatrix::from_matrix_unchecked(CMatrix::diagonal(&[ONE, -ONE])),
            ],
        }
    }
}

impl ControlledGate for SectorGate {
    fn sector(&self, control: usize) -> CMatrix {
        self.sectors[control.min(1)].matrix().clone()
    }
}
