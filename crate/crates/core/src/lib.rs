//! Simulation and gate synthesis for quantum-like optical computation.
//!
//! Qubit registers are coded in fiber polarization ({H, V}) or in the two
//! orientations of the LP₁₁ mode ({b, a}) and evolve unitarily along the
//! fiber axis. The crate covers the whole stack, bottom-up:
//!
//! - [`state`]: state vectors, unitaries, Schmidt analysis and sampling.
//! - [`jones`]: one-qubit gates from birefringent fiber segments and their
//!   synthesis from arbitrary U(2) targets.
//! - [`twoqubit`]: the LP₁₁/polarization controlled-phase family (G-gates).
//! - [`algebra`]: u(4) generators, Lie closure and the entangling classifier.
//! - [`circuit`]: circuits, the quantum Fourier transform, oracles.
//! - [`bpm`]: beam propagation of the paraxial vector wave equation.
//! - [`devices`]: the optically controlled beam splitter and the nonlinear
//!   directional coupler.
//!
//! # Bit order
//!
//! Everything in this crate is most-significant-first: qubit 0 is the
//! leftmost symbol of a bitstring and carries weight 2ⁿ⁻¹ in the basis
//! index, so `|j₁ j₂ … jₙ⟩` has index `j₁·2ⁿ⁻¹ + … + jₙ·2⁰`. Tensor products
//! put the left operand's index in the high bits, and a gate applied to
//! targets `[t₀, t₁, …]` reads `t₀` as the most significant bit of its own
//! index.

// parameter checks are written `!(x > 0.0)` so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod bpm;
pub mod circuit;
pub mod devices;
mod error;
pub mod jones;
pub mod linalg;
pub mod par;
pub mod sampling;
pub mod state;
pub mod twoqubit;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
pub use par::Parallelism;
pub use state::{Coding, DensityMatrix2, QubitState, UnitaryMatrix};

/// Tolerance for exact algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for composed circuits.
pub const CIRCUIT_TOL: f64 = 1e-10;
/// Largest register handled by dense simulation.
pub const MAX_QUBITS: usize = 12;
