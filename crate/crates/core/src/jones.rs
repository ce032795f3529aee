//! One-qubit gates from birefringent fiber segments.
//!
//! Each constructor returns the Jones matrix of a segment of length `L`
//! acting on the polarization amplitudes `(H, V)`. Two printed forms are
//! not unitary as written and are implemented in their corrected form:
//!
//! - rotating fast axis: the off-diagonal coefficient is `2Lξ/δ` (the value
//!   the rotating-frame exponential produces with `δ² = (LΔβ)² + 4(Lξ)²`);
//! - circular birefringence: the off-diagonal block is antisymmetric,
//!   `[[c, s], [−s, c]]`, the `α → 1` limit of the combined matrix.
//!
//! [`synthesize_u2`] inverts the three-factor decomposition
//! `U = e^{iφ} D(α) X(θ) D(β)` into a plan of fiber segments.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use crate::linalg::{cis, CMatrix, C64, I, ONE, ZERO};
use crate::state::UnitaryMatrix;
use crate::{Error, Result};

/// Birefringence used by [`FiberSegment::uniform`] to turn phase products
/// into lengths, in rad/m.
pub const DEFAULT_DELTA_BETA: f64 = TAU;

/// `diag(e^{iLΔβ/2}, e^{−iLΔβ/2})`: fast axis along x.
pub fn jones_linear(length: f64, delta_beta: f64) -> UnitaryMatrix {
    let half = length * delta_beta / 2.0;
    UnitaryMatrix::from_matrix_unchecked(CMatrix::diagonal(&[cis(half), cis(-half)]))
}

/// Linear birefringence with the fast axis at angle `theta` from x.
pub fn jones_linear_rotated(length: f64, delta_beta: f64, theta: f64) -> UnitaryMatrix {
    let (s, c) = (length * delta_beta / 2.0).sin_cos();
    let (s2, c2) = (2.0 * theta).sin_cos();
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_rows([
        [C64::new(c, c2 * s), C64::new(0.0, s2 * s)],
        [C64::new(0.0, s2 * s), C64::new(c, -c2 * s)],
    ]))
}

/// Linear birefringence with the fast axis rotating at `xi` rad/m.
///
/// The matrix is expressed in the frame co-rotating with the fast axis.
pub fn jones_rotating_axis(length: f64, delta_beta: f64, xi: f64) -> UnitaryMatrix {
    let phase = length * delta_beta;
    let twist = 2.0 * length * xi;
    let delta = phase.hypot(twist);
    if delta == 0.0 {
        return UnitaryMatrix::identity(2);
    }
    let (s, c) = (delta / 2.0).sin_cos();
    let (a, b) = (phase / delta * s, twist / delta * s);
    // c·1 + i·a·σ₃ + i·b·σ₂
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_rows([
        [C64::new(c, a), C64::from(b)],
        [C64::from(-b), C64::new(c, -a)],
    ]))
}

/// Circular birefringence: rotation of the polarization plane by `LΔβ_C/2`.
pub fn jones_circular(length: f64, delta_beta_c: f64) -> UnitaryMatrix {
    let (s, c) = (length * delta_beta_c / 2.0).sin_cos();
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_rows([
        [C64::from(c), C64::from(s)],
        [C64::from(-s), C64::from(c)],
    ]))
}

/// Simultaneous linear and circular birefringence with ellipticity `alpha`.
pub fn jones_combined(length: f64, delta_beta_c: f64, alpha: f64) -> UnitaryMatrix {
    let (s, c) = (length * delta_beta_c / 2.0).sin_cos();
    let denom = 1.0 + alpha * alpha;
    let f = (1.0 - alpha * alpha) / denom;
    let g = 2.0 * alpha / denom;
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_rows([
        [C64::new(c, -f * s), C64::from(g * s)],
        [C64::from(-g * s), C64::new(c, f * s)],
    ]))
}

/// Relative dielectric tensor `[[nx², iγ, 0], [−iγ, ny², 0], [0, 0, nz²]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DielectricTensorParams {
    pub nx2: f64,
    pub ny2: f64,
    pub nz2: f64,
    pub gamma: f64,
}

/// Ellipticity `α = 2γ / (d + √(d² + 4γ²))` with `d = nx² − ny²`.
pub fn alpha_from_tensor(p: &DielectricTensorParams) -> Result<f64> {
    if !(p.nx2 > 0.0 && p.ny2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "squared indices must be positive, got nx2={} ny2={}",
            p.nx2, p.ny2
        )));
    }
    let d = p.nx2 - p.ny2;
    let denom = d + d.hypot(2.0 * p.gamma);
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::DegenerateDielectric(format!(
            "nx2 - ny2 = {d}, gamma = {}: ellipticity undefined",
            p.gamma
        )));
    }
    Ok(2.0 * p.gamma / denom)
}

/// Which birefringence a segment carries, with its kind-specific parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Birefringence {
    Linear,
    LinearRotated { axis: f64 },
    RotatingAxis { twist_rate: f64 },
    Circular,
    Combined { ellipticity: f64 },
}

impl Birefringence {
    pub fn keyword(&self) -> &'static str {
        match self {
            Birefringence::Linear => "linear",
            Birefringence::LinearRotated { .. } => "rotlinear",
            Birefringence::RotatingAxis { .. } => "rotaxis",
            Birefringence::Circular => "circular",
            Birefringence::Combined { .. } => "combined",
        }
    }
}

/// A uniform fiber segment acting as a one-qubit gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiberSegment {
    length: f64,
    delta_beta: f64,
    kind: Birefringence,
}

impl FiberSegment {
    /// Validates `L ≥ 0`, finite parameters, and folds the axis into `[0, 2π)`.
    pub fn new(length: f64, delta_beta: f64, kind: Birefringence) -> Result<Self> {
        if !(length >= 0.0) || !length.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "segment length must be finite and non-negative, got {length}"
            )));
        }
        if !delta_beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "birefringence must be finite, got {delta_beta}"
            )));
        }
        let kind = match kind {
            Birefringence::LinearRotated { axis } => {
                if !axis.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "axis must be finite, got {axis}"
                    )));
                }
                Birefringence::LinearRotated {
                    axis: axis.rem_euclid(TAU),
                }
            }
            Birefringence::RotatingAxis { twist_rate } if !twist_rate.is_finite() => {
                return Err(Error::InvalidParameter(format!(
                    "twist rate must be finite, got {twist_rate}"
                )))
            }
            Birefringence::Combined { ellipticity } if !ellipticity.is_finite() => {
                return Err(Error::InvalidParameter(format!(
                    "ellipticity must be finite, got {ellipticity}"
                )))
            }
            other => other,
        };
        Ok(FiberSegment {
            length,
            delta_beta,
            kind,
        })
    }

    /// Segment whose phase product `LΔβ` equals `phase`, using
    /// [`DEFAULT_DELTA_BETA`] and a non-negative length.
    pub fn uniform(phase: f64, kind: Birefringence) -> Result<Self> {
        let delta_beta = if phase < 0.0 {
            -DEFAULT_DELTA_BETA
        } else {
            DEFAULT_DELTA_BETA
        };
        Self::new(phase.abs() / DEFAULT_DELTA_BETA, delta_beta, kind)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn delta_beta(&self) -> f64 {
        self.delta_beta
    }

    pub fn kind(&self) -> Birefringence {
        self.kind
    }

    /// `LΔβ`.
    pub fn phase(&self) -> f64 {
        self.length * self.delta_beta
    }

    pub fn unitary(&self) -> UnitaryMatrix {
        let (l, db) = (self.length, self.delta_beta);
        match self.kind {
            Birefringence::Linear => jones_linear(l, db),
            Birefringence::LinearRotated { axis } => jones_linear_rotated(l, db, axis),
            Birefringence::RotatingAxis { twist_rate } => jones_rotating_axis(l, db, twist_rate),
            Birefringence::Circular => jones_circular(l, db),
            Birefringence::Combined { ellipticity } => jones_combined(l, db, ellipticity),
        }
    }
}

/// `D(α) · X(θ) · D(β)` with `D(a) = diag(e^{ia/2}, e^{−ia/2})` and
/// `X(t) = [[cos t/2, i sin t/2], [i sin t/2, cos t/2]]`. Determinant 1.
pub fn u2_from_angles(alpha: f64, theta: f64, beta: f64) -> UnitaryMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let sum = (alpha + beta) / 2.0;
    let diff = (alpha - beta) / 2.0;
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_rows([
        [c * cis(sum), I * s * cis(diff)],
        [I * s * cis(-diff), c * cis(-sum)],
    ]))
}

/// Inverse of [`u2_from_angles`] up to a global phase, plus a fiber plan.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisResult {
    pub global_phase: f64,
    pub alpha: f64,
    pub theta: f64,
    pub beta: f64,
    /// Segments in matrix-product order: `U = e^{iφ}·plan[0]·plan[1]·plan[2]`,
    /// so light traverses `plan[2]` first.
    pub plan: [FiberSegment; 3],
}

impl SynthesisResult {
    /// `e^{iφ} · Π plan`.
    pub fn reconstruct(&self) -> UnitaryMatrix {
        self.plan
            .iter()
            .map(FiberSegment::unitary)
            .reduce(|a, b| a.compose(&b))
            .expect("plan has three segments")
            .with_phase(self.global_phase)
    }

    /// Segments in the order light traverses them.
    pub fn propagation_order(&self) -> [FiberSegment; 3] {
        [self.plan[2], self.plan[1], self.plan[0]]
    }
}

const DEGENERATE: f64 = 1e-14;

/// Decompose a U(2) matrix into `φ, α, θ, β` and three linear segments.
pub fn synthesize_u2(u: &UnitaryMatrix) -> Result<SynthesisResult> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_deviation();
    if !(deviation <= crate::CIRCUIT_TOL) {
        return Err(Error::NotUnitary { deviation });
    }
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let phi = det.arg() / 2.0;
    let phase = cis(-phi);
    let v00 = u[(0, 0)] * phase;
    let v01 = u[(0, 1)] * phase;

    let theta = 2.0 * v01.norm().atan2(v00.norm());
    let (alpha, beta) = if v01.norm() <= DEGENERATE {
        (2.0 * v00.arg(), 0.0)
    } else if v00.norm() <= DEGENERATE {
        (2.0 * (v01.arg() - FRAC_PI_2), 0.0)
    } else {
        let sum = v00.arg();
        let diff = v01.arg() - FRAC_PI_2;
        (sum + diff, sum - diff)
    };

    let plan = [
        FiberSegment::uniform(alpha.rem_euclid(2.0 * TAU), Birefringence::Linear)?,
        FiberSegment::uniform(theta, Birefringence::LinearRotated { axis: FRAC_PI_4 })?,
        FiberSegment::uniform(beta.rem_euclid(2.0 * TAU), Birefringence::Linear)?,
    ];
    Ok(SynthesisResult {
        global_phase: phi,
        alpha,
        theta,
        beta,
        plan,
    })
}

/// `(1/√2)[[1, 1], [1, −1]]`.
pub fn hadamard() -> UnitaryMatrix {
    let h = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_rows([[h, h], [h, -h]]))
}

/// `diag(1, e^{iφ})`.
pub fn phase_shift(phi: f64) -> UnitaryMatrix {
    UnitaryMatrix::from_matrix_unchecked(CMatrix::diagonal(&[ONE, cis(phi)]))
}

/// Pauli X as a unitary.
pub fn pauli_x() -> UnitaryMatrix {
    UnitaryMatrix::from_matrix_unchecked(CMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]]))
}
