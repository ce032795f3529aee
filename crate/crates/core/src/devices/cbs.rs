//! Physical-layer controlled beam splitter acting on polarization qubits.
//!
//! The target is split by a PBS. Its V output meets a grating written by
//! the control's V component and a reference beam, so a fraction
//! `|β₂|²` of it is diffracted. The diffracted branch then passes a phase
//! retarder. Predistortion ([`linearize_control`]) makes the diffracted
//! fraction exactly `|β₂|²`, hence the transmitted amplitude is `|β₁|α₂`.
//!
//! The grating model uses `e^{+iωt}` phasors, in which diffraction
//! multiplies by `+i` and a retarder of phase `θ′` by `e^{−iθ′}`. Qubit
//! amplitudes use the conjugate convention, so fields are conjugated on the
//! way in and out.

use super::grating::{grating_transfer, linearize_control, ControlCalibration, GratingParams};
use crate::linalg::{cis, C64, ZERO};
use crate::twoqubit::{retarder_setting, GGateIO};
use crate::Result;

/// Amplitudes at the three output ports of the chain, in the qubit
/// convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CbsPorts {
    /// Target H branch, which bypasses the grating.
    pub h_target: C64,
    /// Target V branch transmitted through the grating.
    pub v_transmitted: C64,
    /// Target V branch diffracted by the grating, after the retarder.
    pub v_diffracted: C64,
    /// Diffracted branch before the retarder, in the grating convention.
    pub v_diffracted_raw: C64,
    pub grating: GratingParams,
    pub control_amplitude: f64,
    pub retarder: f64,
}

impl CbsPorts {
    pub fn power(&self) -> f64 {
        self.h_target.norm_sqr() + self.v_transmitted.norm_sqr() + self.v_diffracted.norm_sqr()
    }
}

/// Runs the PBS, grating and retarder for a controlled phase `θ`.
pub fn cbs_physical_chain(io: &GGateIO, theta: f64, cal: &ControlCalibration) -> Result<CbsPorts> {
    let [_, b2] = io.control();
    let [a1, a2] = io.target();
    let split = b2.norm_sqr().min(1.0);
    let e_c = linearize_control(split, cal)?;
    let control_phase = if b2 == ZERO { 0.0 } else { b2.conj().arg() };
    let grating = cal.grating(e_c, control_phase + cal.reference_phase)?;
    let (t, d) = grating_transfer(&grating, a2.conj(), ZERO);
    let retarder = retarder_setting(theta);
    let delayed = d * cis(-retarder);
    Ok(CbsPorts {
        h_target: a1,
        v_transmitted: t.conj(),
        v_diffracted: delayed.conj(),
        v_diffracted_raw: d,
        grating,
        control_amplitude: e_c,
        retarder,
    })
}
