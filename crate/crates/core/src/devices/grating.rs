//! Optically written thick grating used as a controlled beam splitter.
//!
//! A sinusoidal index grating of wavenumber `Q = 2q` couples the
//! transmitted order `ψ_q` and the first diffracted order `ψ_{Q−q}`:
//!
//! ```text
//! 2ik ∂_z ψ_q     = −(β/2) ψ_{Q−q}
//! 2ik ∂_z ψ_{Q−q} = −(β/2) ψ_q
//! ```
//!
//! For complex `β = |β| e^{iϑ}` the modulus sets the mixing angle
//! `φ = |β| z / 4k` and `ϑ` is imprinted on the diffracted order.

use crate::linalg::{cis, C64, I};
use crate::{Error, Result};

/// Relative tolerance on the Bragg condition `Q = 2q`.
pub const BRAGG_TOL: f64 = 1e-9;
/// Orthogonality tolerance for the target polarization.
pub const POLARIZATION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GratingParams {
    /// Longitudinal wavenumber `k`, rad/m.
    pub k: f64,
    /// Transverse wavenumber of the incident order, rad/m.
    pub q: f64,
    /// Grating wavenumber `Q`, rad/m.
    pub grating_q: f64,
    /// Nonlinear coupling `β`, rad/m². Complex when written by a phased
    /// control beam.
    pub beta_nl: C64,
    /// Linear coefficient `α = μ₀ε₀χ⁽¹⁾ω²`.
    pub alpha_lin: f64,
    /// Interaction length, m.
    pub z: f64,
}

impl GratingParams {
    /// Symmetric Bragg geometry `Q = 2q` with `k² + q² = α`.
    pub fn bragg(k: f64, q: f64, beta_nl: C64, z: f64) -> Result<Self> {
        let p = GratingParams {
            k,
            q,
            grating_q: 2.0 * q,
            beta_nl,
            alpha_lin: k * k + q * q,
            z,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0) || !self.k.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grating k must be positive, got {}",
                self.k
            )));
        }
        let off = (self.grating_q - 2.0 * self.q).abs();
        if off > BRAGG_TOL * self.grating_q.abs().max(self.q.abs()).max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "Bragg condition Q = 2q violated: Q = {}, q = {}",
                self.grating_q, self.q
            )));
        }
        if !self.z.is_finite() || self.z < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "interaction length must be non-negative, got {}",
                self.z
            )));
        }
        Ok(())
    }

    /// `φ = |β| z / 4k`.
    pub fn mixing_angle(&self) -> f64 {
        self.beta_nl.norm() * self.z / (4.0 * self.k)
    }

    /// Phase written onto the diffracted order.
    pub fn imprint(&self) -> f64 {
        if self.beta_nl == C64::from(0.0) {
            0.0
        } else {
            self.beta_nl.arg()
        }
    }

    /// `k² + q² − α`; zero when the transmitted order is phase matched.
    pub fn phase_matching_residual(&self) -> f64 {
        self.k * self.k + self.q * self.q - self.alpha_lin
    }

    /// Fraction of the incident power moved into the diffracted order.
    pub fn diffracted_fraction(&self) -> f64 {
        self.mixing_angle().sin().powi(2)
    }
}

/// `(ψ_q(z), ψ_{Q−q}(z))` from the two input orders.
pub fn grating_transfer(p: &GratingParams, psi_q0: C64, psi_qq0: C64) -> (C64, C64) {
    let (s, c) = p.mixing_angle().sin_cos();
    let e = cis(p.imprint());
    (
        psi_q0 * c + I * e.conj() * psi_qq0 * s,
        I * e * psi_q0 * s + psi_qq0 * c,
    )
}

/// Which of the three writing beams a [`BeamSpec`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeamRole {
    Target,
    Control,
    Reference,
}

/// A linearly polarized plane wave `|E| ε̂ e^{i(ωt − k·x + θ)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSpec {
    pub role: BeamRole,
    pub amplitude: f64,
    pub phase: f64,
    pub polarization: [f64; 3],
    pub wavevector: [f64; 3],
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl BeamSpec {
    pub fn new(
        role: BeamRole,
        amplitude: f64,
        phase: f64,
        polarization: [f64; 3],
        wavevector: [f64; 3],
    ) -> Result<Self> {
        if !(amplitude >= 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beam amplitude must be non-negative, got {amplitude}"
            )));
        }
        let n = dot(&polarization, &polarization).sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "polarization vector must be unit length, got |e| = {n}"
            )));
        }
        Ok(BeamSpec {
            role,
            amplitude,
            phase,
            polarization,
            wavevector,
        })
    }

    /// Complex amplitude `|E| e^{iθ}`.
    pub fn phasor(&self) -> C64 {
        cis(self.phase) * self.amplitude
    }
}

/// Time-averaged intensity pattern written by the three beams.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterferencePattern {
    pub dc: f64,
    /// Complex coefficient of `e^{i(k_R − k_c)·x}`.
    pub fringe: C64,
    pub fringe_wavevector: [f64; 3],
    /// Coefficients of the target-control and target-reference fringes.
    /// Both vanish when the target is orthogonal to the writing beams.
    pub target_coupling: [C64; 2],
}

pub fn interference_pattern(
    t: &BeamSpec,
    c: &BeamSpec,
    r: &BeamSpec,
) -> Result<InterferencePattern> {
    let tc = dot(&t.polarization, &c.polarization);
    let tr = dot(&t.polarization, &r.polarization);
    for (name, v) in [("eps_t . eps_c", tc), ("eps_t . eps_R", tr)] {
        if v.abs() > POLARIZATION_TOL {
            return Err(Error::PolarizationConstraint(format!(
                "{name} = {v:.3e}, must vanish so the target does not write a grating"
            )));
        }
    }
    let cr = dot(&c.polarization, &r.polarization);
    Ok(InterferencePattern {
        dc: t.amplitude.powi(2) + c.amplitude.powi(2) + r.amplitude.powi(2),
        fringe: cis(c.phase - r.phase) * (cr * r.amplitude * c.amplitude),
        fringe_wavevector: [
            r.wavevector[0] - c.wavevector[0],
            r.wavevector[1] - c.wavevector[1],
            r.wavevector[2] - c.wavevector[2],
        ],
        target_coupling: [
            cis(c.phase - t.phase) * (tc * t.amplitude * c.amplitude),
            cis(t.phase - r.phase) * (tr * t.amplitude * r.amplitude),
        ],
    })
}

/// Kerr-written coupling `β = gain · χ³ (ε̂_c·ε̂_R) |E_R||E_c| e^{i(θ_c − θ_R)}`.
pub fn kerr_control_beta(c: &BeamSpec, r: &BeamSpec, chi3: f64, gain: f64) -> C64 {
    let cr = dot(&c.polarization, &r.polarization);
    cis(c.phase - r.phase) * (gain * chi3 * cr * r.amplitude * c.amplitude)
}

/// Fixed writing geometry that maps a control amplitude to a grating.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlCalibration {
    /// Proportionality constant between the Kerr fringe and `β`.
    pub gain: f64,
    pub chi3: f64,
    pub reference_amplitude: f64,
    pub reference_phase: f64,
    /// `ε̂_c·ε̂_R`.
    pub overlap: f64,
    pub k: f64,
    pub q: f64,
    pub z: f64,
    /// Largest control amplitude the source can deliver.
    pub max_control: f64,
}

impl ControlCalibration {
    /// Calibration in which `|E_c| = 1` gives `φ = π/2` and the source can
    /// reach exactly that.
    pub fn unit(k: f64, z: f64) -> Self {
        ControlCalibration {
            gain: 2.0 * std::f64::consts::PI * k / z,
            chi3: 1.0,
            reference_amplitude: 1.0,
            reference_phase: 0.0,
            overlap: 1.0,
            k,
            q: 0.0,
            z,
            max_control: 1.0,
        }
    }

    /// `dφ/d|E_c|`.
    pub fn angle_per_amplitude(&self) -> f64 {
        (self.gain * self.chi3 * self.overlap * self.reference_amplitude).abs() * self.z
            / (4.0 * self.k)
    }

    pub fn max_angle(&self) -> f64 {
        self.angle_per_amplitude() * self.max_control
    }

    /// Grating written by a control beam of amplitude `e_c` and phase
    /// `theta_c`.
    pub fn grating(&self, e_c: f64, theta_c: f64) -> Result<GratingParams> {
        let beta = cis(theta_c - self.reference_phase)
            * (self.gain * self.chi3 * self.overlap * self.reference_amplitude * e_c);
        GratingParams::bragg(self.k, self.q, beta, self.z)
    }
}

/// Control amplitude whose grating diffracts exactly `target_split` of the
/// target power: inverts `sin²(φ(|E_c|))` on `φ ∈ [0, π/2]`.
pub fn linearize_control(target_split: f64, cal: &ControlCalibration) -> Result<f64> {
    if !(0.0..=1.0).contains(&target_split) {
        return Err(Error::InvalidParameter(format!(
            "target split must lie in [0, 1], got {target_split}"
        )));
    }
    let phi = target_split.sqrt().asin();
    if phi == 0.0 {
        return Ok(0.0);
    }
    let slope = cal.angle_per_amplitude();
    let available = cal.max_angle();
    if !(slope > 0.0) || phi > available * (1.0 + 1e-15) {
        return Err(Error::Unreachable {
            target: target_split,
            required: phi,
            available,
        });
    }
    Ok(phi / slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn at_angle(phi: f64) -> GratingParams {
        GratingParams::bragg(1.0e7, 2.0e5, C64::from(4.0e7 * phi), 1.0).unwrap()
    }

    fn beam(role: BeamRole, a: f64, th: f64, e: [f64; 3]) -> BeamSpec {
        BeamSpec::new(role, a, th, e, [0.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn grating_limits() {
        let a = C64::new(0.6, -0.3);
        assert_eq!(
            grating_transfer(&at_angle(0.0), a, C64::from(0.0)),
            (a, C64::from(0.0))
        );
        let (t, d) = grating_transfer(&at_angle(FRAC_PI_2), a, C64::from(0.0));
        assert!(t.norm() < 1e-15 && (d - I * a).norm() < 1e-15);
        let (t, d) = grating_transfer(&at_angle(FRAC_PI_4), a, C64::from(0.0));
        assert!((t.norm_sqr() - 0.5 * a.norm_sqr()).abs() < 1e-15);
        assert!((d.norm_sqr() - 0.5 * a.norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn grating_is_unitary() {
        let mut p = at_angle(0.7);
        p.beta_nl *= cis(1.1);
        let (a, b) = (C64::new(0.3, 0.4), C64::new(-0.5, 0.2));
        let (x, y) = grating_transfer(&p, a, b);
        assert!((x.norm_sqr() + y.norm_sqr() - a.norm_sqr() - b.norm_sqr()).abs() < 1e-15);
        let (x1, y1) = grating_transfer(&p, C64::from(1.0), C64::from(0.0));
        let (x2, y2) = grating_transfer(&p, C64::from(0.0), C64::from(1.0));
        assert!((x1.conj() * x2 + y1.conj() * y2).norm() < 1e-15);
        assert!((y1.arg() - (FRAC_PI_2 + 1.1)).abs() < 1e-12);
    }

    #[test]
    fn bragg_condition_checked() {
        let mut p = at_angle(0.1);
        p.grating_q *= 1.01;
        assert!(p.validate().is_err());
        assert!(GratingParams::bragg(0.0, 1.0, C64::from(1.0), 1.0).is_err());
        assert_eq!(at_angle(0.2).phase_matching_residual(), 0.0);
    }

    #[test]
    fn pattern_terms() {
        let (x, y, z) = ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
        let t = beam(BeamRole::Target, 0.7, 0.3, x);
        let r = beam(BeamRole::Reference, 1.0, 0.0, y);
        let off = beam(BeamRole::Control, 0.0, 0.0, y);
        assert_eq!(
            interference_pattern(&t, &off, &r).unwrap().fringe,
            C64::from(0.0)
        );
        let on = beam(BeamRole::Control, 1.0, 0.0, y);
        let p = interference_pattern(&t, &on, &r).unwrap();
        assert_eq!(p.fringe, C64::from(1.0));
        assert_eq!(p.target_coupling, [C64::from(0.0); 2]);
        assert!((p.dc - 2.49).abs() < 1e-15);
        let quad = beam(BeamRole::Control, 2.0, FRAC_PI_2, y);
        let p = interference_pattern(&t, &quad, &r).unwrap();
        assert!((p.fringe - C64::new(0.0, 2.0)).norm() < 1e-15);

        let bad = beam(BeamRole::Target, 1.0, 0.0, [0.0, 0.6, 0.8]);
        let err = interference_pattern(&bad, &on, &r).unwrap_err();
        assert!(err.to_string().contains("eps_t . eps_c"));
        let t_on_r = beam(BeamRole::Target, 1.0, 0.0, z);
        let r_z = beam(BeamRole::Reference, 1.0, 0.0, z);
        let err = interference_pattern(&t_on_r, &on, &r_z).unwrap_err();
        assert!(err.to_string().contains("eps_t . eps_R"));
    }

    #[test]
    fn kerr_strength() {
        let y = [0.0, 1.0, 0.0];
        let r = beam(BeamRole::Reference, 3.0, 0.2, y);
        let c1 = beam(BeamRole::Control, 0.5, 0.9, y);
        let c2 = beam(BeamRole::Control, 1.0, 0.9, y);
        assert_eq!(
            kerr_control_beta(&beam(BeamRole::Control, 0.0, 0.9, y), &r, 1.0, 1.0).norm(),
            0.0
        );
        let (b1, b2) = (
            kerr_control_beta(&c1, &r, 2.0, 1.5),
            kerr_control_beta(&c2, &r, 2.0, 1.5),
        );
        assert!((b2.norm() - 2.0 * b1.norm()).abs() < 1e-15);
        assert!((b1.arg() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn small_angle_linearity() {
        // sin φ stays within 1% of φ up to φ = 0.245
        let phi: f64 = 0.245;
        assert!((phi - phi.sin()) / phi <= 0.01);
        assert!((0.25 - 0.25f64.sin()) / 0.25 > 0.01);
    }

    #[test]
    fn predistortion_round_trip() {
        let cal = ControlCalibration::unit(1.0e7, 2.0e-3);
        assert_eq!(linearize_control(0.0, &cal).unwrap(), 0.0);
        let full = linearize_control(1.0, &cal).unwrap();
        assert!((cal.grating(full, 0.0).unwrap().mixing_angle() - FRAC_PI_2).abs() < 1e-15);
        for s in [0.5, 0.1, 0.37, 0.9, 0.999] {
            let e = linearize_control(s, &cal).unwrap();
            let g = cal.grating(e, 0.4).unwrap();
            let (_, d) = grating_transfer(&g, C64::from(1.0), C64::from(0.0));
            assert!((d.norm_sqr() - s).abs() <= 1e-12, "{s}");
        }
        let weak = ControlCalibration {
            max_control: 0.5,
            ..cal
        };
        assert!(matches!(
            linearize_control(0.9, &weak),
            Err(Error::Unreachable { .. })
        ));
        assert!(linearize_control(1.5, &cal).is_err());
    }
}
