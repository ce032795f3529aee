//! Kerr nonlinear directional coupler.
//!
//! Each eigenmode `(i) ∈ {+, −}` of the coupling region carries a
//! polarization 2-vector whose slowly varying envelope obeys
//!
//! ```text
//! ∂_z Ψ₁ = iν {(|Ψ₁|² + ⅔|Ψ₂|²) Ψ₁ + ⅓ Ψ₂² Ψ₁*},   ν = (3ω₀²/8c²) χ³/β
//! ```
//!
//! and symmetrically for `Ψ₂`. Power `α = |Ψ₁|²+|Ψ₂|²` and
//! `iγ = Ψ₁*Ψ₂ − Ψ₁Ψ₂*` are conserved, which reduces the full field to a
//! phase `e^{iβ̄z}` times a rotation by `k̄z`. Fibers and eigenmodes are
//! related by `E^{(±)} = E^{(1)} ± E^{(2)}`, `E^{(1,2)} = ½(E^{(+)} ± E^{(−)})`.

use crate::linalg::{cis, C64, I};
use crate::{Error, Result};

/// Vacuum speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// [`integrate_coupler_ode`] aborts if either constant of motion drifts by
/// more than this, relative to the mode power.
pub const MAX_ODE_DRIFT: f64 = 1e-6;
pub const MIN_ODE_STEPS: usize = 100;

pub type Polarization = [C64; 2];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplerConstants {
    pub alpha: f64,
    pub gamma: f64,
}

/// `α = |ψ₁|²+|ψ₂|²`, `γ = 2 Im(ψ₁*ψ₂)`.
pub fn coupler_constants(psi1: C64, psi2: C64) -> CouplerConstants {
    CouplerConstants {
        alpha: psi1.norm_sqr() + psi2.norm_sqr(),
        gamma: 2.0 * (psi1.conj() * psi2).im,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eigenmode {
    Symmetric,
    Antisymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplerScenario {
    /// Linear propagation constant of the symmetric mode.
    pub beta_plus: f64,
    /// Linear propagation constant of the antisymmetric mode.
    pub beta_minus: f64,
    pub chi3: f64,
    pub omega0: f64,
    /// Speed of light in the units of `omega0` and `beta`; `1` for
    /// nondimensional scenarios.
    pub c: f64,
    pub length: f64,
    /// Input polarization vector in fiber 1.
    pub e1: Polarization,
    /// Input polarization vector in fiber 2.
    pub e2: Polarization,
}

impl CouplerScenario {
    pub fn validate(&self) -> Result<()> {
        for (name, b) in [
            ("beta_plus", self.beta_plus),
            ("beta_minus", self.beta_minus),
        ] {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {b}"
                )));
            }
        }
        if !(self.c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "speed of light must be positive, got {}",
                self.c
            )));
        }
        let finite = [self.chi3, self.omega0, self.length]
            .iter()
            .all(|v| v.is_finite())
            && self
                .e1
                .iter()
                .chain(&self.e2)
                .all(|a| a.re.is_finite() && a.im.is_finite());
        if !finite {
            return Err(Error::InvalidParameter(
                "coupler scenario has non-finite values".into(),
            ));
        }
        Ok(())
    }

    pub fn beta(&self, mode: Eigenmode) -> f64 {
        match mode {
            Eigenmode::Symmetric => self.beta_plus,
            Eigenmode::Antisymmetric => self.beta_minus,
        }
    }

    /// `E^{(±)}(0) = E^{(1)}(0) ± E^{(2)}(0)`.
    pub fn eigenmode_input(&self, mode: Eigenmode) -> Polarization {
        let s = match mode {
            Eigenmode::Symmetric => 1.0,
            Eigenmode::Antisymmetric => -1.0,
        };
        [self.e1[0] + self.e2[0] * s, self.e1[1] + self.e2[1] * s]
    }

    /// `(ω₀²/c²) χ³ / β`, the common factor of the nonlinear shifts.
    fn strength(&self, mode: Eigenmode) -> f64 {
        (self.omega0 / self.c).powi(2) * self.chi3 / self.beta(mode)
    }

    /// Total input power in both fibers.
    pub fn input_power(&self) -> f64 {
        self.e1.iter().chain(&self.e2).map(|a| a.norm_sqr()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveParams {
    pub beta_bar: f64,
    pub k_bar: f64,
}

/// `β̄ = β + (3ω₀²/8c²)(χ³/β) α`, `k̄ = (ω₀²/4c²)(χ³/β) Im(E₁*E₂)`.
pub fn coupler_effective_params(s: &CouplerScenario, mode: Eigenmode) -> Result<EffectiveParams> {
    s.validate()?;
    let e = s.eigenmode_input(mode);
    let g = s.strength(mode);
    let alpha = e[0].norm_sqr() + e[1].norm_sqr();
    Ok(EffectiveParams {
        beta_bar: s.beta(mode) + 3.0 / 8.0 * g * alpha,
        k_bar: 0.25 * g * (e[0].conj() * e[1]).im,
    })
}

/// `E(z) = e^{iβ̄z} M(k̄z) E(0)` with `M(φ) = [[cos φ, −sin φ], [sin φ, cos φ]]`.
pub fn eigenmode_transfer(e0: Polarization, beta_bar: f64, k_bar: f64, z: f64) -> Polarization {
    let (s, c) = (k_bar * z).sin_cos();
    let ph = cis(beta_bar * z);
    [ph * (e0[0] * c - e0[1] * s), ph * (e0[0] * s + e0[1] * c)]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplerOutput {
    pub e1: Polarization,
    pub e2: Polarization,
    pub symmetric: EffectiveParams,
    pub antisymmetric: EffectiveParams,
}

impl CouplerOutput {
    pub fn power(&self) -> f64 {
        self.e1.iter().chain(&self.e2).map(|a| a.norm_sqr()).sum()
    }
}

fn recombine(plus: Polarization, minus: Polarization) -> (Polarization, Polarization) {
    (
        [(plus[0] + minus[0]) * 0.5, (plus[1] + minus[1]) * 0.5],
        [(plus[0] - minus[0]) * 0.5, (plus[1] - minus[1]) * 0.5],
    )
}

/// Closed-form fiber outputs at `z = L`.
pub fn coupler_transfer(s: &CouplerScenario) -> Result<CouplerOutput> {
    let sym = coupler_effective_params(s, Eigenmode::Symmetric)?;
    let anti = coupler_effective_params(s, Eigenmode::Antisymmetric)?;
    let plus = eigenmode_transfer(
        s.eigenmode_input(Eigenmode::Symmetric),
        sym.beta_bar,
        sym.k_bar,
        s.length,
    );
    let minus = eigenmode_transfer(
        s.eigenmode_input(Eigenmode::Antisymmetric),
        anti.beta_bar,
        anti.k_bar,
        s.length,
    );
    let (e1, e2) = recombine(plus, minus);
    Ok(CouplerOutput {
        e1,
        e2,
        symmetric: sym,
        antisymmetric: anti,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeOutput {
    pub e1: Polarization,
    pub e2: Polarization,
    /// Largest relative change of `α` or `γ` seen in either eigenmode.
    pub max_constant_drift: f64,
}

fn envelope_rhs(nu: f64, p: Polarization) -> Polarization {
    let (a, b) = (p[0], p[1]);
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    let third = 1.0 / 3.0;
    [
        I * nu * ((na + 2.0 * third * nb) * a + third * b * b * a.conj()),
        I * nu * ((nb + 2.0 * third * na) * b + third * a * a * b.conj()),
    ]
}

fn rk4(nu: f64, p: Polarization, h: f64) -> Polarization {
    let add = |x: Polarization, k: Polarization, s: f64| [x[0] + k[0] * s, x[1] + k[1] * s];
    let k1 = envelope_rhs(nu, p);
    let k2 = envelope_rhs(nu, add(p, k1, h / 2.0));
    let k3 = envelope_rhs(nu, add(p, k2, h / 2.0));
    let k4 = envelope_rhs(nu, add(p, k3, h));
    [0, 1].map(|j| p[j] + (k1[j] + (k2[j] + k3[j]) * 2.0 + k4[j]) * (h / 6.0))
}

/// Direct RK4 integration of the envelope equation per eigenmode, used as
/// an independent check of [`coupler_transfer`].
pub fn integrate_coupler_ode(s: &CouplerScenario, steps: usize) -> Result<OdeOutput> {
    s.validate()?;
    if steps < MIN_ODE_STEPS {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_ODE_STEPS} steps, got {steps}"
        )));
    }
    let h = s.length / steps as f64;
    let mut drift: f64 = 0.0;
    let mut out = Vec::with_capacity(2);
    for mode in [Eigenmode::Symmetric, Eigenmode::Antisymmetric] {
        let nu = 3.0 / 8.0 * s.strength(mode);
        let mut p = s.eigenmode_input(mode);
        let c0 = coupler_constants(p[0], p[1]);
        let scale = c0.alpha.max(f64::MIN_POSITIVE);
        for step in 0..steps {
            p = rk4(nu, p, h);
            let c = coupler_constants(p[0], p[1]);
            let d = ((c.alpha - c0.alpha).abs()).max((c.gamma - c0.gamma).abs()) / scale;
            if !d.is_finite() || d > MAX_ODE_DRIFT {
                return Err(Error::Instability(format!(
                    "coupler ODE constants drifted by {d:.3e} at step {}; reduce the step size",
                    step + 1
                )));
            }
            drift = drift.max(d);
        }
        let carrier = cis(s.beta(mode) * s.length);
        out.push([p[0] * carrier, p[1] * carrier]);
    }
    let (e1, e2) = recombine(out[0], out[1]);
    Ok(OdeOutput {
        e1,
        e2,
        max_constant_drift: drift,
    })
}

/// `max_j |a_j − b_j| / max(‖b‖, tiny)` over both fibers.
pub fn relative_field_error(
    a: (&Polarization, &Polarization),
    b: (&Polarization, &Polarization),
) -> f64 {
    let diff =
        a.0.iter()
            .chain(a.1)
            .zip(b.0.iter().chain(b.1))
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
    let norm =
        b.0.iter()
            .chain(b.1)
            .map(|y| y.norm_sqr())
            .sum::<f64>()
            .sqrt();
    diff / norm.max(f64::MIN_POSITIVE)
}
