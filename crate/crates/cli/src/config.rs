//! TOML inputs of the `coupler` and `bpm` subcommands.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use qlight::bpm::{Grid, Mode, N0Profile, ScalarField2D, WaveguideProfile, DEFAULT_LAMBDA0};
use qlight::devices::CouplerScenario;
use qlight::C64;

use crate::error::{CliError, CliResult};

/// `[re, im]`.
pub type Complex = [f64; 2];

fn c64(c: Complex) -> C64 {
    C64::new(c[0], c[1])
}

pub fn read_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplerConfig {
    pub beta_plus: f64,
    pub beta_minus: f64,
    pub chi3: f64,
    pub omega0: f64,
    #[serde(default = "unit")]
    pub c: f64,
    pub length: f64,
    pub e1: [Complex; 2],
    pub e2: [Complex; 2],
    /// RK4 steps of the cross-check integration; 0 skips it.
    #[serde(default = "default_ode_steps")]
    pub ode_steps: usize,
}

fn unit() -> f64 {
    1.0
}

fn default_ode_steps() -> usize {
    4000
}

impl CouplerConfig {
    pub fn scenario(&self) -> CouplerScenario {
        CouplerScenario {
            beta_plus: self.beta_plus,
            beta_minus: self.beta_minus,
            chi3: self.chi3,
            omega0: self.omega0,
            c: self.c,
            length: self.length,
            e1: self.e1.map(c64),
            e2: self.e2.map(c64),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    /// Defaults to `dx`.
    pub dy: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileConfig {
    Uniform,
    /// `V = κ(x² + y²)`; give `kappa` or the LP₀₁ `mode_width`.
    Parabolic {
        kappa: Option<f64>,
        mode_width: Option<f64>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InputConfig {
    /// `exp(−r²/w²)` at the grid center.
    Gaussian { width: f64 },
    /// Superposition of the parabolic LP modes.
    Modes {
        #[serde(default)]
        lp01: Complex,
        #[serde(default)]
        lp11a: Complex,
        #[serde(default)]
        lp11b: Complex,
    },
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeConfig {
    #[default]
    Scalar,
    Vector,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Binary field snapshot, relative to the config file.
    pub snapshot: Option<PathBuf>,
    /// Plain-text field table, relative to the config file.
    pub table: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BpmConfig {
    #[serde(default = "default_lambda0")]
    pub lambda0: f64,
    pub n0: f64,
    /// `dn₀/dz` in 1/m.
    #[serde(default)]
    pub n0_slope: f64,
    pub dz: f64,
    pub steps: usize,
    #[serde(default)]
    pub mode: ModeConfig,
    pub grid: GridConfig,
    pub profile: ProfileConfig,
    pub input: InputConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_lambda0() -> f64 {
    DEFAULT_LAMBDA0
}

impl BpmConfig {
    pub fn mode(&self) -> Mode {
        match self.mode {
            ModeConfig::Scalar => Mode::Scalar,
            ModeConfig::Vector => Mode::Vector,
        }
    }

    pub fn waveguide(&self) -> CliResult<WaveguideProfile> {
        let g = &self.grid;
        let grid = Grid::new(g.nx, g.ny, g.dx, g.dy.unwrap_or(g.dx))?;
        let mut profile = match self.profile {
            ProfileConfig::Uniform => WaveguideProfile::uniform(grid, self.n0, self.lambda0)?,
            ProfileConfig::Parabolic {
                kappa: Some(k),
                mode_width: None,
            } => WaveguideProfile::parabolic(grid, self.n0, self.lambda0, k)?,
            ProfileConfig::Parabolic {
                kappa: None,
                mode_width: Some(w),
            } => WaveguideProfile::parabolic_with_mode_width(grid, self.n0, self.lambda0, w)?,
            ProfileConfig::Parabolic { .. } => {
                return Err(CliError::Validation(
                    "parabolic profile needs exactly one of `kappa`, `mode_width`".into(),
                ))
            }
        };
        if self.n0_slope != 0.0 {
            profile.n0 = N0Profile::Linear {
                n0: self.n0,
                slope: self.n0_slope,
            };
        }
        Ok(profile)
    }

    pub fn input_field(&self, profile: &WaveguideProfile) -> CliResult<ScalarField2D> {
        match self.input {
            InputConfig::Gaussian { width } => {
                if width.is_nan() || width <= 0.0 {
                    return Err(CliError::Validation(
                        "gaussian width must be positive".into(),
                    ));
                }
                let psi = ScalarField2D::from_fn(profile.grid, |x, y| {
                    C64::from((-(x * x + y * y) / (width * width)).exp())
                });
                Ok(psi.normalized())
            }
            InputConfig::Modes { lp01, lp11a, lp11b } => {
                if !matches!(self.profile, ProfileConfig::Parabolic { .. }) {
                    return Err(CliError::Validation(
                        "mode inputs need a parabolic profile".into(),
                    ));
                }
                let modes = qlight::bpm::lp_modes_parabolic(profile);
                let psi = modes
                    .lp01
                    .scale(c64(lp01))
                    .add(&modes.lp11a.scale(c64(lp11a)))
                    .add(&modes.lp11b.scale(c64(lp11b)));
                if psi.norm_sqr() == 0.0 {
                    return Err(CliError::Validation("all mode weights are zero".into()));
                }
                Ok(psi.normalized())
            }
        }
    }
}

/// Resolves `p` against the directory holding `config`.
pub fn beside(config: &Path, p: &Path) -> PathBuf {
    match config.parent() {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.to_path_buf(),
    }
}
