//! Beam propagation for the paraxial vector wave equation.
//!
//! The field `ψ = (ψ_x, ψ_y)` evolves along `z` as `iλ ∂_z ψ = H ψ` with
//!
//! ```text
//! H = a(−Δ₂) + b V + c M,   a = λ²/(4π n₀),  b = π/n₀,  c = λ²/(4π n₀³)
//! (M ψ)_i = ∂_i (∇V · ψ)
//! ```
//!
//! where `n² = n₀² − V` defines the potential. `a` is the Fresnel
//! coefficient of the paraxial equation: with it a Gaussian spreads at the
//! rate set by `k₀ = 2π/λ`. The polarization-mixing term `M` only acts in
//! [`Mode::Vector`].
//!
//! Scalar propagation is Strang split-step with a spectral kinetic step, so
//! every substep is a unimodular multiplication in either real or Fourier
//! space. Vector propagation wraps that step between two half-steps of the
//! mixing term integrated with classic RK4.

use std::f64::consts::PI;
use std::io::{self, Read, Write};
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::linalg::{cis, CMatrix, C64, ZERO};
use crate::par::{self, Parallelism};
use crate::{Error, Result};

/// Default vacuum wavelength, m.
pub const DEFAULT_LAMBDA0: f64 = 1550e-9;
/// Propagation aborts when the relative norm drift exceeds this.
pub const MAX_NORM_DRIFT: f64 = 1e-3;
/// `max V > POTENTIAL_WARN · n₀²` raises a warning.
pub const POTENTIAL_WARN: f64 = 0.1;
/// `λ₀/n₀² |dn₀/dz|` above this raises a warning.
pub const SLOW_VARIATION_WARN: f64 = 0.01;

/// Rectangular grid centred on the axis: `x_i = (i − (nx−1)/2) dx`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points per axis, got {nx}x{ny}"
            )));
        }
        if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid spacings must be positive, got dx={dx} dy={dy}"
            )));
        }
        Ok(Grid { nx, ny, dx, dy })
    }

    pub fn square(n: usize, d: f64) -> Result<Self> {
        Self::new(n, n, d, d)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - (self.nx as f64 - 1.0) / 2.0) * self.dx
    }

    pub fn y(&self, j: usize) -> f64 {
        (j as f64 - (self.ny as f64 - 1.0) / 2.0) * self.dy
    }

    /// Cell area `dx·dy`, the quadrature weight of every sample.
    pub fn cell(&self) -> f64 {
        self.dx * self.dy
    }

    /// Row-major samples `f(x_i, y_j)` at index `j·nx + i`.
    pub fn sample<T>(&self, f: impl Fn(f64, f64) -> T) -> Vec<T> {
        let mut out = Vec::with_capacity(self.len());
        for j in 0..self.ny {
            for i in 0..self.nx {
                out.push(f(self.x(i), self.y(j)));
            }
        }
        out
    }

    fn wavenumber(n: usize, d: f64, i: usize) -> f64 {
        let k = if i <= n / 2 {
            i as f64
        } else {
            i as f64 - n as f64
        };
        2.0 * PI * k / (n as f64 * d)
    }
}

/// On-axis index `n₀(z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum N0Profile {
    Constant(f64),
    /// `n₀(z) = n0 + slope·z`.
    Linear {
        n0: f64,
        slope: f64,
    },
}

impl N0Profile {
    pub fn at(&self, z: f64) -> f64 {
        match *self {
            N0Profile::Constant(n) => n,
            N0Profile::Linear { n0, slope } => n0 + slope * z,
        }
    }

    pub fn derivative(&self) -> f64 {
        match *self {
            N0Profile::Constant(_) => 0.0,
            N0Profile::Linear { slope, .. } => slope,
        }
    }
}

/// Index profile `n² = n₀²(z) − V(x, y)` sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveguideProfile {
    pub n0: N0Profile,
    pub lambda0: f64,
    pub grid: Grid,
    potential: Vec<f64>,
}

impl WaveguideProfile {
    pub fn new(grid: Grid, n0: N0Profile, lambda0: f64, potential: Vec<f64>) -> Result<Self> {
        if potential.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "potential has {} samples, grid has {}",
                potential.len(),
                grid.len()
            )));
        }
        if !(lambda0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "wavelength must be positive, got {lambda0}"
            )));
        }
        if !(n0.at(0.0) > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "on-axis index must be positive, got {}",
                n0.at(0.0)
            )));
        }
        if potential.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "potential has non-finite samples".into(),
            ));
        }
        Ok(WaveguideProfile {
            n0,
            lambda0,
            grid,
            potential,
        })
    }

    pub fn uniform(grid: Grid, n0: f64, lambda0: f64) -> Result<Self> {
        Self::new(
            grid,
            N0Profile::Constant(n0),
            lambda0,
            vec![0.0; grid.len()],
        )
    }

    /// `V = κ r²`.
    pub fn parabolic(grid: Grid, n0: f64, lambda0: f64, kappa: f64) -> Result<Self> {
        let v = grid.sample(|x, y| kappa * (x * x + y * y));
        Self::new(grid, N0Profile::Constant(n0), lambda0, v)
    }

    /// Parabolic profile whose LP₀₁ intensity has `1/e` radius `width`
    /// (field `exp(−r²/2s²)` with `s = width`).
    pub fn parabolic_with_mode_width(
        grid: Grid,
        n0: f64,
        lambda0: f64,
        width: f64,
    ) -> Result<Self> {
        let c = Coefficients::new(n0, lambda0);
        let kappa = c.kinetic / (c.potential * width.powi(4));
        Self::parabolic(grid, n0, lambda0, kappa)
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    /// Least-squares curvature `κ` in `V ≈ κ r²`; exact for parabolic profiles.
    pub fn curvature(&self) -> f64 {
        let r2 = self.grid.sample(|x, y| x * x + y * y);
        let num: f64 = r2.iter().zip(&self.potential).map(|(r, v)| r * v).sum();
        let den: f64 = r2.iter().map(|r| r * r).sum();
        num / den
    }

    /// Weak-guidance and slow-variation diagnostics over `[z0, z1]`.
    pub fn warnings(&self, z0: f64, z1: f64) -> Vec<String> {
        let mut out = Vec::new();
        let n_min = self.n0.at(z0).min(self.n0.at(z1));
        let v_max = self.potential.iter().copied().fold(f64::MIN, f64::max);
        if v_max > POTENTIAL_WARN * n_min * n_min {
            out.push(format!(
                "max V = {v_max:.3e} exceeds {POTENTIAL_WARN} n0^2 = {:.3e}; weak-guidance form is inaccurate",
                POTENTIAL_WARN * n_min * n_min
            ));
        }
        let slow = self.lambda0 / (n_min * n_min) * self.n0.derivative().abs();
        if slow > SLOW_VARIATION_WARN {
            out.push(format!(
                "lambda0/n0^2 |dn0/dz| = {slow:.3e} exceeds {SLOW_VARIATION_WARN}; n0 varies too fast"
            ));
        }
        out
    }
}

/// `a`, `b`, `c` of the Hamiltonian at a given `n₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients {
    pub lambda: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub mixing: f64,
}

impl Coefficients {
    pub fn new(n0: f64, lambda: f64) -> Self {
        Coefficients {
            lambda,
            kinetic: lambda * lambda / (4.0 * PI * n0),
            potential: PI / n0,
            mixing: lambda * lambda / (4.0 * PI * n0.powi(3)),
        }
    }

    /// Spacing between adjacent levels of the parabolic guide `V = κr²`.
    pub fn parabolic_level_spacing(&self, kappa: f64) -> f64 {
        2.0 * (self.kinetic * self.potential * kappa).sqrt()
    }

    /// Mode radius `s` with `s⁴ = a/(bκ)`.
    pub fn parabolic_mode_width(&self, kappa: f64) -> f64 {
        (self.kinetic / (self.potential * kappa)).powf(0.25)
    }
}

/// A single sampled transverse field.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField2D {
    pub grid: Grid,
    pub psi: Vec<C64>,
}

impl ScalarField2D {
    pub fn new(grid: Grid, psi: Vec<C64>) -> Result<Self> {
        if psi.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "field has {} samples, grid has {}",
                psi.len(),
                grid.len()
            )));
        }
        Ok(ScalarField2D { grid, psi })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> C64) -> Self {
        ScalarField2D {
            grid,
            psi: grid.sample(f),
        }
    }

    /// `Σ|ψ|² dx dy`.
    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.cell()
    }

    /// `⟨self|other⟩ = Σ ψ̄ φ dx dy`.
    pub fn inner(&self, other: &ScalarField2D) -> C64 {
        crate::linalg::inner(&self.psi, &other.psi) * self.grid.cell()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm_sqr().sqrt();
        self.psi.iter_mut().for_each(|a| *a /= n);
        self
    }

    pub fn scale(&self, c: C64) -> Self {
        ScalarField2D {
            grid: self.grid,
            psi: self.psi.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &ScalarField2D) -> Self {
        ScalarField2D {
            grid: self.grid,
            psi: self
                .psi
                .iter()
                .zip(&other.psi)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.psi.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// `(ψ_x, ψ_y)` at longitudinal position `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField2D {
    pub grid: Grid,
    pub psi_x: Vec<C64>,
    pub psi_y: Vec<C64>,
    pub z: f64,
}

impl VectorField2D {
    pub fn new(grid: Grid, psi_x: Vec<C64>, psi_y: Vec<C64>, z: f64) -> Result<Self> {
        for (name, c) in [("psi_x", &psi_x), ("psi_y", &psi_y)] {
            if c.len() != grid.len() {
                return Err(Error::GridMismatch(format!(
                    "{name} has {} samples, grid has {}",
                    c.len(),
                    grid.len()
                )));
            }
            if c.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} has non-finite samples"
                )));
            }
        }
        Ok(VectorField2D {
            grid,
            psi_x,
            psi_y,
            z,
        })
    }

    /// Scalar field carried by the x polarization only.
    pub fn x_polarized(field: &ScalarField2D, z: f64) -> Self {
        VectorField2D {
            grid: field.grid,
            psi_x: field.psi.clone(),
            psi_y: vec![ZERO; field.psi.len()],
            z,
        }
    }

    pub fn component_x(&self) -> ScalarField2D {
        ScalarField2D {
            grid: self.grid,
            psi: self.psi_x.clone(),
        }
    }

    pub fn component_y(&self) -> ScalarField2D {
        ScalarField2D {
            grid: self.grid,
            psi: self.psi_y.clone(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        (crate::linalg::norm_sqr(&self.psi_x) + crate::linalg::norm_sqr(&self.psi_y))
            * self.grid.cell()
    }

    /// `‖self − other‖ / ‖other‖`.
    pub fn relative_distance(&self, other: &VectorField2D) -> f64 {
        let diff: f64 = self
            .psi_x
            .iter()
            .zip(&other.psi_x)
            .chain(self.psi_y.iter().zip(&other.psi_y))
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (diff * self.grid.cell() / other.norm_sqr()).sqrt()
    }

    /// Total intensity `|ψ_x|² + |ψ_y|²` per sample.
    pub fn intensity(&self) -> Vec<f64> {
        self.psi_x
            .iter()
            .zip(&self.psi_y)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Scalar,
    Vector,
}

/// Row-by-row 2D FFT over a row-major `ny × nx` array.
struct Fft2 {
    nx: usize,
    ny: usize,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
    policy: Parallelism,
}

impl Fft2 {
    fn new(grid: &Grid, policy: Parallelism) -> Self {
        let mut planner = FftPlanner::new();
        Fft2 {
            nx: grid.nx,
            ny: grid.ny,
            fwd_x: planner.plan_fft_forward(grid.nx),
            inv_x: planner.plan_fft_inverse(grid.nx),
            fwd_y: planner.plan_fft_forward(grid.ny),
            inv_y: planner.plan_fft_inverse(grid.ny),
            policy,
        }
    }

    fn rows(&self, data: &mut [C64], width: usize, fft: &Arc<dyn Fft<f64>>) {
        par::for_each_chunk_mut(self.policy, data, width, |_, row| fft.process(row));
    }

    fn transpose(data: &[C64], rows: usize, cols: usize) -> Vec<C64> {
        let mut out = vec![ZERO; data.len()];
        for r in 0..rows {
            for c in 0..cols {
                out[c * rows + r] = data[r * cols + c];
            }
        }
        out
    }

    /// Unnormalized transform; `inverse = true` flips the sign.
    fn process(&self, data: &mut Vec<C64>, inverse: bool) {
        let (fx, fy) = if inverse {
            (&self.inv_x, &self.inv_y)
        } else {
            (&self.fwd_x, &self.fwd_y)
        };
        self.rows(data, self.nx, fx);
        let mut t = Self::transpose(data, self.ny, self.nx);
        self.rows(&mut t, self.ny, fy);
        *data = Self::transpose(&t, self.nx, self.ny);
    }
}

/// `|k|²` on the FFT frequency layout.
fn k_squared(grid: &Grid) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    for j in 0..grid.ny {
        let ky = Grid::wavenumber(grid.ny, grid.dy, j);
        for i in 0..grid.nx {
            let kx = Grid::wavenumber(grid.nx, grid.dx, i);
            out.push(kx * kx + ky * ky);
        }
    }
    out
}

/// Centered periodic derivatives `(∂_x f, ∂_y f)`.
fn gradient<T>(grid: &Grid, f: &[T]) -> (Vec<T>, Vec<T>)
where
    T: Copy + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let (nx, ny) = (grid.nx, grid.ny);
    let mut gx = Vec::with_capacity(f.len());
    let mut gy = Vec::with_capacity(f.len());
    for j in 0..ny {
        let (jm, jp) = ((j + ny - 1) % ny, (j + 1) % ny);
        for i in 0..nx {
            let (im, ip) = ((i + nx - 1) % nx, (i + 1) % nx);
            gx.push((f[j * nx + ip] - f[j * nx + im]) * (0.5 / grid.dx));
            gy.push((f[jp * nx + i] - f[jm * nx + i]) * (0.5 / grid.dy));
        }
    }
    (gx, gy)
}

fn check_grid(profile: &WaveguideProfile, field: &VectorField2D) -> Result<()> {
    if profile.grid != field.grid {
        return Err(Error::GridMismatch(format!(
            "profile grid {:?} differs from field grid {:?}",
            profile.grid, field.grid
        )));
    }
    Ok(())
}

/// Potential gradient `∇V` used by the mixing term.
struct Mixing {
    vx: Vec<f64>,
    vy: Vec<f64>,
}

impl Mixing {
    fn new(profile: &WaveguideProfile) -> Option<Self> {
        let (vx, vy) = gradient(&profile.grid, &profile.potential);
        if vx.iter().chain(&vy).all(|&g| g == 0.0) {
            None
        } else {
            Some(Mixing { vx, vy })
        }
    }

    /// `(∂_x(∇V·ψ), ∂_y(∇V·ψ))`.
    fn apply(&self, grid: &Grid, px: &[C64], py: &[C64]) -> (Vec<C64>, Vec<C64>) {
        let s: Vec<C64> = (0..px.len())
            .map(|k| px[k] * self.vx[k] + py[k] * self.vy[k])
            .collect();
        gradient(grid, &s)
    }
}

/// `H ψ` without advancing `z`.
pub fn hamiltonian_apply(
    profile: &WaveguideProfile,
    field: &VectorField2D,
    mode: Mode,
) -> Result<VectorField2D> {
    check_grid(profile, field)?;
    let grid = profile.grid;
    let c = Coefficients::new(profile.n0.at(field.z), profile.lambda0);
    let fft = Fft2::new(&grid, Parallelism::default());
    let k2 = k_squared(&grid);
    let n = grid.len() as f64;
    let scalar = |psi: &[C64]| -> Vec<C64> {
        let mut spec = psi.to_vec();
        fft.process(&mut spec, false);
        for (s, k) in spec.iter_mut().zip(&k2) {
            *s *= c.kinetic * k / n;
        }
        fft.process(&mut spec, true);
        spec.iter()
            .zip(psi)
            .zip(&profile.potential)
            .map(|((kin, p), v)| kin + p * (c.potential * v))
            .collect()
    };
    let mut hx = scalar(&field.psi_x);
    let mut hy = scalar(&field.psi_y);
    if mode == Mode::Vector {
        if let Some(m) = Mixing::new(profile) {
            let (mx, my) = m.apply(&grid, &field.psi_x, &field.psi_y);
            for k in 0..hx.len() {
                hx[k] += mx[k] * c.mixing;
                hy[k] += my[k] * c.mixing;
            }
        }
    }
    Ok(VectorField2D {
        grid,
        psi_x: hx,
        psi_y: hy,
        z: field.z,
    })
}

/// Result of [`propagate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Propagation {
    pub field: VectorField2D,
    /// Largest `|‖ψ‖²/‖ψ₀‖² − 1|` seen after any step.
    pub max_norm_drift: f64,
    pub warnings: Vec<String>,
}

pub fn propagate(
    profile: &WaveguideProfile,
    field: &VectorField2D,
    dz: f64,
    steps: usize,
    mode: Mode,
) -> Result<Propagation> {
    propagate_with(profile, field, dz, steps, mode, Parallelism::default())
}

/// Advances `field` by `steps · dz`. `n₀` is held at its value at the
/// starting `z`.
pub fn propagate_with(
    profile: &WaveguideProfile,
    field: &VectorField2D,
    dz: f64,
    steps: usize,
    mode: Mode,
    policy: Parallelism,
) -> Result<Propagation> {
    check_grid(profile, field)?;
    if !(dz > 0.0) || !dz.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "dz must be positive, got {dz}"
        )));
    }
    let grid = profile.grid;
    let c = Coefficients::new(profile.n0.at(field.z), profile.lambda0);
    let n = grid.len() as f64;
    let fft = Fft2::new(&grid, policy);

    // exp(−i H dz/λ), split as half potential, full kinetic, half potential
    let half_v: Vec<C64> = profile
        .potential
        .iter()
        .map(|v| cis(-c.potential * v * dz / (2.0 * c.lambda)))
        .collect();
    let kinetic: Vec<C64> = k_squared(&grid)
        .iter()
        .map(|k| cis(-c.kinetic * k * dz / c.lambda) / n)
        .collect();
    let mixing = match mode {
        Mode::Vector => Mixing::new(profile),
        Mode::Scalar => None,
    };

    let scalar_step = |psi: &mut Vec<C64>| {
        par::update_indexed(policy, psi, |k, a| a * half_v[k]);
        fft.process(psi, false);
        par::update_indexed(policy, psi, |k, a| a * kinetic[k]);
        fft.process(psi, true);
        par::update_indexed(policy, psi, |k, a| a * half_v[k]);
    };

    let norm0 = field.norm_sqr();
    let mut out = field.clone();
    let mut max_norm_drift: f64 = 0.0;
    for step in 0..steps {
        if let Some(m) = &mixing {
            mixing_rk4(m, &grid, &mut out, -c.mixing / c.lambda * dz / 2.0);
        }
        scalar_step(&mut out.psi_x);
        scalar_step(&mut out.psi_y);
        if let Some(m) = &mixing {
            mixing_rk4(m, &grid, &mut out, -c.mixing / c.lambda * dz / 2.0);
        }
        let drift = (out.norm_sqr() / norm0 - 1.0).abs();
        if !drift.is_finite() || drift > MAX_NORM_DRIFT {
            return Err(Error::Instability(format!(
                "norm drift {drift:.3e} exceeds {MAX_NORM_DRIFT:e} at step {} (z = {:.6e} m)",
                step + 1,
                field.z + (step + 1) as f64 * dz
            )));
        }
        max_norm_drift = max_norm_drift.max(drift);
    }
    out.z = field.z + steps as f64 * dz;
    Ok(Propagation {
        warnings: profile.warnings(field.z, out.z),
        field: out,
        max_norm_drift,
    })
}

/// One RK4 step of `dψ/dz = i·h·Mψ`, where `h` is the signed step.
fn mixing_rk4(m: &Mixing, grid: &Grid, f: &mut VectorField2D, h: f64) {
    let rhs = |px: &[C64], py: &[C64]| {
        let (mx, my) = m.apply(grid, px, py);
        let i = C64::new(0.0, h);
        (
            mx.into_iter().map(|v| v * i).collect::<Vec<_>>(),
            my.into_iter().map(|v| v * i).collect::<Vec<_>>(),
        )
    };
    let axpy = |a: &[C64], k: &[C64], s: f64| -> Vec<C64> {
        a.iter().zip(k).map(|(x, y)| x + y * s).collect()
    };
    let (k1x, k1y) = rhs(&f.psi_x, &f.psi_y);
    let (k2x, k2y) = rhs(&axpy(&f.psi_x, &k1x, 0.5), &axpy(&f.psi_y, &k1y, 0.5));
    let (k3x, k3y) = rhs(&axpy(&f.psi_x, &k2x, 0.5), &axpy(&f.psi_y, &k2y, 0.5));
    let (k4x, k4y) = rhs(&axpy(&f.psi_x, &k3x, 1.0), &axpy(&f.psi_y, &k3y, 1.0));
    for k in 0..f.psi_x.len() {
        f.psi_x[k] += (k1x[k] + (k2x[k] + k3x[k]) * 2.0 + k4x[k]) / 6.0;
        f.psi_y[k] += (k1y[k] + (k2y[k] + k3y[k]) * 2.0 + k4y[k]) / 6.0;
    }
}

/// Free-space solution for the initial field `exp(−r²/2w²)`:
/// `ψ = w²/q · exp(−r²/2q)` with `q = w² + 2iDz`, `D = a/λ`.
pub fn free_gaussian(grid: Grid, n0: f64, lambda0: f64, width: f64, z: f64) -> ScalarField2D {
    let c = Coefficients::new(n0, lambda0);
    let q = C64::new(width * width, 2.0 * c.kinetic / c.lambda * z);
    let amp = C64::from(width * width) / q;
    ScalarField2D::from_fn(grid, |x, y| amp * (-(x * x + y * y) / (2.0 * q)).exp())
}

/// Normalized LP₀₁ and the two LP₁₁ orientations of a parabolic guide.
#[derive(Clone, Debug, PartialEq)]
pub struct LpModes {
    pub lp01: ScalarField2D,
    /// Lobes along x; codes `|1⟩`.
    pub lp11a: ScalarField2D,
    /// Lobes along y; codes `|0⟩`.
    pub lp11b: ScalarField2D,
    /// Mode radius `s`.
    pub width: f64,
    /// Spacing between LP₀₁ and LP₁₁ levels of `H`.
    pub level_spacing: f64,
}

impl LpModes {
    /// Distance over which LP₁₁ gains `2π` of phase relative to LP₀₁.
    pub fn beat_length(&self, lambda: f64) -> f64 {
        2.0 * PI * lambda / self.level_spacing
    }

    pub fn modes(&self) -> [&ScalarField2D; 3] {
        [&self.lp01, &self.lp11a, &self.lp11b]
    }
}

/// Hermite-Gauss modes of the profile's best-fit parabola, evaluated at
/// `z = 0`.
pub fn lp_modes_parabolic(profile: &WaveguideProfile) -> LpModes {
    let c = Coefficients::new(profile.n0.at(0.0), profile.lambda0);
    let kappa = profile.curvature();
    let s = c.parabolic_mode_width(kappa);
    let g = profile.grid;
    let gauss = |x: f64, y: f64| (-(x * x + y * y) / (2.0 * s * s)).exp();
    LpModes {
        lp01: ScalarField2D::from_fn(g, |x, y| C64::from(gauss(x, y))).normalized(),
        lp11a: ScalarField2D::from_fn(g, |x, y| C64::from(x * gauss(x, y))).normalized(),
        lp11b: ScalarField2D::from_fn(g, |x, y| C64::from(y * gauss(x, y))).normalized(),
        width: s,
        level_spacing: c.parabolic_level_spacing(kappa),
    }
}

/// Overlaps with a set of orthonormal modes.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub amplitudes: Vec<C64>,
    /// `‖ψ‖² − Σ|amplitude|²`.
    pub residual_power: f64,
}

pub fn project_onto_modes(field: &ScalarField2D, modes: &[&ScalarField2D]) -> Result<Projection> {
    for m in modes {
        if m.grid != field.grid {
            return Err(Error::GridMismatch("mode and field grids differ".into()));
        }
    }
    let amplitudes: Vec<C64> = modes.iter().map(|m| m.inner(field)).collect();
    let captured: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    Ok(Projection {
        residual_power: field.norm_sqr() - captured,
        amplitudes,
    })
}

/// `J₊`, `J₋`, `J₃` on `span(a†|0⟩, b†|0⟩)`.
pub fn su2_lp11_generators() -> [CMatrix; 3] {
    use crate::linalg::ONE;
    [
        CMatrix::from_rows([[ZERO, ONE], [ZERO, ZERO]]),
        CMatrix::from_rows([[ZERO, ZERO], [ONE, ZERO]]),
        CMatrix::diagonal(&[C64::from(0.5), C64::from(-0.5)]),
    ]
}

/// Imaginary-step ground state of the scalar operator on the grid:
/// repeated `exp(−H τ)` split steps with renormalization.
pub fn grid_ground_state(
    profile: &WaveguideProfile,
    start: &ScalarField2D,
    tau: f64,
    iterations: usize,
) -> ScalarField2D {
    let grid = profile.grid;
    let c = Coefficients::new(profile.n0.at(0.0), profile.lambda0);
    let fft = Fft2::new(&grid, Parallelism::default());
    let n = grid.len() as f64;
    let half_v: Vec<f64> = profile
        .potential
        .iter()
        .map(|v| (-c.potential * v * tau / 2.0).exp())
        .collect();
    let kin: Vec<f64> = k_squared(&grid)
        .iter()
        .map(|k| (-c.kinetic * k * tau).exp() / n)
        .collect();
    let mut psi = start.psi.clone();
    for _ in 0..iterations {
        psi.iter_mut().zip(&half_v).for_each(|(a, v)| *a *= v);
        fft.process(&mut psi, false);
        psi.iter_mut().zip(&kin).for_each(|(a, k)| *a *= k);
        fft.process(&mut psi, true);
        psi.iter_mut().zip(&half_v).for_each(|(a, v)| *a *= v);
        let norm = (crate::linalg::norm_sqr(&psi) * grid.cell()).sqrt();
        psi.iter_mut().for_each(|a| *a /= norm);
    }
    ScalarField2D { grid, psi }
}

/// Magic bytes opening a binary field snapshot.
pub const SNAPSHOT_MAGIC: &[u8; 8] = b"QLFIELD1";

/// Binary snapshot: magic, `u32` nx, ny, `f64` dx, dy, dz, z, then
/// `ψ_x` and `ψ_y` as interleaved little-endian `(re, im)` pairs.
pub fn write_snapshot<W: Write>(w: &mut W, field: &VectorField2D, dz: f64) -> io::Result<()> {
    w.write_all(SNAPSHOT_MAGIC)?;
    w.write_all(&(field.grid.nx as u32).to_le_bytes())?;
    w.write_all(&(field.grid.ny as u32).to_le_bytes())?;
    for v in [field.grid.dx, field.grid.dy, dz, field.z] {
        w.write_all(&v.to_le_bytes())?;
    }
    for a in field.psi_x.iter().chain(&field.psi_y) {
        w.write_all(&a.re.to_le_bytes())?;
        w.write_all(&a.im.to_le_bytes())?;
    }
    Ok(())
}

/// Inverse of [`write_snapshot`]; returns the field and its `dz`.
pub fn read_snapshot<R: Read>(r: &mut R) -> Result<(VectorField2D, f64)> {
    let bad = |e: io::Error| Error::InvalidParameter(format!("snapshot: {e}"));
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(bad)?;
    if &magic != SNAPSHOT_MAGIC {
        return Err(Error::InvalidParameter("snapshot: bad magic".into()));
    }
    let mut u = [0u8; 4];
    let mut read_u32 = |r: &mut R| -> Result<usize> {
        r.read_exact(&mut u).map_err(bad)?;
        Ok(u32::from_le_bytes(u) as usize)
    };
    let nx = read_u32(r)?;
    let ny = read_u32(r)?;
    let mut f = [0u8; 8];
    let mut read_f64 = |r: &mut R| -> Result<f64> {
        r.read_exact(&mut f).map_err(bad)?;
        Ok(f64::from_le_bytes(f))
    };
    let dx = read_f64(r)?;
    let dy = read_f64(r)?;
    let dz = read_f64(r)?;
    let z = read_f64(r)?;
    let grid = Grid::new(nx, ny, dx, dy)?;
    let mut comps = Vec::with_capacity(2);
    for _ in 0..2 {
        let mut c = Vec::with_capacity(grid.len());
        for _ in 0..grid.len() {
            let re = read_f64(r)?;
            let im = read_f64(r)?;
            c.push(C64::new(re, im));
        }
        comps.push(c);
    }
    let psi_y = comps.pop().expect("two components");
    let psi_x = comps.pop().expect("two components");
    Ok((VectorField2D::new(grid, psi_x, psi_y, z)?, dz))
}

/// Whitespace-separated table `x y re_x im_x re_y im_y`, one sample per row.
pub fn write_table<W: Write>(w: &mut W, field: &VectorField2D) -> io::Result<()> {
    writeln!(w, "# z = {:.17e}", field.z)?;
    writeln!(w, "# x y re_x im_x re_y im_y")?;
    let g = field.grid;
    for j in 0..g.ny {
        for i in 0..g.nx {
            let k = j * g.nx + i;
            let (a, b) = (field.psi_x[k], field.psi_y[k]);
            writeln!(
                w,
                "{:.17e} {:.17e} {:.17e} {:.17e} {:.17e} {:.17e}",
                g.x(i),
                g.y(j),
                a.re,
                a.im,
                b.re,
                b.im
            )?;
        }
    }
    Ok(())
}
