//! Dense square complex matrices.
//!
//! Small (≤ 4096²) and row-major. This is the arithmetic substrate for the
//! gate constructors; [`crate::UnitaryMatrix`] wraps it with a checked
//! unitarity invariant.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `e^{iφ}`.
pub fn cis(phi: f64) -> C64 {
    C64::from_polar(1.0, phi)
}

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        CMatrix { dim, data }
    }

    /// Build from row-major data. Panics unless `data.len()` is a square.
    pub fn from_row_major(data: Vec<C64>) -> Self {
        let dim = (data.len() as f64).sqrt().round() as usize;
        assert_eq!(dim * dim, data.len(), "row-major data is not square");
        CMatrix { dim, data }
    }

    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| rows[i][j])
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: C64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product with `self` in the high index bits.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.dim, other.dim);
        CMatrix::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = other.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "mul_vec dimension mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A†A − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&CMatrix::identity(self.dim))
    }

    /// `max |A − A†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-ONE)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices σ₀ = 1, σ₁, σ₂, σ₃. Panics for `k > 3`.
pub fn pauli(k: usize) -> CMatrix {
    match k {
        0 => CMatrix::identity(2),
        1 => CMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]]),
        2 => CMatrix::from_rows([[ZERO, -I], [I, ZERO]]),
        3 => CMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Real rotation `[[cos θ, −sin θ], [sin θ, cos θ]]`.
pub fn rotation(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    CMatrix::from_rows([[C64::from(c), C64::from(-s)], [C64::from(s), C64::from(c)]])
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

/// `⟨a|b⟩` (conjugate-linear in `a`).
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
