//! Dense complex matrices and the handful of operations the rest of the crate
//! needs: products, adjoints, Kronecker chains and Hermitian eigensolvers.
//!
//! Storage is row-major. Everything here is sized for desk-scale problems
//! (a few thousand rows at most); larger operators are kept as diagonals or
//! Pauli sums elsewhere.

mod eigen;
mod lanczos;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::error::{arg_err, capacity_err, Error, Result};

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, Eigen};
pub use lanczos::{lowest_eigenvalue, LanczosOptions};

/// Default cap on the dimension of a dense Kronecker product.
pub const DEFAULT_DIMENSION_CAP: usize = 1 << 20;

/// Absolute tolerance used when validating Hermiticity.
pub const HERMITIAN_TOL: f64 = 1e-10;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(arg_err!("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real_rows(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_rows(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `M - M^H`; `f64::INFINITY` for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            Err(Error::NotHermitian { deviation })
        } else {
            Ok(())
        }
    }

    /// `Some(diagonal)` when every off-diagonal entry is exactly zero and the
    /// diagonal is real.
    pub fn as_real_diagonal(&self) -> Option<Vec<f64>> {
        if !self.is_square() {
            return None;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let z = self[(r, c)];
                if r == c {
                    if z.im != 0.0 {
                        return None;
                    }
                } else if !z.is_zero() {
                    return None;
                }
            }
        }
        Some(self.diagonal().into_iter().map(|z| z.re).collect())
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? + &other.matmul(self)?)
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self[(ar, ac)];
                if a.is_zero() {
                    continue;
                }
                for br in 0..rhs.rows {
                    let base = (ar * rhs.rows + br) * cols + ac * rhs.cols;
                    for (bc, &b) in rhs.row(br).iter().enumerate() {
                        out.data[base + bc] = a * b;
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on a shape mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

/// Kronecker product of `factors` in list order, with the default dimension cap.
pub fn kron_chain(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    kron_chain_capped(factors, DEFAULT_DIMENSION_CAP)
}

pub fn kron_chain_capped(factors: &[&ComplexMatrix], cap: usize) -> Result<ComplexMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| arg_err!("kron_chain needs at least one factor"))?;
    let mut dim: usize = 1;
    for f in factors {
        if !f.is_square() {
            return Err(arg_err!("kron_chain factors must be square, got {}x{}", f.rows, f.cols));
        }
        dim = dim
            .checked_mul(f.rows)
            .filter(|&d| d <= cap)
            .ok_or_else(|| capacity_err!("Kronecker dimension exceeds cap {cap}"))?;
    }
    Ok(rest.iter().fold((*first).clone(), |acc, f| acc.kron(f)))
}

/// Diagonal of `d_1 ⊗ d_2 ⊗ …` for diagonal factors.
pub fn kron_diagonals(factors: &[&[f64]]) -> Vec<f64> {
    factors.iter().fold(vec![1.0], |acc, f| {
        acc.iter().flat_map(|&a| f.iter().map(move |&b| a * b)).collect()
    })
}

/// Diagonal of `Σ_k I ⊗ … ⊗ d_k ⊗ … ⊗ I` (a Kronecker sum) for diagonal terms.
pub fn kron_sum_diagonals(terms: &[&[f64]]) -> Vec<f64> {
    terms.iter().fold(vec![0.0], |acc, t| {
        acc.iter().flat_map(|&a| t.iter().map(move |&b| a + b)).collect()
    })
}

/// Euclidean norm of a complex vector.
pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩` with the first argument conjugated.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Pauli matrices, handy for tests and examples.
pub mod pauli_matrices {
    use super::*;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(2, 2, vec![ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }
}
