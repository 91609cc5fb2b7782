use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use num_complex::Complex64;

use super::{PauliString, PauliSum};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// A Pauli expansion with complex coefficients; not necessarily Hermitian.
///
/// Used as scratch algebra for building Hermitian operators out of ladder
/// operators, which is why it only supports the few operations needed for that.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliOperator {
    qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliOperator {
    pub fn zero(qubits: usize) -> Self {
        Self {
            qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(qubits: usize) -> Self {
        Self::from_terms(qubits, [(Complex64::new(1.0, 0.0), PauliString::identity(qubits))])
    }

    pub fn from_terms(qubits: usize, terms: impl IntoIterator<Item = (Complex64, PauliString)>) -> Self {
        let mut op = Self::zero(qubits);
        for (c, p) in terms {
            op.add_term(c, p);
        }
        op
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn add_term(&mut self, coeff: Complex64, p: PauliString) {
        assert_eq!(p.qubits(), self.qubits, "Pauli string length mismatch");
        *self.terms.entry(p).or_insert(Complex64::new(0.0, 0.0)) += coeff;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            qubits: self.qubits,
            terms: self.terms.iter().map(|(p, c)| (*p, c * factor)).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        // Every Pauli string is Hermitian.
        Self {
            qubits: self.qubits,
            terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect(),
        }
    }

    /// Removes terms whose coefficient modulus is at most `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.qubits;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (p, &c) in &self.terms {
            for b in 0..dim {
                let (phase, row) = p.apply_to_basis(b);
                m[(row, b)] += c * phase;
            }
        }
        m
    }

    /// Converts to a real-weighted [`PauliSum`], failing if any coefficient has
    /// an imaginary part above `imag_tol` (i.e. the operator is not Hermitian).
    pub fn into_hermitian(self, imag_tol: f64, drop_tol: f64) -> Result<PauliSum> {
        let deviation = self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max);
        if deviation > imag_tol {
            return Err(Error::NotHermitian { deviation });
        }
        let terms: Vec<(f64, PauliString)> = self.terms.into_iter().map(|(p, c)| (c.re, p)).collect();
        PauliSum::from_terms(self.qubits, terms, drop_tol)
    }
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    fn mul(self, rhs: Self) -> PauliOperator {
        assert_eq!(self.qubits, rhs.qubits);
        let mut out = PauliOperator::zero(self.qubits);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let (phase, p) = a.multiply(b);
                out.add_term(ca * cb * phase, p);
            }
        }
        out
    }
}

impl Add for &PauliOperator {
    type Output = PauliOperator;

    fn add(self, rhs: Self) -> PauliOperator {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(*c, *p);
        }
        out
    }
}
