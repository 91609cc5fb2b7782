//! Qubit Hamiltonians in whichever representation is cheapest to hold.

use alloc::string::String;
use alloc::vec::Vec;


#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use crate::error::{arg_err, capacity_err, Result};
use crate::linalg::{hermitian_eigenvalues, lowest_eigenvalue, ComplexMatrix, LanczosOptions, HERMITIAN_TOL};
use crate::pauli::{decompose, decompose_diagonal, PauliSum};

/// Largest register materialized as a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Registers up to this size are diagonalized densely; larger non-diagonal
/// operators go through Lanczos.
const DENSE_EIGEN_QUBITS: usize = 6;

/// Largest register handled by the Lanczos ground-energy path.
pub const MAX_KRYLOV_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Dense(ComplexMatrix),
    /// Real diagonal in the computational basis.
    Diagonal(Vec<f64>),
    Pauli(PauliSum),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    qubits: usize,
    operator: Operator,
    /// Free-form provenance, e.g. `"boson-periodic N=3"`.
    pub label: String,
}

fn qubits_of(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(arg_err!("operator dimension {dim} is not a power of two >= 2"));
    }
    Ok(dim.trailing_zeros() as usize)
}

impl HamiltonianSpec {
    pub fn dense(label: impl Into<String>, m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(arg_err!("Hamiltonian must be square"));
        }
        let qubits = qubits_of(m.rows())?;
        m.ensure_hermitian(HERMITIAN_TOL)?;
        Ok(Self {
            qubits,
            operator: Operator::Dense(m),
            label: label.into(),
        })
    }

    pub fn diagonal(label: impl Into<String>, diag: Vec<f64>) -> Result<Self> {
        let qubits = qubits_of(diag.len())?;
        Ok(Self {
            qubits,
            operator: Operator::Diagonal(diag),
            label: label.into(),
        })
    }

    pub fn pauli(label: impl Into<String>, p: PauliSum) -> Self {
        Self {
            qubits: p.qubits(),
            operator: Operator::Pauli(p),
            label: label.into(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn operator(&self) -> &Operator {
        &self.operator
    }

    pub fn to_pauli(&self, drop_tol: f64) -> Result<PauliSum> {
        match &self.operator {
            Operator::Dense(m) => decompose(m, drop_tol),
            Operator::Diagonal(d) => decompose_diagonal(d, drop_tol),
            Operator::Pauli(p) => PauliSum::from_terms(p.qubits(), p.terms().iter().copied(), drop_tol),
        }
    }

    pub fn to_dense(&self) -> Result<ComplexMatrix> {
        if self.qubits > MAX_DENSE_QUBITS {
            return Err(capacity_err!(
                "dense form limited to {MAX_DENSE_QUBITS} qubits, Hamiltonian has {}",
                self.qubits
            ));
        }
        Ok(match &self.operator {
            Operator::Dense(m) => m.clone(),
            Operator::Diagonal(d) => ComplexMatrix::from_diagonal(d),
            Operator::Pauli(p) => p.reconstruct(),
        })
    }

    /// The real diagonal, when the operator is diagonal in the computational basis.
    pub fn as_diagonal(&self) -> Option<Vec<f64>> {
        match &self.operator {
            Operator::Dense(m) => m.as_real_diagonal(),
            Operator::Diagonal(d) => Some(d.clone()),
            Operator::Pauli(p) => p.diagonal(),
        }
    }

    /// Lowest eigenvalue.
    pub fn ground_energy(&self) -> Result<f64> {
        if let Some(d) = self.as_diagonal() {
            return Ok(d.into_iter().fold(f64::INFINITY, f64::min));
        }
        match &self.operator {
            Operator::Dense(m) => Ok(hermitian_eigenvalues(m)?[0]),
            Operator::Diagonal(_) => unreachable!(),
            Operator::Pauli(p) if p.qubits() <= DENSE_EIGEN_QUBITS => {
                Ok(hermitian_eigenvalues(&p.reconstruct())?[0])
            }
            Operator::Pauli(p) => {
                if p.qubits() > MAX_KRYLOV_QUBITS {
                    return Err(capacity_err!(
                        "exact ground energy limited to {MAX_KRYLOV_QUBITS} qubits, got {}",
                        p.qubits()
                    ));
                }
                lowest_eigenvalue(
                    1usize << p.qubits(),
                    |v| p.apply(v).expect("dimension checked"),
                    LanczosOptions::default(),
                )
            }
        }
    }

    /// `H + shift · I` in the same representation.
    pub fn shifted(&self, shift: f64) -> Self {
        let operator = match &self.operator {
            Operator::Dense(m) => {
                let mut m = m.clone();
                for i in 0..m.rows() {
                    m[(i, i)] += shift;
                }
                Operator::Dense(m)
            }
            Operator::Diagonal(d) => Operator::Diagonal(d.iter().map(|x| x + shift).collect()),
            Operator::Pauli(p) => Operator::Pauli(p.shifted(shift, 0.0)),
        };
        Self {
            qubits: self.qubits,
            operator,
            label: self.label.clone(),
        }
    }
}
