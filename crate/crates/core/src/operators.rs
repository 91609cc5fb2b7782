//! Second-quantized ladder operators on qubit registers.
//!
//! Mode 1 occupies the leftmost (most significant) tensor slot. A boson mode
//! is truncated to four levels and takes two qubits; a fermion mode takes one
//! qubit with occupation `|1>`, and carries a string of `Z` on all earlier
//! modes (Jordan–Wigner).

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use num_complex::Complex64;

use crate::error::{arg_err, Result};
use crate::linalg::{kron_chain, pauli_matrices, ComplexMatrix};
use crate::pauli::{PauliOperator, PauliString};

/// Levels kept per boson mode.
pub const BOSON_LEVELS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadderKind {
    /// 4×4 truncated oscillator lowering operator.
    BosonLower4,
    /// Single-mode fermion lowering operator `|0><1|`.
    FermionLower,
}

impl LadderKind {
    pub fn matrix(self) -> ComplexMatrix {
        match self {
            LadderKind::BosonLower4 => {
                let mut m = ComplexMatrix::zeros(BOSON_LEVELS, BOSON_LEVELS);
                for k in 1..BOSON_LEVELS {
                    m[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
                }
                m
            }
            LadderKind::FermionLower => {
                ComplexMatrix::from_real_rows(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap()
            }
        }
    }

    pub fn local_dimension(self) -> usize {
        match self {
            LadderKind::BosonLower4 => BOSON_LEVELS,
            LadderKind::FermionLower => 2,
        }
    }
}

fn check_mode(mode: usize, n_modes: usize) -> Result<()> {
    if mode == 0 || mode > n_modes {
        Err(arg_err!("mode index {mode} outside 1..={n_modes}"))
    } else {
        Ok(())
    }
}

/// Lowering operator of boson mode `mode` (1-based) among `n_modes`, a `4^n` square matrix.
pub fn boson_lower(mode: usize, n_modes: usize) -> Result<ComplexMatrix> {
    check_mode(mode, n_modes)?;
    let id = ComplexMatrix::identity(BOSON_LEVELS);
    let a = LadderKind::BosonLower4.matrix();
    let factors: Vec<&ComplexMatrix> = (1..=n_modes).map(|m| if m == mode { &a } else { &id }).collect();
    kron_chain(&factors)
}

/// Jordan–Wigner lowering operator of fermion mode `mode` (1-based) among `n_modes`.
pub fn fermion_lower(mode: usize, n_modes: usize) -> Result<ComplexMatrix> {
    check_mode(mode, n_modes)?;
    let id = ComplexMatrix::identity(2);
    let z = pauli_matrices::z();
    let c = LadderKind::FermionLower.matrix();
    let factors: Vec<&ComplexMatrix> = (1..=n_modes)
        .map(|m| match m.cmp(&mode) {
            core::cmp::Ordering::Less => &z,
            core::cmp::Ordering::Equal => &c,
            core::cmp::Ordering::Greater => &id,
        })
        .collect();
    kron_chain(&factors)
}

/// Jordan–Wigner lowering operator as a complex Pauli expansion,
/// `Z…Z (X + iY)/2 I…I`. Usable on registers too large for dense matrices.
pub fn fermion_lower_pauli(mode: usize, n_modes: usize) -> Result<PauliOperator> {
    check_mode(mode, n_modes)?;
    let letters = |last: char| -> PauliString {
        let s: alloc::string::String = (1..=n_modes)
            .map(|m| match m.cmp(&mode) {
                core::cmp::Ordering::Less => 'Z',
                core::cmp::Ordering::Equal => last,
                core::cmp::Ordering::Greater => 'I',
            })
            .collect();
        s.parse().expect("valid Pauli letters")
    };
    Ok(PauliOperator::from_terms(
        n_modes,
        vec![
            (Complex64::new(0.5, 0.0), letters('X')),
            (Complex64::new(0.0, 0.5), letters('Y')),
        ],
    ))
}

/// Creation counterpart of [`fermion_lower_pauli`].
pub fn fermion_raise_pauli(mode: usize, n_modes: usize) -> Result<PauliOperator> {
    fermion_lower_pauli(mode, n_modes).map(|c| c.adjoint())
}
