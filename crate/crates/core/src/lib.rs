#![no_std]
//! Numerical core for lattice Casimir energies on qubit registers.
//!
//! The crate builds free boson and fermion ring Hamiltonians on qubits,
//! expands them in Pauli strings, finds ground energies exactly and with a
//! statevector VQE, and handles the η-deformed Wilson fermion used for a
//! chiral Casimir energy. It needs `alloc` but not `std`.

extern crate alloc;

pub mod ansatz;
pub mod chiral;
pub mod error;
pub mod hamiltonian;
pub mod lattice;
pub mod linalg;
pub mod operators;
pub mod optimize;
pub mod pauli;
pub mod quadrature;
pub mod vqe;

pub use error::{Error, Result};
