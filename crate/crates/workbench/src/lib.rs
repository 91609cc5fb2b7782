//! File formats, pipelines and the command-line surface of `ringcasimir`.
//!
//! The numerical work lives in [`ringcasimir_core`]; this crate adds the
//! Pauli text format, CSV/JSON records, run manifests and parallel sweeps.

pub mod cli;
pub mod error;
pub mod pauli_text;
pub mod pipeline;
pub mod records;

pub use error::CliError;
