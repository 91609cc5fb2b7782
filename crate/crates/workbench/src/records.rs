//! JSON records, CSV tables and run manifests.

use std::io::{Read, Write};

use ringcasimir_core::chiral::DispersionPoint;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Result of one VQE run (partitioned family, chiral system or imported file).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeRecord {
    pub family: String,
    pub sites: Option<usize>,
    pub exact_energy: f64,
    pub vqe_energy: f64,
    pub percent_difference: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub optimizer: String,
    pub seed: u64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiralRecord {
    pub sites: usize,
    pub eta: f64,
    pub scale: f64,
    pub dirac_sea_energy: f64,
    pub subtraction: f64,
    pub casimir: f64,
    pub continuum_target: f64,
}

/// Exact energy of one ring family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub family: String,
    pub sites: usize,
    pub qubits: usize,
    pub exact_energy: f64,
    pub subtraction: f64,
}

/// Exact ground energy of a Hamiltonian read from a Pauli text file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileRecord {
    pub path: String,
    pub qubits: usize,
    pub terms: usize,
    pub ground_energy: f64,
}

/// Written next to every output file; `replay` re-runs it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// How floating-point cells are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Precision {
    /// Six decimals.
    #[default]
    Fixed,
    /// Shortest decimal that round-trips.
    Full,
}

impl Precision {
    pub fn format(self, x: f64) -> String {
        match self {
            Precision::Fixed => format!("{x:.6}"),
            Precision::Full => format!("{x}"),
        }
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

pub fn write_trace<W: Write>(out: W, trace: &[(usize, f64)], precision: Precision) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    w.write_record(["iteration", "energy"])?;
    for &(it, e) in trace {
        w.write_record([it.to_string(), precision.format(e)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace<R: Read>(input: R) -> Result<Vec<(usize, f64)>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &["iteration", "energy"])?;
    r.deserialize().map(|row| Ok(row?)).collect()
}

pub fn write_dispersion<W: Write>(
    out: W,
    points: &[DispersionPoint],
    precision: Precision,
) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    w.write_record(["momentum", "lambda_minus", "lambda_plus"])?;
    for p in points {
        w.write_record([
            precision.format(p.momentum),
            precision.format(p.lambda_minus),
            precision.format(p.lambda_plus),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_dispersion<R: Read>(input: R) -> Result<Vec<DispersionPoint>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &["momentum", "lambda_minus", "lambda_plus"])?;
    r.deserialize()
        .map(|row| {
            let (momentum, lambda_minus, lambda_plus): (f64, f64, f64) = row?;
            Ok(DispersionPoint { momentum, lambda_minus, lambda_plus })
        })
        .collect()
}

/// One row of a Pauli-count sweep; `terms` is `None` past capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub sites: usize,
    pub qubits: usize,
    pub terms: Option<usize>,
}

pub fn write_counts<W: Write>(out: W, rows: &[CountRow]) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    w.write_record(["sites", "qubits", "terms"])?;
    for r in rows {
        let terms = r.terms.map_or_else(|| "NA".to_string(), |t| t.to_string());
        w.write_record([r.sites.to_string(), r.qubits.to_string(), terms])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_counts<R: Read>(input: R) -> Result<Vec<CountRow>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &["sites", "qubits", "terms"])?;
    r.deserialize()
        .map(|row| {
            let (sites, qubits, terms): (usize, usize, String) = row?;
            let terms = match terms.as_str() {
                "NA" => None,
                t => Some(t.parse().map_err(|_| CliError::Format(format!("bad term count {t:?}")))?),
            };
            Ok(CountRow { sites, qubits, terms })
        })
        .collect()
}

fn check_header<R: Read>(r: &mut csv::Reader<R>, want: &[&str]) -> Result<(), CliError> {
    let got = r.headers()?;
    if got.iter().ne(want.iter().copied()) {
        return Err(CliError::Format(format!("expected CSV header {}, found {}", want.join(","), got.iter().collect::<Vec<_>>().join(","))));
    }
    Ok(())
}
