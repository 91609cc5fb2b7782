//! Line-oriented text form of a [`PauliSum`].
//!
//! ```text
//! # ringcasimir pauli v1
//! qubits 2
//! 2 II
//! -1 ZI
//! -0.5 IZ
//! ```
//!
//! Lines starting with `#` are comments. The `qubits` line comes first, then
//! one `<coefficient> <letters>` term per line in the sum's canonical order.
//! Coefficients are written as the shortest decimal that parses back to the
//! same `f64`, so serialize and parse round-trip bit for bit. Every line,
//! including the last, ends in `\n`.

use std::fmt::Write as _;

use ringcasimir_core::pauli::{PauliString, PauliStringError, PauliSum, MAX_QUBITS};
use thiserror::Error;

pub const HEADER: &str = "# ringcasimir pauli v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `qubits <n>` before any term")]
    MissingQubits,
    #[error("bad qubit count {0:?}")]
    BadQubitCount(String),
    #[error("expected `<coefficient> <letters>`")]
    MalformedTerm,
    #[error("coefficient {0:?} is not a finite number")]
    BadCoefficient(String),
    #[error("invalid Pauli symbol '{symbol}' at column {column}")]
    BadSymbol { symbol: char, column: usize },
    #[error("string has {found} letters, register has {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("duplicate Pauli string {0}")]
    Duplicate(String),
    #[error("missing final newline (file truncated?)")]
    MissingNewline,
}

/// A parse failure at a 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    /// The offending symbol for bad-letter errors.
    pub fn symbol(&self) -> Option<char> {
        match self.kind {
            ParseErrorKind::BadSymbol { symbol, .. } => Some(symbol),
            _ => None,
        }
    }
}

/// Shortest round-trip decimal: plain notation unless exponent form is shorter.
pub fn format_coefficient(c: f64) -> String {
    let plain = format!("{c}");
    let exp = format!("{c:e}");
    if exp.len() < plain.len() {
        exp
    } else {
        plain
    }
}

pub fn serialize(p: &PauliSum) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    writeln!(out, "qubits {}", p.qubits()).unwrap();
    for (c, s) in p.terms() {
        writeln!(out, "{} {s}", format_coefficient(*c)).unwrap();
    }
    out
}

pub fn parse(text: &str) -> Result<PauliSum, ParseError> {
    let err = |line: usize, kind| ParseError { line, kind };
    let mut qubits: Option<usize> = None;
    let mut terms: Vec<(f64, PauliString)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.split_inclusive('\n').enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.strip_suffix('\n').unwrap_or(raw);
        let content = content.strip_suffix('\r').unwrap_or(content);
        if content.starts_with('#') || content.trim().is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let (first, second) = (fields.next(), fields.next());
        if fields.next().is_some() {
            return Err(err(line, ParseErrorKind::MalformedTerm));
        }
        let Some(n) = qubits else {
            match (first, second) {
                (Some("qubits"), Some(n)) => match n.parse::<usize>() {
                    Ok(n) if (1..=MAX_QUBITS).contains(&n) => qubits = Some(n),
                    _ => return Err(err(line, ParseErrorKind::BadQubitCount(n.to_string()))),
                },
                _ => return Err(err(line, ParseErrorKind::MissingQubits)),
            }
            continue;
        };
        let (Some(coef), Some(letters)) = (first, second) else {
            return Err(err(line, ParseErrorKind::MalformedTerm));
        };
        let c: f64 = match coef.parse() {
            Ok(c) if f64::is_finite(c) => c,
            _ => return Err(err(line, ParseErrorKind::BadCoefficient(coef.to_string()))),
        };
        let s: PauliString = letters.parse().map_err(|e| match e {
            PauliStringError::BadSymbol { position, symbol } => err(
                line,
                ParseErrorKind::BadSymbol { symbol, column: content.find(letters).unwrap_or(0) + position + 1 },
            ),
            PauliStringError::BadLength(found) => {
                err(line, ParseErrorKind::WrongLength { expected: n, found })
            }
        })?;
        if s.qubits() != n {
            return Err(err(line, ParseErrorKind::WrongLength { expected: n, found: s.qubits() }));
        }
        if !seen.insert(s) {
            return Err(err(line, ParseErrorKind::Duplicate(s.to_string())));
        }
        terms.push((c, s));
    }
    let Some(n) = qubits else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingQubits));
    };
    if !text.ends_with('\n') {
        return Err(err(last_line, ParseErrorKind::MissingNewline));
    }
    Ok(PauliSum::from_terms(n, terms, 0.0).expect("terms validated above"))
}
