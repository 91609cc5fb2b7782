use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

/// Longest Pauli string representable by the bitmask encoding.
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliStringError {
    #[error("invalid Pauli symbol '{symbol}' at position {position}")]
    BadSymbol { position: usize, symbol: char },
    #[error("Pauli string must have between 1 and {MAX_QUBITS} letters, got {0}")]
    BadLength(usize),
}

/// A tensor product of single-qubit Paulis.
///
/// Letter 0 acts on the leftmost (most significant) tensor slot. Internally
/// the string is a pair of X/Z bitmasks laid out like basis-state indices, so
/// qubit `q` maps to bit `qubits - 1 - q`, and `Y = i X Z` per qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(qubits: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&qubits), "unsupported qubit count {qubits}");
        Self { qubits, x: 0, z: 0 }
    }

    /// Builds a string from X and Z masks in basis-index bit order.
    pub fn from_masks(qubits: usize, x: u64, z: u64) -> Self {
        let mut s = Self::identity(qubits);
        let mask = if qubits == 64 { u64::MAX } else { (1u64 << qubits) - 1 };
        s.x = x & mask;
        s.z = z & mask;
        s
    }

    pub fn from_letters(letters: &[Pauli]) -> Result<Self, PauliStringError> {
        if letters.is_empty() || letters.len() > MAX_QUBITS {
            return Err(PauliStringError::BadLength(letters.len()));
        }
        let mut s = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            s.set(q, p);
        }
        Ok(s)
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.qubits
    }

    #[inline]
    pub fn x_mask(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    #[inline]
    fn bit(&self, q: usize) -> u64 {
        1u64 << (self.qubits - 1 - q)
    }

    pub fn letter(&self, q: usize) -> Pauli {
        let b = self.bit(q);
        match (self.x & b != 0, self.z & b != 0) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let b = self.bit(q);
        let (x, z) = p.bits();
        self.x = if x { self.x | b } else { self.x & !b };
        self.z = if z { self.z | b } else { self.z & !b };
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.qubits).map(move |q| self.letter(q))
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// True for strings made of `I` and `Z` only.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// `P|b> = phase |b'>`.
    #[inline]
    pub fn apply_to_basis(&self, b: usize) -> (Complex64, usize) {
        let b64 = b as u64;
        let sign = if (b64 & self.z).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        (i_pow(self.y_count()) * sign, (b64 ^ self.x) as usize)
    }

    /// `self · rhs = phase · product`.
    pub fn multiply(&self, rhs: &Self) -> (Complex64, Self) {
        assert_eq!(self.qubits, rhs.qubits, "Pauli strings of different lengths");
        let x = self.x ^ rhs.x;
        let z = self.z ^ rhs.z;
        // (i^{y1} X^{x1} Z^{z1}) (i^{y2} X^{x2} Z^{z2}) = i^{y1+y2} (-1)^{|z1 & x2|} X^x Z^z
        // and X^x Z^z = i^{-y} P(x, z).
        let y_out = (x & z).count_ones();
        let k = self.y_count() + rhs.y_count() + 2 * (self.z & rhs.x).count_ones() + 4 - y_out % 4;
        let product = Self { qubits: self.qubits, x, z };
        (i_pow(k), product)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }
}

#[inline]
fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl Ord for PauliString {
    /// Lexicographic over letters with `I < X < Y < Z`; shorter strings first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.qubits
            .cmp(&other.qubits)
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.letters() {
            fmt::Write::write_char(f, p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliStringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = s.chars().count();
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliStringError::BadLength(n));
        }
        let mut out = Self::identity(n);
        for (q, c) in s.chars().enumerate() {
            let p = Pauli::from_symbol(c).ok_or(PauliStringError::BadSymbol { position: q, symbol: c })?;
            out.set(q, p);
        }
        Ok(out)
    }
}

impl From<PauliString> for String {
    fn from(p: PauliString) -> String {
        alloc::format!("{p}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli_matrices, ComplexMatrix};
    use alloc::vec::Vec;

    fn dense(p: &PauliString) -> ComplexMatrix {
        let mats: Vec<ComplexMatrix> = p
            .letters()
            .map(|l| match l {
                Pauli::I => ComplexMatrix::identity(2),
                Pauli::X => pauli_matrices::x(),
                Pauli::Y => pauli_matrices::y(),
                Pauli::Z => pauli_matrices::z(),
            })
            .collect();
        let refs: Vec<&ComplexMatrix> = mats.iter().collect();
        crate::linalg::kron_chain(&refs).unwrap()
    }

    fn all_strings(n: usize) -> Vec<PauliString> {
        (0..1u64 << n)
            .flat_map(|x| (0..1u64 << n).map(move |z| PauliString::from_masks(n, x, z)))
            .collect()
    }

    #[test]
    fn display_round_trip() {
        let p: PauliString = "IXYZ".parse().unwrap();
        assert_eq!(alloc::format!("{p}"), "IXYZ");
        assert_eq!(p.letter(0), Pauli::I);
        assert_eq!(p.letter(3), Pauli::Z);
        assert_eq!(p.weight(), 3);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            "XQ".parse::<PauliString>(),
            Err(PauliStringError::BadSymbol { position: 1, symbol: 'Q' })
        );
        assert_eq!("".parse::<PauliString>(), Err(PauliStringError::BadLength(0)));
    }

    #[test]
    fn basis_action_matches_dense() {
        for p in all_strings(3) {
            let m = dense(&p);
            for b in 0..8 {
                let (phase, b2) = p.apply_to_basis(b);
                for r in 0..8 {
                    let want = if r == b2 { phase } else { Complex64::new(0.0, 0.0) };
                    assert_eq!(m[(r, b)], want, "{p} b={b}");
                }
            }
        }
    }

    #[test]
    fn product_matches_dense() {
        let strings = all_strings(2);
        for a in &strings {
            for b in &strings {
                let (phase, c) = a.multiply(b);
                let lhs = &dense(a) * &dense(b);
                let rhs = dense(&c).scale(phase);
                assert!(lhs.max_abs_diff(&rhs) < 1e-15, "{a} * {b}");
                assert_eq!(a.commutes_with(b), lhs.max_abs_diff(&(&dense(b) * &dense(a))) < 1e-15);
            }
        }
    }

    #[test]
    fn orthogonality_of_trace_inner_product() {
        for n in 1..=3 {
            let strings = all_strings(n);
            let dim = (1usize << n) as f64;
            for a in &strings {
                let da = dense(a).adjoint();
                for b in &strings {
                    let tr = (&da * &dense(b)).trace();
                    let want = if a == b { dim } else { 0.0 };
                    assert!((tr - Complex64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn lexicographic_order() {
        let mut v: Vec<PauliString> = ["ZI", "IX", "XY", "II", "YZ"].iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        let s: Vec<String> = v.into_iter().map(String::from).collect();
        assert_eq!(s, ["II", "IX", "XY", "YZ", "ZI"]);
    }
}
