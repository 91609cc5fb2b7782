//! Pauli-string expansions of Hermitian qubit operators.
//!
//! A Hermitian `h` on `n` qubits expands as `h = Σ_P c_P P` with
//! `c_P = Tr(P h) / 2^n`. For a fixed X-mask the trace over all Z-masks is a
//! Walsh–Hadamard transform, so the full decomposition costs `O(n 4^n)`
//! rather than `O(8^n)`; diagonal inputs only need the `x = 0` transform.

mod operator;
mod string;

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{arg_err, capacity_err, Error, Result};
use crate::linalg::{ComplexMatrix, HERMITIAN_TOL};

pub use operator::PauliOperator;
pub use string::{Pauli, PauliString, PauliStringError, MAX_QUBITS};

/// Default coefficient drop tolerance.
pub const DEFAULT_DROP_TOL: f64 = 1e-12;

/// Largest register decomposed from a general dense matrix.
pub const MAX_DENSE_DECOMPOSE_QUBITS: usize = 12;

/// Largest register decomposed from a diagonal.
pub const MAX_DIAGONAL_DECOMPOSE_QUBITS: usize = 24;

/// Tolerance on `‖ψ‖ - 1` accepted by [`PauliSum::expectation`].
pub const NORM_TOL: f64 = 1e-8;

/// Real-weighted sum of Pauli strings on a fixed register.
///
/// Terms are kept unique and in canonical order: descending `|c|`, ties broken
/// lexicographically by string.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    pub fn zero(qubits: usize) -> Self {
        Self { qubits, terms: Vec::new() }
    }

    /// Collects terms, merging duplicates and dropping `|c| <= drop_tol`.
    pub fn from_terms(
        qubits: usize,
        terms: impl IntoIterator<Item = (f64, PauliString)>,
        drop_tol: f64,
    ) -> Result<Self> {
        if qubits == 0 || qubits > MAX_QUBITS {
            return Err(arg_err!("qubit count must be in 1..={MAX_QUBITS}, got {qubits}"));
        }
        let mut merged: alloc::collections::BTreeMap<PauliString, f64> = Default::default();
        for (c, p) in terms {
            if p.qubits() != qubits {
                return Err(arg_err!(
                    "Pauli string {p} has {} letters, register has {qubits}",
                    p.qubits()
                ));
            }
            if !c.is_finite() {
                return Err(arg_err!("non-finite coefficient for {p}"));
            }
            *merged.entry(p).or_insert(0.0) += c;
        }
        let mut terms: Vec<(f64, PauliString)> = merged
            .into_iter()
            .filter(|(_, c)| c.abs() > drop_tol)
            .map(|(p, c)| (c, p))
            .collect();
        sort_canonical(&mut terms);
        Ok(Self { qubits, terms })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.iter().find(|(_, q)| q == p).map_or(0.0, |(c, _)| *c)
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.is_diagonal())
    }

    /// Adds `shift · I`.
    pub fn shifted(&self, shift: f64, drop_tol: f64) -> Self {
        let mut terms = self.terms.clone();
        terms.push((shift, PauliString::identity(self.qubits)));
        Self::from_terms(self.qubits, terms, drop_tol).expect("terms already validated")
    }

    /// Dense matrix `Σ c_P P`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = 1usize << self.qubits;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (c, p) in &self.terms {
            for b in 0..dim {
                let (phase, row) = p.apply_to_basis(b);
                m[(row, b)] += phase * *c;
            }
        }
        m
    }

    /// Diagonal of the operator when every term is built from `I`/`Z`.
    pub fn diagonal(&self) -> Option<Vec<f64>> {
        if !self.is_diagonal() {
            return None;
        }
        let mut d = vec![0.0; 1usize << self.qubits];
        for (c, p) in &self.terms {
            d[p.z_mask() as usize] += c;
        }
        walsh_hadamard(&mut d);
        Some(d)
    }

    /// `H|ψ>` computed term by term.
    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dimension(state.len())?;
        let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
        for (c, p) in &self.terms {
            for (b, &amp) in state.iter().enumerate() {
                let (phase, row) = p.apply_to_basis(b);
                out[row] += amp * phase * *c;
            }
        }
        Ok(out)
    }

    /// `⟨ψ|H|ψ⟩` without materializing the matrix.
    pub fn expectation(&self, state: &[Complex64]) -> Result<f64> {
        self.check_state(state)?;
        Ok(self.terms.iter().map(|(c, p)| c * string_expectation(p, state)).sum())
    }

    /// Shot-sampled estimate of `⟨ψ|H|ψ⟩`: each non-identity term is measured
    /// `shots` times in its eigenbasis, independently of the other terms.
    pub fn sampled_expectation<R: Rng + ?Sized>(
        &self,
        state: &[Complex64],
        shots: u64,
        rng: &mut R,
    ) -> Result<f64> {
        self.check_state(state)?;
        if shots == 0 {
            return Err(arg_err!("shots must be positive"));
        }
        let mut total = 0.0;
        for (c, p) in &self.terms {
            if p.is_identity() {
                total += c;
                continue;
            }
            let exact = string_expectation(p, state);
            let prob_plus = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
            let plus = Binomial::new(shots, prob_plus)
                .map_err(|e| arg_err!("binomial sampler: {e}"))?
                .sample(rng);
            total += c * (2.0 * plus as f64 / shots as f64 - 1.0);
        }
        Ok(total)
    }

    fn check_dimension(&self, len: usize) -> Result<()> {
        let dim = 1usize << self.qubits;
        if len != dim {
            return Err(Error::Dimension { expected: dim, found: len });
        }
        Ok(())
    }

    fn check_state(&self, state: &[Complex64]) -> Result<()> {
        self.check_dimension(state.len())?;
        let norm = crate::linalg::norm(state);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }
}

fn sort_canonical(terms: &mut [(f64, PauliString)]) {
    terms.sort_by(|(ca, pa), (cb, pb)| cb.abs().total_cmp(&ca.abs()).then_with(|| pa.cmp(pb)));
}

/// `⟨ψ|P|ψ⟩`, real for any Pauli string.
fn string_expectation(p: &PauliString, state: &[Complex64]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, &amp) in state.iter().enumerate() {
        if amp.re == 0.0 && amp.im == 0.0 {
            continue;
        }
        let (phase, row) = p.apply_to_basis(b);
        acc += state[row].conj() * phase * amp;
    }
    acc.re
}

/// In-place unnormalized Walsh–Hadamard transform:
/// `v[z] <- Σ_b (-1)^{popcount(b & z)} v[b]`.
pub(crate) fn walsh_hadamard<T>(v: &mut [T])
where
    T: Copy + core::ops::Add<Output = T> + core::ops::Sub<Output = T>,
{
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for i in start..start + h {
                let a = v[i];
                let b = v[i + h];
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

fn qubits_for_dimension(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(arg_err!("dimension {dim} is not a power of two >= 2"));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Pauli decomposition `c_P = Tr(P h) / 2^n` of a Hermitian matrix.
///
/// Diagonal inputs take the `{I, Z}` fast path. Terms with `|c_P| <= drop_tol`
/// are omitted.
pub fn decompose(h: &ComplexMatrix, drop_tol: f64) -> Result<PauliSum> {
    if !h.is_square() {
        return Err(arg_err!("matrix must be square, got {}x{}", h.rows(), h.cols()));
    }
    let n = qubits_for_dimension(h.rows())?;
    h.ensure_hermitian(HERMITIAN_TOL)?;
    if let Some(diag) = h.as_real_diagonal() {
        return decompose_diagonal(&diag, drop_tol);
    }
    if n > MAX_DENSE_DECOMPOSE_QUBITS {
        return Err(capacity_err!(
            "dense decomposition limited to {MAX_DENSE_DECOMPOSE_QUBITS} qubits, got {n}"
        ));
    }
    let dim = h.rows();
    let norm = 1.0 / dim as f64;
    let mut terms = Vec::new();
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    for x in 0..dim {
        for (b, slot) in v.iter_mut().enumerate() {
            *slot = h[(b, b ^ x)];
        }
        walsh_hadamard(&mut v);
        for (z, w) in v.iter().enumerate() {
            let p = PauliString::from_masks(n, x as u64, z as u64);
            let y = (x & z).count_ones();
            // Tr(P h) = i^{y} Σ_b (-1)^{|b & z|} h[b][b ^ x]
            let phase = match y % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            let c = phase * w * norm;
            terms.push((c.re, p));
        }
    }
    PauliSum::from_terms(n, terms, drop_tol)
}

/// Decomposition of a real diagonal operator into `{I, Z}` strings.
pub fn decompose_diagonal(diag: &[f64], drop_tol: f64) -> Result<PauliSum> {
    let n = qubits_for_dimension(diag.len())?;
    if n > MAX_DIAGONAL_DECOMPOSE_QUBITS {
        return Err(capacity_err!(
            "diagonal decomposition limited to {MAX_DIAGONAL_DECOMPOSE_QUBITS} qubits, got {n}"
        ));
    }
    let mut w = diag.to_vec();
    walsh_hadamard(&mut w);
    let norm = 1.0 / diag.len() as f64;
    let terms = w
        .into_iter()
        .enumerate()
        .map(|(z, c)| (c * norm, PauliString::from_masks(n, 0, z as u64)));
    PauliSum::from_terms(n, terms, drop_tol)
}
