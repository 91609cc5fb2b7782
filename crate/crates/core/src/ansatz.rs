//! Parameterized statevectors for the variational solver.
//!
//! Qubit `q` is tensor slot `q` from the left, which is bit `n - 1 - q` of a
//! basis index, the same convention as [`crate::pauli::PauliString`].

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;
use num_complex::Complex64;

use crate::error::{arg_err, capacity_err, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};

/// Largest register the statevector simulator will allocate.
pub const MAX_STATEVECTOR_QUBITS: usize = 12;

/// A map from real parameters to a normalized statevector.
pub trait Ansatz {
    fn qubits(&self) -> usize;
    fn parameter_count(&self) -> usize;
    fn state(&self, parameters: &[f64]) -> Result<Vec<Complex64>>;
}

pub fn zero_state(qubits: usize) -> Vec<Complex64> {
    let mut s = vec![Complex64::new(0.0, 0.0); 1 << qubits];
    s[0] = Complex64::new(1.0, 0.0);
    s
}

#[inline]
fn mask(qubits: usize, q: usize) -> usize {
    1 << (qubits - 1 - q)
}

/// `RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]` on qubit `q`.
pub fn apply_ry(state: &mut [Complex64], qubits: usize, q: usize, theta: f64) {
    let (s, c) = (0.5 * theta).sin_cos();
    let m = mask(qubits, q);
    for b in 0..state.len() {
        if b & m == 0 {
            let (a0, a1) = (state[b], state[b | m]);
            state[b] = a0 * c - a1 * s;
            state[b | m] = a0 * s + a1 * c;
        }
    }
}

/// Controlled-Z between qubits `a` and `b`.
pub fn apply_cz(state: &mut [Complex64], qubits: usize, a: usize, b: usize) {
    let m = mask(qubits, a) | mask(qubits, b);
    for (i, amp) in state.iter_mut().enumerate() {
        if i & m == m {
            *amp = -*amp;
        }
    }
}

fn check_register(qubits: usize) -> Result<()> {
    if qubits == 0 {
        return Err(arg_err!("an ansatz needs at least one qubit"));
    }
    if qubits > MAX_STATEVECTOR_QUBITS {
        return Err(capacity_err!(
            "statevector limited to {MAX_STATEVECTOR_QUBITS} qubits, got {qubits}"
        ));
    }
    Ok(())
}

/// Layers of single-qubit Y rotations separated by a linear chain of
/// controlled-Z gates. Amplitudes stay real.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HardwareEfficient {
    qubits: usize,
    depth: usize,
}

impl HardwareEfficient {
    pub fn new(qubits: usize, depth: usize) -> Result<Self> {
        check_register(qubits)?;
        Ok(Self { qubits, depth })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

impl Ansatz for HardwareEfficient {
    fn qubits(&self) -> usize {
        self.qubits
    }

    fn parameter_count(&self) -> usize {
        self.qubits * (self.depth + 1)
    }

    fn state(&self, parameters: &[f64]) -> Result<Vec<Complex64>> {
        if parameters.len() != self.parameter_count() {
            return Err(arg_err!(
                "ansatz expects {} parameters, got {}",
                self.parameter_count(),
                parameters.len()
            ));
        }
        let n = self.qubits;
        let mut state = zero_state(n);
        for (layer, angles) in parameters.chunks(n).enumerate() {
            if layer > 0 {
                for q in 0..n - 1 {
                    apply_cz(&mut state, n, q, q + 1);
                }
            }
            for (q, &theta) in angles.iter().enumerate() {
                apply_ry(&mut state, n, q, theta);
            }
        }
        Ok(state)
    }
}

/// Statevector of the hardware-efficient ansatz.
pub fn ansatz_state(parameters: &[f64], qubits: usize, depth: usize) -> Result<Vec<Complex64>> {
    HardwareEfficient::new(qubits, depth)?.state(parameters)
}

/// Slater determinants of `particles` fermions in `modes` orbitals, one mode
/// per qubit under the Jordan–Wigner encoding.
///
/// The `modes²` parameters fill a Hermitian generator `K` (diagonal, then real
/// and imaginary parts of the upper triangle row by row); the first
/// `particles` columns of `exp(iK)` are the occupied orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitalRotation {
    modes: usize,
    particles: usize,
}

impl OrbitalRotation {
    pub fn new(modes: usize, particles: usize) -> Result<Self> {
        check_register(modes)?;
        if particles > modes {
            return Err(arg_err!("{particles} particles do not fit in {modes} modes"));
        }
        Ok(Self { modes, particles })
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    /// `exp(iK)` for the generator encoded in `parameters`.
    pub fn unitary(&self, parameters: &[f64]) -> Result<ComplexMatrix> {
        let n = self.modes;
        if parameters.len() != n * n {
            return Err(arg_err!("orbital rotation expects {} parameters, got {}", n * n, parameters.len()));
        }
        let mut k = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            k[(i, i)] = Complex64::new(parameters[i], 0.0);
        }
        let mut idx = n;
        for i in 0..n {
            for j in i + 1..n {
                let z = Complex64::new(parameters[idx], parameters[idx + 1]);
                idx += 2;
                k[(i, j)] = z;
                k[(j, i)] = z.conj();
            }
        }
        let eig = hermitian_eigen(&k, true)?;
        let v = eig.vectors.expect("vectors requested");
        let mut u = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (m, &lambda) in eig.values.iter().enumerate() {
                    acc += v[(r, m)] * Complex64::from_polar(1.0, lambda) * v[(c, m)].conj();
                }
                u[(r, c)] = acc;
            }
        }
        Ok(u)
    }
}

/// `c†_j` (0-based mode) applied to a statevector; occupied is `|1⟩` and the
/// sign counts occupied modes to the left.
pub fn apply_creation(state: &[Complex64], modes: usize, j: usize) -> Vec<Complex64> {
    let m = mask(modes, j);
    let left = !((m << 1) - 1) & ((1 << modes) - 1);
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    for (b, &amp) in state.iter().enumerate() {
        if b & m == 0 && (amp.re != 0.0 || amp.im != 0.0) {
            let sign = if (b & left).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            out[b | m] += amp * sign;
        }
    }
    out
}

impl Ansatz for OrbitalRotation {
    fn qubits(&self) -> usize {
        self.modes
    }

    fn parameter_count(&self) -> usize {
        self.modes * self.modes
    }

    fn state(&self, parameters: &[f64]) -> Result<Vec<Complex64>> {
        let u = self.unitary(parameters)?;
        let n = self.modes;
        let mut state = vec![Complex64::new(0.0, 0.0); 1 << n];
        state[0] = Complex64::new(1.0, 0.0);
        for k in 0..self.particles {
            let mut next = vec![Complex64::new(0.0, 0.0); 1 << n];
            for j in 0..n {
                let coeff = u[(j, k)];
                if coeff.norm() == 0.0 {
                    continue;
                }
                for (o, c) in next.iter_mut().zip(apply_creation(&state, n, j)) {
                    *o += coeff * c;
                }
            }
            state = next;
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;
    use crate::operators::fermion_raise_pauli;
    use crate::pauli::PauliSum;
    use core::f64::consts::PI;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_parameters_give_all_zeros_state() {
        for n in 1..=4 {
            for depth in 0..=2 {
                let s = ansatz_state(&vec![0.0; n * (depth + 1)], n, depth).unwrap();
                assert_eq!(s, zero_state(n));
            }
        }
    }

    #[test]
    fn pi_rotation_flips() {
        let s = ansatz_state(&[PI], 1, 0).unwrap();
        let z = PauliSum::from_terms(1, [(1.0, "Z".parse().unwrap())], 0.0).unwrap();
        assert!((z.expectation(&s).unwrap() + 1.0).abs() < 1e-15);
        assert!((s[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn states_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p: Vec<f64> = (0..4).map(|_| rng.random_range(-PI..PI) * 2.0).collect();
            assert!((norm(&ansatz_state(&p, 2, 1).unwrap()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parameter_count_is_checked() {
        assert!(ansatz_state(&[0.0; 3], 2, 1).is_err());
        assert!(HardwareEfficient::new(13, 1).is_err());
        assert!(HardwareEfficient::new(0, 1).is_err());
    }

    #[test]
    fn rotations_are_4pi_periodic() {
        let a = ansatz_state(&[0.3, -1.1, 0.7, 2.0], 2, 1).unwrap();
        let b = ansatz_state(&[0.3 + 4.0 * PI, -1.1, 0.7, 2.0 - 4.0 * PI], 2, 1).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn entangler_reaches_bell_like_states() {
        // RY(π/2) on both, CZ, then RY(π/2) on the second qubit gives (|01⟩ + |10⟩)/√2.
        let s = ansatz_state(&[PI / 2.0, PI / 2.0, 0.0, PI / 2.0], 2, 1).unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        for (got, want) in s.iter().zip([0.0, r, r, 0.0]) {
            assert!((got.re - want).abs() < 1e-12 && got.im.abs() < 1e-15);
        }
    }

    #[test]
    fn creation_matches_pauli_form() {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let state: Vec<Complex64> = (0..8).map(|_| Complex64::new(rng.random(), rng.random())).collect();
        for j in 0..n {
            let dense = fermion_raise_pauli(j + 1, n).unwrap().to_matrix();
            let want = dense.matvec(&state).unwrap();
            for (a, b) in apply_creation(&state, n, j).iter().zip(&want) {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn orbital_rotation_states() {
        let a = OrbitalRotation::new(4, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
        let u = a.unitary(&p).unwrap();
        assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        let s = a.state(&p).unwrap();
        assert!((norm(&s) - 1.0).abs() < 1e-12);
        for (b, amp) in s.iter().enumerate() {
            if b.count_ones() != 2 {
                assert!(amp.norm() < 1e-14);
            }
        }
        // Zero generator fills the leftmost modes.
        let s0 = a.state(&[0.0; 16]).unwrap();
        assert!((s0[0b1100].norm() - 1.0).abs() < 1e-14);
        assert!(OrbitalRotation::new(2, 3).is_err());
    }
}
