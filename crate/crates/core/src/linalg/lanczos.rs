//! Lanczos iteration with full reorthogonalization, used for the ground energy
//! of operators that are only available through a matrix-vector product.

use alloc::vec::Vec;

#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hermitian_eigenvalues, inner, norm, ComplexMatrix};
use crate::error::{arg_err, Result};

#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    pub max_krylov: usize,
    /// Stop when the lowest Ritz value moves by less than this between checks.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_krylov: 300,
            tolerance: 1e-13,
            seed: 0x5eed,
        }
    }
}

/// Lowest eigenvalue of the Hermitian operator `apply` acting on `dim`-dimensional vectors.
pub fn lowest_eigenvalue<F>(dim: usize, mut apply: F, opts: LanczosOptions) -> Result<f64>
where
    F: FnMut(&[Complex64]) -> Vec<Complex64>,
{
    if dim == 0 {
        return Err(arg_err!("operator dimension must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut q: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let n0 = norm(&q);
    q.iter_mut().for_each(|z| *z /= n0);

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut previous = f64::INFINITY;
    let limit = opts.max_krylov.min(dim);

    for k in 0..limit {
        let mut w = apply(&q);
        let alpha = inner(&q, &w).re;
        basis.push(q);
        alphas.push(alpha);
        // Full reorthogonalization (twice is enough).
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(b, &w);
                w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= proj * bi);
            }
        }
        let beta = norm(&w);
        let invariant = beta <= 1e-12 * alpha.abs().max(1.0);
        let last = k + 1 == limit;
        if invariant || last || (k + 1) % 5 == 0 {
            let ritz = lowest_ritz(&alphas, &betas)?;
            if invariant || last || (ritz - previous).abs() <= opts.tolerance * ritz.abs().max(1.0) {
                return Ok(ritz);
            }
            previous = ritz;
        }
        betas.push(beta);
        q = w.into_iter().map(|z| z / beta).collect();
    }
    unreachable!("loop always returns on its last iteration")
}

fn lowest_ritz(alphas: &[f64], betas: &[f64]) -> Result<f64> {
    let k = alphas.len();
    let mut t = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = Complex64::new(alphas[i], 0.0);
        if i + 1 < k {
            t[(i, i + 1)] = Complex64::new(betas[i], 0.0);
            t[(i + 1, i)] = Complex64::new(betas[i], 0.0);
        }
    }
    Ok(hermitian_eigenvalues(&t)?[0])
}
