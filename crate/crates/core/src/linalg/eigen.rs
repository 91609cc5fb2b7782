//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use alloc::vec::Vec;

#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use num_complex::Complex64;

use super::{ComplexMatrix, HERMITIAN_TOL};
use crate::error::Result;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order; `vectors` holds the matching eigenvectors
/// as columns when requested.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Option<ComplexMatrix>,
}

impl Eigen {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Option<Vec<Complex64>> {
        let v = self.vectors.as_ref()?;
        Some((0..v.rows()).map(|r| v[(r, k)]).collect())
    }
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m, false).map(|e| e.values)
}

/// Diagonalizes a Hermitian matrix.
///
/// Input is rejected when `max |M - M^H|` exceeds [`HERMITIAN_TOL`].
pub fn hermitian_eigen(m: &ComplexMatrix, with_vectors: bool) -> Result<Eigen> {
    m.ensure_hermitian(HERMITIAN_TOL)?;
    let n = m.rows();
    // Symmetrize so rounding in the input does not leak into the rotations.
    let mut a = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            a[(r, c)] = (m[(r, c)] + m[(c, r)].conj()) * 0.5;
        }
    }
    let mut v = with_vectors.then(|| ComplexMatrix::identity(n));

    let scale = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale > 0.0 {
        let mut last_off = f64::INFINITY;
        for _ in 0..MAX_SWEEPS {
            let off = off_diagonal_norm(&a);
            if off <= 1e-15 * scale || off >= last_off {
                break;
            }
            last_off = off;
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, v.as_mut(), p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.map(|v| {
        let mut sorted = ComplexMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, dst)] = v[(r, src)];
            }
        }
        sorted
    });
    Ok(Eigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`.
///
/// With `a[p][q] = r e^{iφ}` the rotation is `J = diag(1, e^{-iφ}) · R(c, s)`
/// restricted to the (p, q) plane, and `a <- J^H a J`.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();

    let n = a.rows();
    // Columns: a <- a J.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * pc * s;
        a[(k, q)] = akp * s + akq * pc * c;
    }
    // Rows: a <- J^H a.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * pc * s;
            v[(k, q)] = vkp * s + vkq * pc * c;
        }
    }
}
