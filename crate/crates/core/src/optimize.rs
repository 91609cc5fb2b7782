//! Unconstrained minimizers used by the variational solver.
//!
//! [`Optimizer::LinearApprox`] is a derivative-free trust-region method in the
//! spirit of COBYLA without constraints: a linear model interpolated on a
//! simplex of `n + 1` points drives steps of length `ρ`, and `ρ` halves
//! whenever a step fails. It stops once `ρ` or the model's predicted decrease
//! over a full step drops below the tolerance. [`Optimizer::QuadraticModel`]
//! is quasi-Newton (BFGS) on central finite-difference gradients with a
//! backtracking line search.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use crate::error::{arg_err, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Optimizer {
    #[default]
    LinearApprox,
    QuadraticModel,
}

impl Optimizer {
    pub fn name(self) -> &'static str {
        match self {
            Optimizer::LinearApprox => "linear",
            Optimizer::QuadraticModel => "quadratic",
        }
    }
}

impl fmt::Display for Optimizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Optimizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "linear-approx" | "cobyla" => Ok(Optimizer::LinearApprox),
            "quadratic" | "quadratic-model" | "slsqp" | "bfgs" => Ok(Optimizer::QuadraticModel),
            _ => Err(arg_err!("unknown optimizer '{s}' (expected 'linear' or 'quadratic')")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    pub optimizer: Optimizer,
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Starting trust radius of the linear method.
    pub initial_radius: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            optimizer: Optimizer::LinearApprox,
            max_iterations: 500,
            tolerance: 1e-8,
            initial_radius: 0.5,
        }
    }
}

impl MinimizeOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(arg_err!("tolerance must be positive, got {}", self.tolerance));
        }
        if self.max_iterations == 0 {
            return Err(arg_err!("max_iterations must be at least 1"));
        }
        if !(self.initial_radius > 0.0) {
            return Err(arg_err!("initial radius must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    /// `(iteration, best value so far)`, one entry per accepted iterate,
    /// starting with the initial point at iteration 0.
    pub trace: Vec<(usize, f64)>,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Counts evaluations and remembers the best point seen; ties keep the
/// earlier point.
struct Tracker<'a, F> {
    f: &'a mut F,
    evaluations: usize,
    best_x: Vec<f64>,
    best: f64,
    trace: Vec<(usize, f64)>,
}

impl<'a, F: FnMut(&[f64]) -> f64> Tracker<'a, F> {
    fn new(f: &'a mut F, x0: &[f64]) -> Self {
        let v = f(x0);
        Self {
            f,
            evaluations: 1,
            best_x: x0.to_vec(),
            best: v,
            trace: vec![(0, v)],
        }
    }

    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v < self.best {
            self.best = v;
            self.best_x = x.to_vec();
        }
        v
    }

    fn accept(&mut self, iteration: usize) {
        self.trace.push((iteration, self.best));
    }

    fn finish(mut self, iterations: usize, converged: bool) -> Minimum {
        // Probe evaluations after the last accepted step may still have improved.
        let last = *self.trace.last().expect("trace starts non-empty");
        if self.best < last.1 {
            if last.0 == iterations {
                self.trace.pop();
            }
            self.trace.push((iterations, self.best));
        }
        Minimum {
            x: self.best_x,
            value: self.best,
            trace: self.trace,
            iterations,
            evaluations: self.evaluations,
            converged,
        }
    }
}

/// Minimizes `f` from `x0`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: &MinimizeOptions) -> Result<Minimum> {
    opts.validate()?;
    if x0.is_empty() {
        return Err(arg_err!("cannot minimize over zero parameters"));
    }
    Ok(match opts.optimizer {
        Optimizer::LinearApprox => linear_approx(&mut f, x0, opts),
        Optimizer::QuadraticModel => quadratic_model(&mut f, x0, opts),
    })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Solves `a x = b` for square `a` (row-major) by partial pivoting.
fn solve(mut a: Vec<f64>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))?;
        if a[piv * n + col].abs() <= 1e-13 * scale {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        for r in col + 1..n {
            let factor = a[r * n + col] / a[col * n + col];
            for k in col..n {
                a[r * n + k] -= factor * a[col * n + k];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r * n + k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r * n + r];
    }
    Some(x)
}

fn coordinate_simplex<F: FnMut(&[f64]) -> f64>(
    t: &mut Tracker<'_, F>,
    center: &[f64],
    f_center: f64,
    rho: f64,
) -> Vec<(Vec<f64>, f64)> {
    let mut simplex = vec![(center.to_vec(), f_center)];
    for i in 0..center.len() {
        let mut x = center.to_vec();
        x[i] += rho;
        let v = t.eval(&x);
        simplex.push((x, v));
    }
    simplex
}

fn best_vertex(simplex: &[(Vec<f64>, f64)]) -> usize {
    // First index wins ties, which keeps the earlier iterate.
    let mut b = 0;
    for (i, (_, v)) in simplex.iter().enumerate() {
        if *v < simplex[b].1 {
            b = i;
        }
    }
    b
}

fn linear_approx<F: FnMut(&[f64]) -> f64>(f: &mut F, x0: &[f64], opts: &MinimizeOptions) -> Minimum {
    let n = x0.len();
    let mut t = Tracker::new(f, x0);
    let mut rho = opts.initial_radius;
    let rho_max = 4.0 * opts.initial_radius;
    let f0 = t.best;
    let mut simplex = coordinate_simplex(&mut t, x0, f0, rho);
    let mut iterations = 0;

    while rho >= opts.tolerance {
        if iterations >= opts.max_iterations {
            return t.finish(iterations, false);
        }
        iterations += 1;
        let b = best_vertex(&simplex);
        let (xb, fb) = simplex[b].clone();

        // Linear interpolation through the simplex: (x_i - x_b)·g = f_i - f_b.
        let mut rows = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n);
        for (i, (x, v)) in simplex.iter().enumerate() {
            if i != b {
                rows.extend(x.iter().zip(&xb).map(|(a, c)| a - c));
                rhs.push(v - fb);
            }
        }
        let g = match solve(rows, rhs) {
            Some(g) if norm(&g) > 0.0 && g.iter().all(|v| v.is_finite()) => g,
            _ => {
                rho *= 0.5;
                simplex = coordinate_simplex(&mut t, &xb, fb, rho);
                continue;
            }
        };
        let gn = norm(&g);
        if rho * gn < opts.tolerance {
            // Even a full trust-radius step is predicted to change f by less than the tolerance.
            break;
        }
        let trial: Vec<f64> = xb.iter().zip(&g).map(|(x, gi)| x - rho * gi / gn).collect();
        let ft = t.eval(&trial);

        if ft < fb {
            let predicted = rho * gn;
            if (fb - ft) >= 0.9 * predicted {
                rho = (2.0 * rho).min(rho_max);
            }
            // Replace the vertex farthest from the new point.
            let far = (0..simplex.len())
                .max_by(|&i, &j| dist(&simplex[i].0, &trial).total_cmp(&dist(&simplex[j].0, &trial)))
                .expect("simplex is non-empty");
            simplex[far] = (trial, ft);
            t.accept(iterations);
        } else {
            rho *= 0.5;
            simplex = coordinate_simplex(&mut t, &xb, fb, rho);
        }
    }
    t.finish(iterations, true)
}

fn central_gradient<F: FnMut(&[f64]) -> f64>(t: &mut Tracker<'_, F>, x: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        let h = 1e-5 * x[i].abs().max(1.0);
        probe[i] = x[i] + h;
        let up = t.eval(&probe);
        probe[i] = x[i] - h;
        let down = t.eval(&probe);
        probe[i] = x[i];
        g[i] = (up - down) / (2.0 * h);
    }
    g
}

fn quadratic_model<F: FnMut(&[f64]) -> f64>(f: &mut F, x0: &[f64], opts: &MinimizeOptions) -> Minimum {
    let n = x0.len();
    let mut t = Tracker::new(f, x0);
    let mut x = x0.to_vec();
    let mut fx = t.best;
    let mut g = central_gradient(&mut t, &x);
    let identity = |n: usize| {
        let mut h = vec![0.0; n * n];
        for i in 0..n {
            h[i * n + i] = 1.0;
        }
        h
    };
    // Inverse Hessian estimate.
    let mut hinv = identity(n);
    let mut iterations = 0;
    let mut fresh = true;

    loop {
        if norm(&g) < opts.tolerance {
            return t.finish(iterations, true);
        }
        if iterations >= opts.max_iterations {
            return t.finish(iterations, false);
        }
        iterations += 1;

        let mut d: Vec<f64> = (0..n).map(|i| -(0..n).map(|j| hinv[i * n + j] * g[j]).sum::<f64>()).collect();
        let mut slope: f64 = d.iter().zip(&g).map(|(a, b)| a * b).sum();
        if slope >= 0.0 {
            hinv = identity(n);
            d = g.iter().map(|v| -v).collect();
            slope = -norm(&g).powi(2);
        }

        // Armijo backtracking.
        let mut alpha = 1.0;
        let accepted = loop {
            let step_norm = alpha * norm(&d);
            if step_norm < opts.tolerance {
                break None;
            }
            let trial: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + alpha * b).collect();
            let ft = t.eval(&trial);
            if ft <= fx + 1e-4 * alpha * slope && ft < fx {
                break Some((trial, ft));
            }
            alpha *= 0.5;
        };

        let Some((x_new, f_new)) = accepted else {
            if fresh {
                return t.finish(iterations, true);
            }
            // Retry once along steepest descent before declaring the step size exhausted.
            hinv = identity(n);
            fresh = true;
            continue;
        };
        fresh = false;
        let g_new = central_gradient(&mut t, &x_new);
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-12 * norm(&s) * norm(&y) {
            let hy: Vec<f64> = (0..n).map(|i| (0..n).map(|j| hinv[i * n + j] * y[j]).sum()).collect();
            let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
            let rho = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    hinv[i * n + j] += (1.0 + yhy * rho) * rho * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
                }
            }
        }
        x = x_new;
        fx = f_new;
        g = g_new;
        t.accept(iterations);
    }
}
