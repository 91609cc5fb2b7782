//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

#[allow(unused_imports)] // only needed when std is absent from the build
use num_traits::Float;

use crate::error::{arg_err, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 10_000;

/// Kronrod estimate and |Kronrod − Gauss| on `[a, b]`.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `∫_a^b f` to absolute tolerance `tol`, bisecting the interval with the
/// largest error estimate until the summed estimate is below `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(arg_err!("integration limits must be finite"));
    }
    if !(tol > 0.0) {
        return Err(arg_err!("tolerance must be positive"));
    }
    let (value, error) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total_err = error;
    loop {
        if !total_err.is_finite() {
            return Err(arg_err!("integrand is not finite on [{a}, {b}]"));
        }
        if total_err <= tol {
            break;
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(arg_err!(
                "quadrature did not reach {tol:e} within {MAX_INTERVALS} subintervals (estimate {total_err:e})"
            ));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk15(&mut f, worst.a, mid);
        let (rv, re) = gk15(&mut f, mid, worst.b);
        total_err += le + re - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Piece { a: mid, b: worst.b, value: rv, error: re });
    }
    // Re-sum to shed the drift of the running updates.
    Ok(heap.iter().map(|p| p.value).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        // 15-point Kronrod integrates degree 22 exactly.
        let v = integrate(|x| x.powi(10) - 3.0 * x.powi(3) + 1.0, -1.0, 2.0, 1e-12).unwrap();
        let exact = (2f64.powi(11) + 1.0) / 11.0 - 3.0 * (16.0 - 1.0) / 4.0 + 3.0;
        assert!((v - exact).abs() < 1e-11);
    }

    #[test]
    fn smooth_and_kinked_integrands() {
        assert!((integrate(f64::sin, 0.0, PI, 1e-12).unwrap() - 2.0).abs() < 1e-12);
        assert!((integrate(f64::exp, 0.0, 1.0, 1e-12).unwrap() - (1f64.exp() - 1.0)).abs() < 1e-12);
        assert!((integrate(|x| x.abs(), -1.0, 3.0, 1e-10).unwrap() - 5.0).abs() < 1e-10);
        assert!((integrate(|x| x.sqrt(), 0.0, 1.0, 1e-10).unwrap() - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(integrate(|x| x, 0.0, f64::INFINITY, 1e-10).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(integrate(|x| 1.0 / (x * x), 0.0, 1.0, 1e-10).is_err());
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, 1e-10).is_err());
    }
}
