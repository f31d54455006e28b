//! One-dimensional minimization: golden-section search with a final
//! parabolic polish.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarMinimum {
    pub x: f64,
    pub fx: f64,
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search on `[lo, hi]` until the bracket is narrower than
/// `tol`. Assumes `f` is unimodal on the bracket.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<ScalarMinimum> {
    // also rejects NaN
    let valid = lo < hi && tol > 0.0;
    if !valid {
        return Err(Error::InvalidArgument(format!("bad bracket [{lo}, {hi}] or tolerance {tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evaluations = 2;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    let (x, fx) = if fc < fd { (c, fc) } else { (d, fd) };
    Ok(ScalarMinimum { x, fx, evaluations })
}

/// Least-squares parabola through `f(x + k h)`, `k = -2..=2`. The vertex is
/// accepted only if it stays within the sampled window, inside `[lo, hi]`,
/// and improves on the best sampled value.
pub fn parabolic_refine<F: FnMut(f64) -> f64>(
    mut f: F,
    start: ScalarMinimum,
    h: f64,
    lo: f64,
    hi: f64,
) -> ScalarMinimum {
    let mut best = start;
    let mut evaluations = start.evaluations;
    let offsets = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let mut samples = [0.0; 5];
    for (s, &k) in samples.iter_mut().zip(&offsets) {
        let x = (start.x + k * h).clamp(lo, hi);
        *s = if k == 0.0 { start.fx } else { f(x) };
        if k != 0.0 {
            evaluations += 1;
        }
        if *s < best.fx {
            best = ScalarMinimum { x, fx: *s, evaluations };
        }
    }
    // symmetric abscissae: Σt = Σt³ = 0, Σt² = 10, Σt⁴ = 34
    let sum_y: f64 = samples.iter().sum();
    let sum_ty: f64 = samples.iter().zip(&offsets).map(|(y, t)| y * t).sum();
    let sum_t2y: f64 = samples.iter().zip(&offsets).map(|(y, t)| y * t * t).sum();
    let slope = sum_ty / 10.0;
    let curvature = (5.0 * sum_t2y - 10.0 * sum_y) / (5.0 * 34.0 - 100.0);
    if curvature > 0.0 {
        let t = -slope / (2.0 * curvature);
        if t.abs() <= 2.0 {
            let x = start.x + t * h;
            if x > lo && x < hi {
                let fx = f(x);
                evaluations += 1;
                if fx < best.fx {
                    best = ScalarMinimum { x, fx, evaluations };
                }
            }
        }
    }
    best.evaluations = evaluations;
    best
}
