use num_complex::Complex64;

use super::clebsch::log_factorial;
use super::{EulerAngles, HalfInt, MAX_SHELL};
use crate::error::{Error, Result};

/// `d^{l0}_{mp,m}(β)` where `l0 = max(|mp|, |m|)`: one of the edge rows or
/// columns, all reducible to `d^{l0}_{x,l0} = C(2l0, l0+x)^{1/2} cos^{l0+x}(β/2) sin^{l0-x}(β/2)`.
fn edge_value(l0: i32, mp: i32, m: i32, half_cos: f64, half_sin: f64) -> f64 {
    // doubled units throughout
    let column = |x: i32| -> f64 {
        let up = ((l0 + x) / 2) as usize;
        let down = ((l0 - x) / 2) as usize;
        let binom = 0.5 * (log_factorial(l0 as usize) - log_factorial(up) - log_factorial(down));
        binom.exp() * half_cos.powi(up as i32) * half_sin.powi(down as i32)
    };
    let sign = |k: i32| if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    if m == l0 {
        column(mp)
    } else if mp == -l0 {
        column(-m)
    } else if mp == l0 {
        sign(l0 - m) * column(m)
    } else {
        // m == -l0: d_{mp,-l0} = d_{l0,-mp} = (-1)^{l0+mp} d_{-mp,l0}
        sign(l0 + mp) * column(-mp)
    }
}

/// Upward recursion in `l` at fixed `(mp, m)`. `emit(l_twice, value)` is called
/// for every `l` from `max(|mp|,|m|)` to `l_max` (doubled units, step 2).
fn recurse_in_l(l_max: i32, mp: i32, m: i32, beta: f64, mut emit: impl FnMut(i32, f64)) {
    let l0 = mp.abs().max(m.abs());
    if l_max < l0 {
        return;
    }
    let (half_sin, half_cos) = (0.5 * beta).sin_cos();
    let x = beta.cos();
    let (mpf, mf) = (f64::from(mp) / 2.0, f64::from(m) / 2.0);
    let mut prev = 0.0;
    let mut cur = edge_value(l0, mp, m, half_cos, half_sin);
    emit(l0, cur);
    let mut l = l0;
    while l < l_max {
        l += 2;
        let jf = f64::from(l) / 2.0;
        let next = if l == 2 {
            // from l = 0, only mp = m = 0 is possible: d^1_00 = cos β
            x * cur
        } else {
            let jm = jf - 1.0;
            let lower = ((jm * jm - mf * mf) * (jm * jm - mpf * mpf)).max(0.0).sqrt();
            let upper = ((jf * jf - mf * mf) * (jf * jf - mpf * mpf)).sqrt();
            ((2.0 * jf - 1.0) * (jf * jm * x - mf * mpf) * cur - jf * lower * prev) / (jm * upper)
        };
        prev = cur;
        cur = next;
        emit(l, cur);
    }
}

fn check_l(l: HalfInt) -> Result<()> {
    if l.twice() < 0 || l.twice() > 2 * MAX_SHELL as i32 {
        return Err(Error::Domain(format!("angular momentum {l} out of range")));
    }
    Ok(())
}

/// Wigner small-d element `d^l_{mp,m}(β) = <l mp| exp(-i β J_y) |l m>`.
pub fn wigner_small_d(l: HalfInt, mp: HalfInt, m: HalfInt, beta: f64) -> Result<f64> {
    check_l(l)?;
    mp.check_projection(l)?;
    m.check_projection(l)?;
    let mut out = 0.0;
    recurse_in_l(l.twice(), mp.twice(), m.twice(), beta, |lt, v| {
        if lt == l.twice() {
            out = v;
        }
    });
    Ok(out)
}

/// Wigner D element `D^l_{mp,m}(ψθφ) = exp(-i mp ψ) d^l_{mp,m}(θ) exp(-i m φ)`.
pub fn wigner_d(l: HalfInt, mp: HalfInt, m: HalfInt, angles: &EulerAngles) -> Result<Complex64> {
    let d = wigner_small_d(l, mp, m, angles.theta)?;
    let phase = -(mp.value() * angles.psi + m.value() * angles.phi);
    Ok(Complex64::from_polar(d, phase))
}

/// The full `(2l+1) x (2l+1)` matrix `d^l(β)`, rows and columns indexed by
/// `i = m + l` (ascending `m`).
#[derive(Clone, Debug, PartialEq)]
pub struct SmallDMatrix {
    l: HalfInt,
    dim: usize,
    data: Vec<f64>,
}

impl SmallDMatrix {
    pub fn new(l: HalfInt, beta: f64) -> Result<Self> {
        check_l(l)?;
        let lt = l.twice();
        let dim = lt as usize + 1;
        let mut data = vec![0.0; dim * dim];
        for r in 0..dim {
            let mp = 2 * r as i32 - lt;
            for c in 0..dim {
                let m = 2 * c as i32 - lt;
                recurse_in_l(lt, mp, m, beta, |level, v| {
                    if level == lt {
                        data[r * dim + c] = v;
                    }
                });
            }
        }
        Ok(Self { l, dim, data })
    }

    pub fn l(&self) -> HalfInt {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Element at offsets `(mp + l, m + l)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// `d^l(β)` for every integer `l = 0 ..= l_max` at one angle `β`.
#[derive(Clone, Debug)]
pub struct SmallDTable {
    l_max: usize,
    blocks: Vec<Vec<f64>>,
}

impl SmallDTable {
    pub fn new(l_max: usize, beta: f64) -> Result<Self> {
        check_l(HalfInt::integer(l_max as i32))?;
        let mut blocks: Vec<Vec<f64>> = (0..=l_max).map(|l| vec![0.0; (2 * l + 1).pow(2)]).collect();
        let lm = l_max as i32;
        for mp in -lm..=lm {
            for m in -lm..=lm {
                recurse_in_l(2 * lm, 2 * mp, 2 * m, beta, |lt, v| {
                    let l = (lt / 2) as usize;
                    let dim = 2 * l + 1;
                    let r = (mp + l as i32) as usize;
                    let c = (m + l as i32) as usize;
                    blocks[l][r * dim + c] = v;
                });
            }
        }
        Ok(Self { l_max, blocks })
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// `d^l_{mp,m}` for integer projections.
    #[inline]
    pub fn get(&self, l: usize, mp: i32, m: i32) -> f64 {
        let dim = 2 * l + 1;
        let r = (mp + l as i32) as usize;
        let c = (m + l as i32) as usize;
        self.blocks[l][r * dim + c]
    }

    /// Row-major block for `l`, indexed by `(mp + l, m + l)`.
    pub fn block(&self, l: usize) -> &[f64] {
        &self.blocks[l]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn top_element_is_half_angle_power() {
        for twice_j in 1..12 {
            let j = h(twice_j);
            let beta = 1.234;
            let got = wigner_small_d(j, j, j, beta).unwrap();
            let want = (0.5 * beta).cos().powi(twice_j);
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_zero_is_legendre() {
        let x = 0.37f64.cos();
        let mut p = vec![1.0, x];
        for l in 2..=30 {
            let lf = l as f64;
            let next = ((2.0 * lf - 1.0) * x * p[l - 1] - (lf - 1.0) * p[l - 2]) / lf;
            p.push(next);
        }
        for (l, want) in p.iter().enumerate() {
            let got = wigner_small_d(HalfInt::integer(l as i32), h(0), h(0), 0.37).unwrap();
            assert!((got - want).abs() < 1e-13, "l={l}");
        }
    }

    #[test]
    fn identity_rotation() {
        let l = h(7);
        for mp in l.projections_desc() {
            for m in l.projections_desc() {
                let v = wigner_small_d(l, mp, m, 0.0).unwrap();
                assert_eq!(v, if mp == m { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn half_angle_spin_half() {
        // d^{1/2}(β) = [[cos β/2, -sin β/2], [sin β/2, cos β/2]] in (m = 1/2, -1/2) order
        let b = 0.9;
        let (s, c) = (0.5f64 * b).sin_cos();
        let j = h(1);
        assert!((wigner_small_d(j, h(1), h(-1), b).unwrap() + s).abs() < 1e-15);
        assert!((wigner_small_d(j, h(-1), h(1), b).unwrap() - s).abs() < 1e-15);
        assert!((wigner_small_d(j, h(1), h(1), b).unwrap() - c).abs() < 1e-15);
    }

    #[test]
    fn table_matches_single_elements() {
        let table = SmallDTable::new(6, 2.1).unwrap();
        for l in 0..=6i32 {
            for mp in -l..=l {
                for m in -l..=l {
                    let single = wigner_small_d(HalfInt::integer(l), h(2 * mp), h(2 * m), 2.1).unwrap();
                    assert_eq!(table.get(l as usize, mp, m), single);
                }
            }
        }
    }

    #[test]
    fn d_matrix_at_pi_is_antidiagonal() {
        let mat = SmallDMatrix::new(h(4), PI).unwrap();
        for r in 0..5 {
            for c in 0..5 {
                let v = mat.get(r, c);
                if r + c == 4 {
                    assert!((v.abs() - 1.0).abs() < 1e-14);
                } else {
                    assert!(v.abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn out_of_range_projection_errors() {
        assert!(wigner_small_d(h(2), h(4), h(0), 0.1).is_err());
        assert!(wigner_d(h(2), h(0), h(3), &EulerAngles::identity()).is_err());
    }

    #[test]
    fn wigner_d_phases() {
        let a = EulerAngles::new(0.4, 1.0, 2.2).unwrap();
        let v = wigner_d(h(2), h(2), h(-2), &a).unwrap();
        let d = wigner_small_d(h(2), h(2), h(-2), 1.0).unwrap();
        let want = Complex64::from_polar(d, -(0.4 - 2.2));
        assert!((v - want).norm() < 1e-15);
    }
}
