use nalgebra::Vector3;
use num_complex::Complex64;

use super::wavefunction::WaveFunction;
use super::ProductState;
use crate::angmom::{CouplingTable, HalfInt};

/// Amplitudes `c_{m1 m2}` of a shell state in the product basis
/// `|j m1> ⊗ |j m2>`, stored at offsets `(m1 + j, m2 + j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairAmplitudes {
    spin: HalfInt,
    dim: usize,
    c: Vec<Complex64>,
}

impl PairAmplitudes {
    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i1: usize, i2: usize) -> Complex64 {
        self.c[i1 * self.dim + i2]
    }

    pub fn from_product(state: &ProductState) -> Self {
        let spin = state.first().spin();
        let dim = spin.twice() as usize + 1;
        let (a, b) = (state.first().as_slice(), state.second().as_slice());
        let c = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        Self { spin, dim, c }
    }

    /// `c_{m1 m2} = Σ_l C^{jj l}_{m1 m2 m} a_{l, m1+m2}`.
    pub fn from_wavefunction(state: &WaveFunction, table: &CouplingTable) -> Self {
        let spin = table.spin();
        let dim = table.dim();
        let jt = spin.twice();
        let mut c = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i1 in 0..dim {
            for i2 in 0..dim {
                let m = (2 * (i1 + i2) as i32 - 2 * jt) / 2;
                let l_min = m.unsigned_abs() as usize;
                let mut acc = Complex64::new(0.0, 0.0);
                for l in l_min..dim {
                    acc += state.get(l, m) * table.get(l, i1, i2);
                }
                c[i1 * dim + i2] = acc;
            }
        }
        Self { spin, dim, c }
    }

    /// Inverse of [`PairAmplitudes::from_wavefunction`]: `a_lm = Σ C c`.
    pub fn to_wavefunction(&self, table: &CouplingTable) -> WaveFunction {
        let n = self.dim;
        let jt = self.spin.twice();
        let mut out = WaveFunction::zeros(n);
        for l in 0..n {
            for i1 in 0..n {
                for i2 in 0..n {
                    let m = (2 * (i1 + i2) as i32 - 2 * jt) / 2;
                    if m.unsigned_abs() as usize > l {
                        continue;
                    }
                    let v = out.get(l, m) + self.get(i1, i2) * table.get(l, i1, i2);
                    out.set(l, m, v);
                }
            }
        }
        out
    }

    fn zeros_like(&self) -> Self {
        Self { spin: self.spin, dim: self.dim, c: vec![Complex64::new(0.0, 0.0); self.c.len()] }
    }

    fn inner(&self, other: &Self) -> Complex64 {
        self.c.iter().zip(&other.c).map(|(a, b)| a.conj() * b).sum()
    }

    fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|x| x.norm_sqr()).sum()
    }

    fn scaled_sum(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        let c = self.c.iter().zip(&other.c).map(|(x, y)| a * x + b * y).collect();
        Self { spin: self.spin, dim: self.dim, c }
    }

    /// One Cartesian component (`axis` 0, 1, 2 = x, y, z) of `J1` or `J2`.
    fn apply_spin(&self, second: bool, axis: usize) -> Self {
        let j = self.spin.value();
        let d = self.dim;
        let projection = |i: usize| i as f64 - j;
        let idx = |a: usize, b: usize| if second { b * d + a } else { a * d + b };
        let mut raised = self.zeros_like();
        let mut lowered = self.zeros_like();
        let mut diag = self.zeros_like();
        for own in 0..d {
            let m = projection(own);
            for other in 0..d {
                let v = self.c[idx(own, other)];
                diag.c[idx(own, other)] = v * m;
                if own + 1 < d {
                    raised.c[idx(own + 1, other)] = v * (j * (j + 1.0) - m * (m + 1.0)).sqrt();
                }
                if own > 0 {
                    lowered.c[idx(own - 1, other)] = v * (j * (j + 1.0) - m * (m - 1.0)).sqrt();
                }
            }
        }
        let half = Complex64::new(0.5, 0.0);
        match axis {
            0 => raised.scaled_sum(half, &lowered, half),
            1 => raised.scaled_sum(Complex64::new(0.0, -0.5), &lowered, Complex64::new(0.0, 0.5)),
            _ => diag,
        }
    }
}

/// Anything that can be expressed in the `J1 ⊗ J2` product basis.
pub trait ShellState {
    fn pair_amplitudes(&self) -> PairAmplitudes;
}

impl ShellState for ProductState {
    fn pair_amplitudes(&self) -> PairAmplitudes {
        PairAmplitudes::from_product(self)
    }
}

impl ShellState for WaveFunction {
    fn pair_amplitudes(&self) -> PairAmplitudes {
        let table = CouplingTable::new(HalfInt::shell_spin(self.n())).expect("valid shell");
        PairAmplitudes::from_wavefunction(self, &table)
    }
}

impl ShellState for PairAmplitudes {
    fn pair_amplitudes(&self) -> PairAmplitudes {
        self.clone()
    }
}

/// First and second moments of `L = J1 + J2` and `K = J2 - J1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShellMoments {
    pub l_mean: Vector3<f64>,
    pub k_mean: Vector3<f64>,
    /// `<L_i²>` per Cartesian component.
    pub l_sq: Vector3<f64>,
    pub k_sq: Vector3<f64>,
    /// `<L·K + K·L>`.
    pub lk_anticommutator: f64,
}

impl ShellMoments {
    /// `<L² + K²>`; equals `n² - 1` on every shell state.
    pub fn casimir(&self) -> f64 {
        self.l_sq.sum() + self.k_sq.sum()
    }

    /// `(ΔL)² + (ΔK)²`.
    pub fn dispersion_sum(&self) -> f64 {
        self.casimir() - self.l_mean.norm_squared() - self.k_mean.norm_squared()
    }
}

pub fn shell_moments(state: &impl ShellState) -> ShellMoments {
    let psi = state.pair_amplitudes();
    let one = Complex64::new(1.0, 0.0);
    let mut moments = ShellMoments {
        l_mean: Vector3::zeros(),
        k_mean: Vector3::zeros(),
        l_sq: Vector3::zeros(),
        k_sq: Vector3::zeros(),
        lk_anticommutator: 0.0,
    };
    let norm = psi.norm_sqr();
    for axis in 0..3 {
        let j1 = psi.apply_spin(false, axis);
        let j2 = psi.apply_spin(true, axis);
        let l = j1.scaled_sum(one, &j2, one);
        let k = j2.scaled_sum(one, &j1, -one);
        moments.l_mean[axis] = psi.inner(&l).re / norm;
        moments.k_mean[axis] = psi.inner(&k).re / norm;
        moments.l_sq[axis] = l.norm_sqr() / norm;
        moments.k_sq[axis] = k.norm_sqr() / norm;
        moments.lk_anticommutator += 2.0 * l.inner(&k).re / norm;
    }
    moments
}

/// `(<L>, <K>)`.
pub fn expectation_lk(state: &impl ShellState) -> (Vector3<f64>, Vector3<f64>) {
    let m = shell_moments(state);
    (m.l_mean, m.k_mean)
}

/// `(ΔL)² + (ΔK)²`; `2(n - 1)` for coherent states, larger otherwise.
pub fn dispersion_sum(state: &impl ShellState) -> f64 {
    shell_moments(state).dispersion_sum()
}
