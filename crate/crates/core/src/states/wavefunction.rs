use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::check_shell;
use crate::angmom::{CoherentCoeffs, EulerAngles, HalfInt, SmallDTable};
use crate::error::{Error, Result};

/// Tolerance on `Σ|a_lm|² - 1` for a state to count as normalized.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Coefficients `a_lm` of a state of the `n` shell in the `|l m>` basis,
/// `0 <= l <= n-1`, `|m| <= l`. Dense storage, one block per `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction {
    n: usize,
    coeffs: Vec<Complex64>,
}

#[inline]
pub(crate) fn offset(l: usize, m: i32) -> usize {
    l * l + (m + l as i32) as usize
}

impl WaveFunction {
    /// The zero vector of the shell; not a valid state until filled and normalized.
    pub(crate) fn zeros(n: usize) -> Self {
        Self { n, coeffs: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    /// Wraps coefficients laid out block by block (`l = 0, 1, ...`, ascending
    /// `m` within a block). They must already be normalized.
    pub fn from_coeffs(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        check_shell(n)?;
        if coeffs.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "shell n = {n} needs {} coefficients, got {}",
                n * n,
                coeffs.len()
            )));
        }
        let state = Self { n, coeffs };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("state norm² {norm} differs from 1")));
        }
        Ok(state)
    }

    /// Like [`WaveFunction::from_coeffs`] but rescales to unit norm.
    pub fn normalized(n: usize, mut coeffs: Vec<Complex64>) -> Result<Self> {
        check_shell(n)?;
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Degenerate("cannot normalize the zero vector".into()));
        }
        coeffs.iter_mut().for_each(|c| *c /= norm);
        Self::from_coeffs(n, coeffs)
    }

    /// A state with only `m = 0` components, `a_l0 = amplitudes[l]`.
    pub fn from_m0(amplitudes: &[f64]) -> Result<Self> {
        let n = amplitudes.len();
        check_shell(n)?;
        let mut state = Self::zeros(n);
        for (l, &a) in amplitudes.iter().enumerate() {
            state.coeffs[offset(l, 0)] = Complex64::new(a, 0.0);
        }
        Self::from_coeffs(n, state.coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest orbital quantum number, `n - 1`.
    pub fn l_max(&self) -> usize {
        self.n - 1
    }

    #[inline]
    pub fn get(&self, l: usize, m: i32) -> Complex64 {
        self.coeffs[offset(l, m)]
    }

    pub(crate) fn set(&mut self, l: usize, m: i32, value: Complex64) {
        self.coeffs[offset(l, m)] = value;
    }

    /// Coefficients of one `l` block, ascending `m`.
    pub fn block(&self, l: usize) -> &[Complex64] {
        &self.coeffs[l * l..(l + 1) * (l + 1)]
    }

    pub fn block_norm_sqr(&self, l: usize) -> f64 {
        self.block(l).iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `|a_l0|` for `l = 0 ..= n-1`.
    pub fn m0_magnitudes(&self) -> Vec<f64> {
        (0..self.n).map(|l| self.get(l, 0).norm()).collect()
    }

    pub fn to_dump(&self) -> StateDump {
        let mut entries = Vec::with_capacity(self.coeffs.len());
        for l in 0..self.n {
            for m in -(l as i32)..=l as i32 {
                let c = self.get(l, m);
                entries.push(StateEntry { l, m, re: c.re, im: c.im });
            }
        }
        StateDump { n: self.n, entries }
    }

    /// Entries may come in any order; missing ones are zero.
    pub fn from_dump(dump: &StateDump) -> Result<Self> {
        check_shell(dump.n)?;
        let mut state = Self::zeros(dump.n);
        for e in &dump.entries {
            if e.l >= dump.n || e.m.unsigned_abs() as usize > e.l {
                return Err(Error::InvalidArgument(format!("entry (l={}, m={}) outside shell", e.l, e.m)));
            }
            state.set(e.l, e.m, Complex64::new(e.re, e.im));
        }
        Self::from_coeffs(dump.n, state.coeffs)
    }
}

/// Serialized form: `{n, entries: [{l, m, re, im}]}`, entries sorted by `(l, m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDump {
    pub n: usize,
    pub entries: Vec<StateEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateEntry {
    pub l: usize,
    pub m: i32,
    pub re: f64,
    pub im: f64,
}

/// `|u1> ⊗ |u2>`: an SO(4) coherent state kept in factored form.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    n: usize,
    c1: CoherentCoeffs,
    c2: CoherentCoeffs,
}

impl ProductState {
    pub fn new(n: usize, c1: CoherentCoeffs, c2: CoherentCoeffs) -> Result<Self> {
        check_shell(n)?;
        let j = HalfInt::shell_spin(n);
        if c1.spin() != j || c2.spin() != j {
            return Err(Error::InvalidArgument(format!("factors must carry spin {j}")));
        }
        Ok(Self { n, c1, c2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first(&self) -> &CoherentCoeffs {
        &self.c1
    }

    pub fn second(&self) -> &CoherentCoeffs {
        &self.c2
    }
}

/// `<a|b> = Σ conj(a_lm) b_lm`.
pub fn overlap(a: &WaveFunction, b: &WaveFunction) -> Result<Complex64> {
    if a.n != b.n {
        return Err(Error::InvalidArgument(format!("shells differ: {} vs {}", a.n, b.n)));
    }
    Ok(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.conj() * y).sum())
}

/// Applies `U(ψθφ) = ⊕_l D^(l)(ψθφ)` to the state.
pub fn rotate(state: &WaveFunction, angles: &EulerAngles) -> WaveFunction {
    let n = state.n;
    let table = SmallDTable::new(n - 1, angles.theta).expect("shell size already validated");
    let mut out = WaveFunction::zeros(n);
    for l in 0..n {
        let li = l as i32;
        let block = state.block(l);
        for mp in -li..=li {
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, m) in (-li..=li).enumerate() {
                let d = table.get(l, mp, m);
                if d != 0.0 {
                    acc += block[c] * Complex64::from_polar(d, -f64::from(m) * angles.phi);
                }
            }
            out.set(l, mp, acc * Complex64::from_polar(1.0, -f64::from(mp) * angles.psi));
        }
    }
    out
}
