//! SO(3)-covariant measurement of a shell state.
//!
//! Bob's POVM is `dE = dHaar U|B><B|U†` with `|B> = Σ_l √(2l+1) Σ_m b_lm |lm>`
//! and one unit vector `b_l·` per `l` block. Fidelities are Haar averages of
//! `|<A|U(αβγ)|B>|²` times a diagonal element of the classical rotation.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angmom::{EulerAngles, SmallDTable};
use crate::error::{Error, Result};
use crate::optimize::{golden_section, parabolic_refine};
use crate::quadrature::QuadratureRule;
use crate::states::{build_elliptic, check_shell, overlap, rotate, EllipticSpec, WaveFunction};
use crate::UnitVector;

/// Block norms below this count as a vanishing `l` block.
const VANISHING_BLOCK: f64 = 1e-28;

/// Per-axis infidelity of the optimal two-axis signal, quoted for comparison
/// (`n`, `η`). Not recomputed here.
pub const TWO_AXIS_OPTIMAL_REFERENCE: [(usize, f64); 3] = [(5, 0.14465), (10, 0.06793), (20, 0.03088)];

/// Bob's fiducial vector, one unit vector per `l` block. The `√(2l+1)`
/// weights are applied in [`FiducialVector::weighted_state`].
#[derive(Clone, Debug, PartialEq)]
pub struct FiducialVector {
    n: usize,
    blocks: Vec<Vec<Complex64>>,
}

impl FiducialVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block(&self, l: usize) -> &[Complex64] {
        &self.blocks[l]
    }

    pub fn get(&self, l: usize, m: i32) -> Complex64 {
        self.blocks[l][(m + l as i32) as usize]
    }

    /// `|B>` itself, laid out like a [`WaveFunction`]. Its norm² is `n²`.
    pub fn weighted_state(&self) -> Vec<Complex64> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(l, b)| {
                let w = ((2 * l + 1) as f64).sqrt();
                b.iter().map(move |c| c * w)
            })
            .collect()
    }
}

/// `b_lm = a_lm / (Σ_m' |a_lm'|²)^{1/2}`; a vanishing block is completed
/// with the `m = 0` basis vector.
pub fn bob_fiducial(a: &WaveFunction) -> FiducialVector {
    let n = a.n();
    let blocks = (0..n)
        .map(|l| {
            let norm = a.block_norm_sqr(l);
            if norm < VANISHING_BLOCK {
                let mut b = vec![Complex64::new(0.0, 0.0); 2 * l + 1];
                b[l] = Complex64::new(1.0, 0.0);
                b
            } else {
                let s = norm.sqrt();
                a.block(l).iter().map(|c| c / s).collect()
            }
        })
        .collect();
    FiducialVector { n, blocks }
}

/// `<A| U(αβγ) |B>` evaluated by rotating `|B>` directly.
pub fn povm_amplitude(a: &WaveFunction, b: &FiducialVector, angles: &EulerAngles) -> Complex64 {
    let n = a.n();
    // normalize |B> so it can travel as a WaveFunction, undo afterwards
    let scale = n as f64;
    let coeffs: Vec<Complex64> = b.weighted_state().iter().map(|c| c / scale).collect();
    let state = WaveFunction::normalized(n, coeffs).expect("fiducial vector is nonzero");
    overlap(a, &rotate(&state, angles)).expect("same shell") * scale
}

/// Haar averages of `|<A|U|B>|²` with weights `1`, `R_xx`, `R_yy`, `R_zz`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PovmMoments {
    /// `∫ |<A|U|B>|²`; one for a complete POVM.
    pub total: f64,
    pub cos_x: f64,
    pub cos_y: f64,
    pub cos_z: f64,
}

/// Evaluates all [`PovmMoments`] on the product rule. The `α`, `γ` sums use
/// `<A|U|B> = Σ_{m m'} e^{-imα} M_{mm'}(β) e^{-im'γ}` with
/// `M_{mm'} = Σ_l √(2l+1) conj(a_lm) d^l_{mm'}(β) b_lm'`.
pub fn povm_moments(a: &WaveFunction, b: &FiducialVector, rule: &QuadratureRule) -> PovmMoments {
    let n = a.n();
    let l_max = n as i32 - 1;
    let width = (2 * l_max + 1) as usize;
    let phases = |angles: &[f64]| -> Vec<Vec<Complex64>> {
        angles
            .iter()
            .map(|&t| (-l_max..=l_max).map(|m| Complex64::from_polar(1.0, -f64::from(m) * t)).collect())
            .collect()
    };
    let alphas = rule.alpha_nodes();
    let gammas = rule.gamma_nodes();
    let alpha_phases = phases(&alphas);
    let gamma_phases = phases(&gammas);
    let trig = |v: &[f64]| -> Vec<(f64, f64)> { v.iter().map(|t| t.sin_cos()).collect() };
    let alpha_trig = trig(&alphas);
    let gamma_trig = trig(&gammas);
    let cell = 1.0 / (alphas.len() * gammas.len()) as f64;

    let betas: Vec<(f64, f64)> = rule.beta_nodes().collect();
    let per_beta: Vec<[f64; 4]> = betas
        .par_iter()
        .map(|&(beta, weight)| {
            let table = SmallDTable::new(n - 1, beta).expect("shell validated");
            let mut kernel = vec![Complex64::new(0.0, 0.0); width * width];
            for l in 0..n {
                let li = l as i32;
                let w = ((2 * l + 1) as f64).sqrt();
                let a_block = a.block(l);
                let b_block = b.block(l);
                let d = table.block(l);
                let dim = 2 * l + 1;
                for r in 0..dim {
                    let ca = a_block[r].conj() * w;
                    if ca == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let row = (r as i32 - li + l_max) as usize;
                    for c in 0..dim {
                        let col = (c as i32 - li + l_max) as usize;
                        kernel[row * width + col] += ca * d[r * dim + c] * b_block[c];
                    }
                }
            }
            let cos_beta = beta.cos();
            let mut acc = [0.0f64; 4];
            let mut partial = vec![Complex64::new(0.0, 0.0); width];
            for (ai, pa) in alpha_phases.iter().enumerate() {
                partial.iter_mut().for_each(|p| *p = Complex64::new(0.0, 0.0));
                for (row, phase) in pa.iter().enumerate() {
                    let k = &kernel[row * width..(row + 1) * width];
                    for (p, kv) in partial.iter_mut().zip(k) {
                        *p += phase * kv;
                    }
                }
                let (sa, ca) = alpha_trig[ai];
                for (gi, pg) in gamma_phases.iter().enumerate() {
                    let amp: Complex64 = partial.iter().zip(pg).map(|(p, g)| p * g).sum();
                    let prob = amp.norm_sqr();
                    let (sg, cg) = gamma_trig[gi];
                    acc[0] += prob;
                    acc[1] += prob * (ca * cos_beta * cg - sa * sg);
                    acc[2] += prob * (ca * cg - sa * cos_beta * sg);
                    acc[3] += prob * cos_beta;
                }
            }
            acc.map(|v| v * weight * cell)
        })
        .collect();
    let mut total = [0.0f64; 4];
    for p in &per_beta {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    PovmMoments { total: total[0], cos_x: total[1], cos_y: total[2], cos_z: total[3] }
}

/// `<cos ω_z>` with Bob's optimal fiducial vector, default quadrature orders.
pub fn cos_omega_z(a: &WaveFunction) -> f64 {
    povm_moments(a, &bob_fiducial(a), &QuadratureRule::for_shell(a.n())).cos_z
}

/// `(<cos ω_x>, <cos ω_y>)`; their sum is `<(1 + cos β) cos(α + γ)>`.
pub fn cos_omega_xy(a: &WaveFunction) -> (f64, f64) {
    let m = povm_moments(a, &bob_fiducial(a), &QuadratureRule::for_shell(a.n()));
    (m.cos_x, m.cos_y)
}

/// Closed form for states with only `m = 0` components:
/// `<cos ω_z> = Σ_{kl} A_lk |a_l0| |a_k0|`, `A_{l,l-1} = l / √(4l² - 1)`.
pub fn cos_omega_z_m0(a0: &[f64]) -> f64 {
    (1..a0.len())
        .map(|l| {
            let lf = l as f64;
            2.0 * lf / (4.0 * lf * lf - 1.0).sqrt() * a0[l].abs() * a0[l - 1].abs()
        })
        .sum()
}

/// The `n x n` tridiagonal matrix `A` of [`cos_omega_z_m0`], applied to `v`.
fn apply_coupling(v: &[f64], out: &mut [f64]) {
    let n = v.len();
    for l in 0..n {
        let mut acc = 0.0;
        if l > 0 {
            let lf = l as f64;
            acc += lf / (4.0 * lf * lf - 1.0).sqrt() * v[l - 1];
        }
        if l + 1 < n {
            let kf = (l + 1) as f64;
            acc += kf / (4.0 * kf * kf - 1.0).sqrt() * v[l + 1];
        }
        out[l] = acc;
    }
}

/// Best `m = 0` signal for one axis and its `<cos ω_z>`.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalM0 {
    /// Nonnegative `|a_l0|`, unit norm.
    pub amplitudes: Vec<f64>,
    pub cos_omega: f64,
}

/// Principal eigenvector of `A` by power iteration on `A + 1`. The shift
/// separates the top eigenvalue from its mirror image `-λ`.
pub fn optimal_m0_state(n: usize) -> Result<OptimalM0> {
    check_shell(n)?;
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut av = vec![0.0; n];
    for _ in 0..200_000 {
        apply_coupling(&v, &mut av);
        let mut next: Vec<f64> = av.iter().zip(&v).map(|(a, x)| a + x).collect();
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        next.iter_mut().for_each(|x| *x /= norm);
        let change = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        if change < 1e-15 {
            break;
        }
    }
    apply_coupling(&v, &mut av);
    let cos_omega = v.iter().zip(&av).map(|(a, b)| a * b).sum();
    Ok(OptimalM0 { amplitudes: v, cos_omega })
}

fn check_eccentricity(e: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&e) {
        return Err(Error::Domain(format!("eccentricity {e} outside [0, 1]")));
    }
    Ok(e.asin())
}

/// Elliptic signal for two axes: `u1, u2` in the xy plane on either side of
/// `y` at half-angle `ζ = asin e`, so that `k = x` and `l = y`.
pub fn alice_two_axis_state(n: usize, e: f64) -> Result<WaveFunction> {
    let zeta = check_eccentricity(e)?;
    let (s, c) = zeta.sin_cos();
    let spec = EllipticSpec::new(n, UnitVector::new(-s, c, 0.0)?, UnitVector::new(s, c, 0.0)?)?;
    build_elliptic(&spec)
}

/// Axis of the classical ellipse frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameAxis {
    /// Along the LRL vector.
    K,
    /// Along the angular momentum.
    L,
    /// Minor axis, `l × k`.
    W,
}

/// Elliptic signal whose frame axis `axis` points along `z`:
/// `w = z` has `k = y, l = x`; `l = z` has `k = x`; `k = z` has `l = x`.
pub fn axis_state(n: usize, e: f64, axis: FrameAxis) -> Result<WaveFunction> {
    let zeta = check_eccentricity(e)?;
    let (s, c) = zeta.sin_cos();
    let (u1, u2) = match axis {
        FrameAxis::W => (UnitVector::new(c, -s, 0.0)?, UnitVector::new(c, s, 0.0)?),
        FrameAxis::L => (UnitVector::new(-s, 0.0, c)?, UnitVector::new(s, 0.0, c)?),
        FrameAxis::K => (UnitVector::new(c, 0.0, -s)?, UnitVector::new(c, 0.0, s)?),
    };
    build_elliptic(&EllipticSpec::new(n, u1, u2)?)
}

/// Elliptic signal with minor axis `w = z`: `k = y`, `l = x`.
pub fn minor_axis_state(n: usize, e: f64) -> Result<WaveFunction> {
    axis_state(n, e, FrameAxis::W)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    /// One axis carried by the minor axis `w` of the ellipse.
    SingleMinorAxis,
    /// Two axes `x = k`, `y = l`; per-axis error `¼ Σ (1 - cos ω)`.
    TwoAxes,
}

/// Per-axis mean square error of the elliptic signal at eccentricity `e`.
pub fn eccentricity_error(n: usize, e: f64, objective: Objective) -> Result<f64> {
    Ok(match objective {
        Objective::SingleMinorAxis => 0.5 * (1.0 - cos_omega_z(&minor_axis_state(n, e)?)),
        Objective::TwoAxes => {
            let (cx, cy) = cos_omega_xy(&alice_two_axis_state(n, e)?);
            0.25 * (2.0 - cx - cy)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EccentricityOptimum {
    pub e: f64,
    pub eta: f64,
    pub evaluations: usize,
}

pub const ECCENTRICITY_BRACKET: (f64, f64) = (0.01, 0.99);
pub const ECCENTRICITY_TOLERANCE: f64 = 1e-4;

/// Golden-section search over `e ∈ [0.01, 0.99]` to `Δe ≤ 1e-4`, then a
/// five-point parabolic polish.
pub fn optimize_eccentricity(n: usize, objective: Objective) -> Result<EccentricityOptimum> {
    if !(3..=crate::angmom::MAX_SHELL).contains(&n) {
        return Err(Error::InvalidShell(n));
    }
    let f = |e: f64| eccentricity_error(n, e, objective).expect("eccentricity inside bracket");
    let (lo, hi) = ECCENTRICITY_BRACKET;
    let coarse = golden_section(f, lo, hi, ECCENTRICITY_TOLERANCE)?;
    let fine = parabolic_refine(f, coarse, 10.0 * ECCENTRICITY_TOLERANCE, lo, hi);
    Ok(EccentricityOptimum { e: fine.x, eta: fine.fx, evaluations: fine.evaluations })
}

/// Outcome of one transmission protocol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub protocol: String,
    pub n: usize,
    pub eccentricity: Option<f64>,
    /// `<cos ω>` for every transmitted axis.
    pub cos_omega: Vec<f64>,
    /// `½(1 - <cos ω>)` for one axis, `¼ Σ (1 - <cos ω>)` for two.
    pub infidelity_per_axis: f64,
}

impl FidelityReport {
    pub fn single_axis(protocol: impl Into<String>, n: usize, eccentricity: Option<f64>, cos_omega: f64) -> Self {
        Self {
            protocol: protocol.into(),
            n,
            eccentricity,
            cos_omega: vec![cos_omega],
            infidelity_per_axis: 0.5 * (1.0 - cos_omega),
        }
    }

    pub fn two_axis(protocol: impl Into<String>, n: usize, eccentricity: Option<f64>, cos_x: f64, cos_y: f64) -> Self {
        Self {
            protocol: protocol.into(),
            n,
            eccentricity,
            cos_omega: vec![cos_x, cos_y],
            infidelity_per_axis: 0.25 * ((1.0 - cos_x) + (1.0 - cos_y)),
        }
    }
}

/// `|<u|v>|²` for two `m = 0` signals given as magnitudes with the phases of
/// a reference state; used to compare the Stark and optimal signals.
pub fn m0_overlap_sqr(a: &[f64], b: &[f64]) -> f64 {
    let s: f64 = a.iter().zip(b).map(|(x, y)| x.abs() * y.abs()).sum();
    s * s
}

/// Eccentricity whose `u1, u2` are orthogonal, the small-dispersion guess
/// for two axes.
pub const HEURISTIC_TWO_AXIS_ECCENTRICITY: f64 = FRAC_1_SQRT_2;
