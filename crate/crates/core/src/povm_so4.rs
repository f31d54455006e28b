//! SO(4) product measurement, one SO(3) POVM per factor of `J1 ⊗ J2`.
//!
//! With coherent fiducials `|j j>` on each factor the two outcome directions
//! are independent, each with solid-angle density `(2j+1)/4π cos^{4j}(χ/2)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angmom::{EulerAngles, HalfInt, SmallDMatrix};
use crate::error::Result;
use crate::quadrature::{QuadratureRule, SphereRule};
use crate::sampling::{chunk_rng, par_chunks, reduce_moments, sample_cone, PairMoments};
use crate::states::{check_shell, extreme_stark, rotate};
use crate::UnitVector;

/// `<cos ω>` per axis, `(n - 1)/(n + 1)`.
pub fn so4_cos_omega(n: usize) -> Result<f64> {
    check_shell(n)?;
    Ok((n as f64 - 1.0) / (n as f64 + 1.0))
}

/// `½(1 - <cos ω>) = 1/(n + 1)`.
pub fn so4_infidelity(n: usize) -> Result<f64> {
    Ok(0.5 * (1.0 - so4_cos_omega(n)?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct So4Outcome {
    pub angles1: EulerAngles,
    pub angles2: EulerAngles,
    pub est1: UnitVector,
    pub est2: UnitVector,
}

/// Euler angles `(ψ, θ, φ)` that carry `z` to `est`, with the unobservable
/// third angle `φ` given.
fn outcome_angles(est: &UnitVector, phi: f64) -> EulerAngles {
    let (theta, az) = est.polar_angles();
    EulerAngles::new(az, theta, phi).expect("polar angle in [0, π]")
}

fn draw<R: rand::Rng + ?Sized>(rng: &mut R, n: usize, v1: &UnitVector, v2: &UnitVector) -> So4Outcome {
    let d1 = sample_cone(rng, v1, n);
    let d2 = sample_cone(rng, v2, n);
    let third1 = std::f64::consts::TAU * rng.gen::<f64>();
    let third2 = std::f64::consts::TAU * rng.gen::<f64>();
    So4Outcome {
        angles1: outcome_angles(&d1.direction, third1),
        angles2: outcome_angles(&d2.direction, third2),
        est1: d1.direction,
        est2: d2.direction,
    }
}

/// One measurement outcome for directions `v1`, `v2`; they need not be
/// orthogonal.
pub fn sample_outcome(n: usize, v1: &UnitVector, v2: &UnitVector, seed: u64) -> Result<So4Outcome> {
    check_shell(n)?;
    Ok(draw(&mut chunk_rng(seed, 0), n, v1, v2))
}

/// Row of an exported outcome stream.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRow {
    pub sample: usize,
    pub chi1: f64,
    pub chi2: f64,
    pub cos_chi1: f64,
    pub cos_chi2: f64,
}

/// Every outcome of a seeded run, in sample order.
pub fn outcome_stream(
    n: usize,
    v1: &UnitVector,
    v2: &UnitVector,
    samples: usize,
    seed: u64,
) -> Result<Vec<OutcomeRow>> {
    check_shell(n)?;
    let chunks = par_chunks(samples, seed, |rng, count| {
        (0..count)
            .map(|_| {
                let o = draw(rng, n, v1, v2);
                let (c1, c2) = (o.est1.dot(v1), o.est2.dot(v2));
                (c1, c2)
            })
            .collect::<Vec<_>>()
    });
    Ok(chunks
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(sample, (c1, c2))| OutcomeRow {
            sample,
            chi1: c1.clamp(-1.0, 1.0).acos(),
            chi2: c2.clamp(-1.0, 1.0).acos(),
            cos_chi1: c1,
            cos_chi2: c2,
        })
        .collect())
}

/// Monte-Carlo summary of `cos χ1`, `cos χ2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct So4Stats {
    pub n: usize,
    pub samples: usize,
    pub mean_cos1: f64,
    pub stderr_cos1: f64,
    pub mean_cos2: f64,
    pub stderr_cos2: f64,
    /// Sample correlation of `cos χ1` and `cos χ2`.
    pub correlation: f64,
}

impl So4Stats {
    /// `½(1 - <cos χ_i>)` for axis 1 or 2.
    pub fn infidelity(&self, axis: usize) -> f64 {
        0.5 * (1.0 - if axis == 1 { self.mean_cos1 } else { self.mean_cos2 })
    }

    pub fn infidelity_stderr(&self, axis: usize) -> f64 {
        0.5 * if axis == 1 { self.stderr_cos1 } else { self.stderr_cos2 }
    }
}

pub fn simulate_so4(n: usize, v1: &UnitVector, v2: &UnitVector, samples: usize, seed: u64) -> Result<So4Stats> {
    check_shell(n)?;
    crate::sampling::check_samples(samples, 2)?;
    let parts = par_chunks(samples, seed, |rng, count| {
        let mut m = PairMoments::default();
        for _ in 0..count {
            let o = draw(rng, n, v1, v2);
            m.push(o.est1.dot(v1), o.est2.dot(v2));
        }
        m
    });
    let m = reduce_moments(&parts);
    Ok(So4Stats {
        n,
        samples,
        mean_cos1: m.mean_x(),
        stderr_cos1: m.stderr_x(),
        mean_cos2: m.mean_y(),
        stderr_cos2: m.stderr_y(),
        correlation: m.correlation(),
    })
}

/// `B = ∫ sin θ dθ dφ |K,u><K,u|`, kept as one block per `l` plus the
/// largest entry found outside the blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    pub n: usize,
    pub blocks: Vec<DMatrix<Complex64>>,
    pub off_block_max: f64,
}

impl BlockOperator {
    /// Mean diagonal element of each block.
    pub fn block_constants(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| (0..b.nrows()).map(|i| b[(i, i)].re).sum::<f64>() / b.nrows() as f64).collect()
    }

    /// `(max - min) / mean` of the block constants; zero for a multiple of
    /// the identity.
    pub fn relative_spread(&self) -> f64 {
        let c = self.block_constants();
        let max = c.iter().cloned().fold(f64::MIN, f64::max);
        let min = c.iter().cloned().fold(f64::MAX, f64::min);
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        (max - min) / mean
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.trace().re).sum()
    }

    /// Largest `|B_l - c_l 1|` entry over all blocks.
    pub fn within_block_deviation(&self) -> f64 {
        self.blocks
            .iter()
            .zip(self.block_constants())
            .map(|(b, c)| {
                let mut worst = 0.0f64;
                for i in 0..b.nrows() {
                    for k in 0..b.ncols() {
                        let want = if i == k { c } else { 0.0 };
                        worst = worst.max((b[(i, k)] - want).norm());
                    }
                }
                worst
            })
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.blocks.iter().all(|b| (b - b.adjoint()).iter().all(|x| x.norm() <= tol))
    }
}

/// `4π |C^{jj l}_{-j j 0}|² / (2l+1)`, the value each block should take.
pub fn stark_block_constants(n: usize) -> Result<Vec<f64>> {
    let a = extreme_stark(n)?;
    Ok((0..n).map(|l| 4.0 * std::f64::consts::PI * a.get(l, 0).norm_sqr() / (2 * l + 1) as f64).collect())
}

/// Direction average of the extreme Stark projector, by quadrature over the
/// sphere (exact for the degrees involved).
pub fn stark_set_operator(n: usize) -> Result<BlockOperator> {
    let stark = extreme_stark(n)?;
    let dim = n * n;
    let n_phi = 4 * n;
    let nodes = SphereRule::new(2 * n, n_phi).nodes();
    // one partial sum per θ ring keeps memory at O(n_θ dim²)
    let parts: Vec<Vec<Complex64>> = nodes
        .par_chunks(n_phi)
        .map(|ring| {
            let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
            for &(theta, phi, w) in ring {
                let angles = EulerAngles::new(phi, theta, 0.0).expect("sphere node");
                let v = rotate(&stark, &angles);
                let c = v.as_slice();
                for (i, ci) in c.iter().enumerate() {
                    if ci.norm_sqr() == 0.0 {
                        continue;
                    }
                    let row = &mut out[i * dim..(i + 1) * dim];
                    for (o, ck) in row.iter_mut().zip(c) {
                        *o += ci * ck.conj() * w;
                    }
                }
            }
            out
        })
        .collect();
    let mut full = vec![Complex64::new(0.0, 0.0); dim * dim];
    for p in &parts {
        for (f, v) in full.iter_mut().zip(p) {
            *f += v;
        }
    }
    let block_of = |i: usize| (i as f64).sqrt() as usize;
    let mut off_block_max = 0.0f64;
    for i in 0..dim {
        for k in 0..dim {
            if block_of(i) != block_of(k) {
                off_block_max = off_block_max.max(full[i * dim + k].norm());
            }
        }
    }
    let blocks = (0..n)
        .map(|l| {
            let start = l * l;
            let size = 2 * l + 1;
            DMatrix::from_fn(size, size, |r, c| full[(start + r) * dim + start + c])
        })
        .collect();
    Ok(BlockOperator { n, blocks, off_block_max })
}

/// `(2j+1) ∫ dHaar U|j j><j j|U†` on one factor, as a dense matrix indexed
/// by `m + j`. The `γ` dependence is a pure phase and cancels.
fn factor_povm_sum(spin: HalfInt, rule: &QuadratureRule) -> DMatrix<Complex64> {
    let dim = spin.twice() as usize + 1;
    let alphas = rule.alpha_nodes();
    let mut total = DMatrix::<Complex64>::zeros(dim, dim);
    for (beta, w) in rule.beta_nodes() {
        let d = SmallDMatrix::new(spin, beta).expect("spin within range");
        for &alpha in &alphas {
            let col: Vec<Complex64> = (0..dim)
                .map(|r| {
                    let m = r as f64 - spin.value();
                    Complex64::from_polar(d.get(r, dim - 1), -m * alpha)
                })
                .collect();
            for r in 0..dim {
                for c in 0..dim {
                    total[(r, c)] += col[r] * col[c].conj() * (w / alphas.len() as f64);
                }
            }
        }
    }
    total * Complex64::new(dim as f64, 0.0)
}

/// Largest `|∫ E - 1|` entry for the product POVM on the `n` shell.
pub fn so4_povm_completeness_check(n: usize) -> Result<f64> {
    check_shell(n)?;
    let spin = HalfInt::shell_spin(n);
    let factor = factor_povm_sum(spin, &QuadratureRule::for_shell(n));
    let product = factor.kronecker(&factor);
    let eye = DMatrix::<Complex64>::identity(product.nrows(), product.ncols());
    Ok((product - eye).iter().map(|x| x.norm()).fold(0.0, f64::max))
}

/// The single-factor version of [`so4_povm_completeness_check`].
pub fn so3_factor_completeness(n: usize) -> Result<f64> {
    check_shell(n)?;
    let factor = factor_povm_sum(HalfInt::shell_spin(n), &QuadratureRule::for_shell(n));
    let eye = DMatrix::<Complex64>::identity(factor.nrows(), factor.ncols());
    Ok((factor - eye).iter().map(|x| x.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert!((so4_cos_omega(2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((so4_cos_omega(9).unwrap() - 0.8).abs() < 1e-15);
        assert!((so4_infidelity(10).unwrap() - 1.0 / 11.0).abs() < 1e-15);
        assert!(so4_cos_omega(1).is_err());
    }

    #[test]
    fn outcome_angles_carry_z_to_estimate() {
        let o = sample_outcome(6, &UnitVector::X, &UnitVector::Y, 5).unwrap();
        for (a, e) in [(o.angles1, o.est1), (o.angles2, o.est2)] {
            let z = a.rotation_matrix() * nalgebra::Vector3::z();
            assert!((z - e.as_vector()).norm() < 1e-12);
        }
    }

    #[test]
    fn stream_is_deterministic() {
        let a = outcome_stream(4, &UnitVector::X, &UnitVector::Z, 100, 9).unwrap();
        let b = outcome_stream(4, &UnitVector::X, &UnitVector::Z, 100, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.last().unwrap().sample, 99);
    }

    #[test]
    fn stark_operator_small_shell() {
        let b = stark_set_operator(3).unwrap();
        assert!((b.trace() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!(b.off_block_max < 1e-12);
        assert!(b.within_block_deviation() < 1e-12);
        for (c, want) in b.block_constants().iter().zip(stark_block_constants(3).unwrap()) {
            assert!((c - want).abs() < 1e-12);
        }
    }

    #[test]
    fn factor_completeness() {
        for n in [2, 3, 4] {
            assert!(so3_factor_completeness(n).unwrap() < 1e-12);
        }
    }
}
