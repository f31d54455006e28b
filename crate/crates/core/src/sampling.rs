//! Seeded Monte-Carlo plumbing and the coherent-state error sampler.
//!
//! Samples are split into fixed chunks of [`CHUNK_SIZE`]; chunk `c` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `c`. Results are reduced in
//! chunk order, so output does not depend on the number of worker threads.

use nalgebra::Vector3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{orthogonal_to, UnitVector};

pub const CHUNK_SIZE: usize = 1 << 14;

/// Generator for one chunk of a seeded run.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Runs `f(rng, count)` for every chunk in parallel and returns the per-chunk
/// results in chunk order.
pub fn par_chunks<T, F>(samples: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    let chunks = samples.div_ceil(CHUNK_SIZE);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            f(&mut chunk_rng(seed, c as u64), count)
        })
        .collect()
}

/// `s = sin²(χ/2)` drawn with density `n (1 - s)^{n-1}` from `u ∈ [0, 1)`.
pub fn inverse_cdf_sin2_half(n: usize, u: f64) -> f64 {
    1.0 - (1.0 - u).powf(1.0 / n as f64)
}

/// One draw about `axis`: the direction, its polar angle `χ` from the axis,
/// and the azimuth around it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeDraw {
    pub direction: UnitVector,
    pub chi: f64,
    pub azimuth: f64,
}

/// Direction with solid-angle density `∝ cos^{2(n-1)}(χ/2)` about `axis`,
/// the outcome distribution of a covariant measurement on a spin-`(n-1)/2`
/// coherent state.
pub fn sample_cone<R: Rng + ?Sized>(rng: &mut R, axis: &UnitVector, n: usize) -> ConeDraw {
    let s = inverse_cdf_sin2_half(n, rng.gen::<f64>());
    let azimuth = TAU * rng.gen::<f64>();
    let cos_chi = 1.0 - 2.0 * s;
    let sin_chi = 2.0 * (s * (1.0 - s)).max(0.0).sqrt();
    ConeDraw { direction: tilt(axis, cos_chi, sin_chi, azimuth), chi: cos_chi.clamp(-1.0, 1.0).acos(), azimuth }
}

/// `cos χ v + sin χ (cos a e1 + sin a e2)` with `(e1, e2, v)` right-handed.
pub(crate) fn tilt(axis: &UnitVector, cos_chi: f64, sin_chi: f64, azimuth: f64) -> UnitVector {
    let v = axis.as_vector();
    let e1 = *orthogonal_to(axis).as_vector();
    let e2 = v.cross(&e1);
    let (sa, ca) = azimuth.sin_cos();
    let d: Vector3<f64> = v * cos_chi + (e1 * ca + e2 * sa) * sin_chi;
    UnitVector::normalize(d).expect("unit combination")
}

/// Running mean, variance and cross moment of two observables.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PairMoments {
    pub count: f64,
    pub sum_x: f64,
    pub sum_y: f64,
    pub sum_xx: f64,
    pub sum_yy: f64,
    pub sum_xy: f64,
}

impl PairMoments {
    pub fn push(&mut self, x: f64, y: f64) {
        self.count += 1.0;
        self.sum_x += x;
        self.sum_y += y;
        self.sum_xx += x * x;
        self.sum_yy += y * y;
        self.sum_xy += x * y;
    }

    pub fn merge(&mut self, other: &Self) {
        self.count += other.count;
        self.sum_x += other.sum_x;
        self.sum_y += other.sum_y;
        self.sum_xx += other.sum_xx;
        self.sum_yy += other.sum_yy;
        self.sum_xy += other.sum_xy;
    }

    pub fn mean_x(&self) -> f64 {
        self.sum_x / self.count
    }

    pub fn mean_y(&self) -> f64 {
        self.sum_y / self.count
    }

    pub fn var_x(&self) -> f64 {
        (self.sum_xx / self.count - self.mean_x().powi(2)) * self.count / (self.count - 1.0)
    }

    pub fn var_y(&self) -> f64 {
        (self.sum_yy / self.count - self.mean_y().powi(2)) * self.count / (self.count - 1.0)
    }

    pub fn cov_xy(&self) -> f64 {
        (self.sum_xy / self.count - self.mean_x() * self.mean_y()) * self.count / (self.count - 1.0)
    }

    pub fn stderr_x(&self) -> f64 {
        (self.var_x() / self.count).sqrt()
    }

    pub fn stderr_y(&self) -> f64 {
        (self.var_y() / self.count).sqrt()
    }

    pub fn correlation(&self) -> f64 {
        self.cov_xy() / (self.var_x() * self.var_y()).sqrt()
    }

    /// Standard error of `mean_y / mean_x` to first order.
    pub fn ratio_stderr(&self) -> f64 {
        let r = self.mean_y() / self.mean_x();
        let var = self.var_y() - 2.0 * r * self.cov_xy() + r * r * self.var_x();
        (var.max(0.0) / self.count).sqrt() / self.mean_x().abs()
    }
}

/// Sums per-chunk moments in chunk order.
pub fn reduce_moments(parts: &[PairMoments]) -> PairMoments {
    let mut total = PairMoments::default();
    for p in parts {
        total.merge(p);
    }
    total
}

pub(crate) fn check_samples(samples: usize, minimum: usize) -> Result<()> {
    if samples < minimum {
        return Err(Error::InvalidArgument(format!("need at least {minimum} samples, got {samples}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_cdf_endpoints() {
        assert_eq!(inverse_cdf_sin2_half(5, 0.0), 0.0);
        assert!((inverse_cdf_sin2_half(1, 0.3) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn chunks_are_reproducible_and_distinct() {
        let a: Vec<f64> = par_chunks(3 * CHUNK_SIZE + 7, 11, |rng, _| rng.gen());
        let b: Vec<f64> = par_chunks(3 * CHUNK_SIZE + 7, 11, |rng, _| rng.gen());
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn chunk_counts_cover_samples() {
        let counts: Vec<usize> = par_chunks(2 * CHUNK_SIZE + 5, 0, |_, c| c);
        assert_eq!(counts, vec![CHUNK_SIZE, CHUNK_SIZE, 5]);
    }

    #[test]
    fn cone_draw_polar_angle_matches() {
        let mut rng = chunk_rng(3, 0);
        for axis in [UnitVector::X, UnitVector::Y, UnitVector::Z.neg()] {
            for _ in 0..100 {
                let d = sample_cone(&mut rng, &axis, 4);
                assert!((d.direction.dot(&axis) - d.chi.cos()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn moments_of_perfectly_correlated_pair() {
        let mut m = PairMoments::default();
        for i in 0..10 {
            m.push(i as f64, 2.0 * i as f64);
        }
        assert!((m.correlation() - 1.0).abs() < 1e-12);
        assert!(m.ratio_stderr() < 1e-12);
    }
}
