//! Adjusting Bob's two axis estimates to an exactly orthogonal pair, and the
//! resulting change in per-axis error.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use nalgebra::Vector3;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{check_samples, chunk_rng, par_chunks, reduce_moments, sample_cone, PairMoments};
use crate::states::check_shell;
use crate::UnitVector;

pub const MIN_GAIN_SAMPLES: usize = 100_000;

const DEGENERATE_LENGTH: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorSample {
    pub r_x: UnitVector,
    pub r_y: UnitVector,
    pub omega_x: f64,
    pub omega_y: f64,
}

impl ErrorSample {
    fn from_pair(r_x: UnitVector, r_y: UnitVector) -> Self {
        let omega_x = r_x.angle_to(&UnitVector::X);
        let omega_y = r_y.angle_to(&UnitVector::Y);
        Self { r_x, r_y, omega_x, omega_y }
    }

    /// Azimuth of `r_x` measured from `x`, in `(-π, π]`.
    pub fn phi1(&self) -> f64 {
        self.r_x.y().atan2(self.r_x.x())
    }

    /// Azimuth of `r_y` measured from `y`, in `(-π, π]`.
    pub fn phi2_tilde(&self) -> f64 {
        wrap_pi(self.r_y.y().atan2(self.r_y.x()) - FRAC_PI_2)
    }

    /// `¼(2 - cos ω_x - cos ω_y)`.
    pub fn per_axis_error(&self) -> f64 {
        0.25 * (2.0 - self.r_x.x() - self.r_y.y())
    }
}

fn wrap_pi(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

fn draw<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ErrorSample {
    let r_x = sample_cone(rng, &UnitVector::X, n).direction;
    let r_y = sample_cone(rng, &UnitVector::Y, n).direction;
    ErrorSample::from_pair(r_x, r_y)
}

/// Independent estimates of `x` and `y`, each with density `∝ cos^{2n-2}(ω/2)`.
pub fn sample_error_pair(n: usize, seed: u64) -> Result<ErrorSample> {
    check_shell(n)?;
    Ok(draw(&mut chunk_rng(seed, 0), n))
}

/// Rotates `r_x`, `r_y` in their common plane, symmetrically about their
/// bisector, until they are orthogonal.
pub fn orthogonalize(r_x: &UnitVector, r_y: &UnitVector) -> Result<(UnitVector, UnitVector)> {
    let (a, b) = (r_x.as_vector(), r_y.as_vector());
    let sum: Vector3<f64> = a + b;
    let diff: Vector3<f64> = a - b;
    if sum.norm() < DEGENERATE_LENGTH || diff.norm() < DEGENERATE_LENGTH {
        return Err(Error::Degenerate("estimates are parallel or antiparallel".into()));
    }
    let bisector = sum.normalize();
    let spread = diff.normalize();
    let x = UnitVector::normalize((bisector + spread) * FRAC_1_SQRT_2)?;
    let y = UnitVector::normalize((bisector - spread) * FRAC_1_SQRT_2)?;
    Ok((x, y))
}

/// Per-axis error before and after orthogonalization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainReport {
    pub n: usize,
    pub samples: usize,
    pub g: f64,
    pub g_stderr: f64,
    pub g_new: f64,
    pub g_new_stderr: f64,
    pub ratio: f64,
    /// Delta-method standard error of `ratio`.
    pub stderr: f64,
}

pub fn gain_factor(n: usize, samples: usize, seed: u64) -> Result<GainReport> {
    check_shell(n)?;
    check_samples(samples, MIN_GAIN_SAMPLES)?;
    let parts = par_chunks(samples, seed, |rng, count| {
        let mut m = PairMoments::default();
        for _ in 0..count {
            let s = draw(rng, n);
            let after = match orthogonalize(&s.r_x, &s.r_y) {
                Ok((x, y)) => ErrorSample::from_pair(x, y).per_axis_error(),
                // zero-probability event; keep the pair as drawn
                Err(_) => s.per_axis_error(),
            };
            m.push(s.per_axis_error(), after);
        }
        m
    });
    let m = reduce_moments(&parts);
    Ok(GainReport {
        n,
        samples,
        g: m.mean_x(),
        g_stderr: m.stderr_x(),
        g_new: m.mean_y(),
        g_new_stderr: m.stderr_y(),
        ratio: m.mean_y() / m.mean_x(),
        stderr: m.ratio_stderr(),
    })
}

/// Second moments of `φ1` and of the common azimuth `½(φ1 + φ̃2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AzimuthHalving {
    pub phi1_sq: f64,
    pub phi1_sq_stderr: f64,
    pub mean_sq: f64,
    pub mean_sq_stderr: f64,
    /// `mean_sq / phi1_sq`; one half when the azimuths are independent.
    pub ratio: f64,
    pub ratio_stderr: f64,
}

pub fn azimuth_halving(n: usize, samples: usize, seed: u64) -> Result<AzimuthHalving> {
    check_shell(n)?;
    check_samples(samples, 2)?;
    let parts = par_chunks(samples, seed, |rng, count| {
        let mut m = PairMoments::default();
        for _ in 0..count {
            let s = draw(rng, n);
            let p1 = s.phi1();
            let common = 0.5 * (p1 + s.phi2_tilde());
            m.push(p1 * p1, common * common);
        }
        m
    });
    let m = reduce_moments(&parts);
    Ok(AzimuthHalving {
        phi1_sq: m.mean_x(),
        phi1_sq_stderr: m.stderr_x(),
        mean_sq: m.mean_y(),
        mean_sq_stderr: m.stderr_y(),
        ratio: m.mean_y() / m.mean_x(),
        ratio_stderr: m.ratio_stderr(),
    })
}
