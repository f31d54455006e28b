use num_complex::Complex64;

use super::clebsch::log_factorial;
use super::HalfInt;
use crate::error::{Error, Result};
use crate::geometry::UnitVector;

/// Coefficients `D^j_m(θφ)` of the spin coherent state `|u_{θφ}>` in the
/// `|j m>` basis, stored at offsets `i = m + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentCoeffs {
    spin: HalfInt,
    coeffs: Vec<Complex64>,
}

impl CoherentCoeffs {
    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `|j m>`.
    pub fn get(&self, m: HalfInt) -> Complex64 {
        self.coeffs[((m.twice() + self.spin.twice()) / 2) as usize]
    }

    /// Coherent state along a direction.
    pub fn along(spin: HalfInt, u: &UnitVector) -> Result<Self> {
        let (theta, phi) = u.polar_angles();
        coherent_coeffs(spin, theta, phi)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &CoherentCoeffs) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `D^j_m(θφ) = D^{(j)}(φ θ 0)_{m j} = C(2j, j+m)^{1/2} cos^{j+m}(θ/2) sin^{j-m}(θ/2) e^{-imφ}`.
pub fn coherent_coeffs(spin: HalfInt, theta: f64, phi: f64) -> Result<CoherentCoeffs> {
    let jt = spin.twice();
    if jt < 0 {
        return Err(Error::Domain(format!("negative spin {spin}")));
    }
    let (half_sin, half_cos) = (0.5 * theta).sin_cos();
    let coeffs = (0..=jt)
        .map(|k| {
            // k = m + j
            let up = k as usize;
            let down = (jt - k) as usize;
            let binom = 0.5 * (log_factorial(jt as usize) - log_factorial(up) - log_factorial(down));
            let magnitude = binom.exp() * half_cos.powi(up as i32) * half_sin.powi(down as i32);
            let m = f64::from(2 * k - jt) / 2.0;
            Complex64::from_polar(magnitude, -m * phi)
        })
        .collect();
    Ok(CoherentCoeffs { spin, coeffs })
}
