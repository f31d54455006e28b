use std::f64::consts::{PI, TAU};

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Active z-y-z Euler angles `(ψ, θ, φ)`: `R = Rz(ψ) Ry(θ) Rz(φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub psi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl EulerAngles {
    /// Angles with `ψ, φ` wrapped into `[0, 2π)`. `θ` must lie in `[0, π]`.
    pub fn new(psi: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !psi.is_finite() || !phi.is_finite() {
            return Err(Error::Domain(format!("Euler angles ({psi}, {theta}, {phi}) out of range")));
        }
        Ok(Self { psi: wrap(psi), theta, phi: wrap(phi) })
    }

    pub const fn identity() -> Self {
        Self { psi: 0.0, theta: 0.0, phi: 0.0 }
    }

    /// Classical rotation matrix `Rz(ψ) Ry(θ) Rz(φ)`.
    pub fn rotation_matrix(&self) -> Matrix3<f64> {
        rz(self.psi) * ry(self.theta) * rz(self.phi)
    }

    /// Decomposes a proper rotation matrix. At the poles (`θ = 0` or `π`)
    /// only `ψ ± φ` is defined; `φ` is then set to zero.
    pub fn from_rotation(r: &Matrix3<f64>) -> Self {
        let cos_theta = r[(2, 2)].clamp(-1.0, 1.0);
        let sin_theta = (r[(0, 2)].powi(2) + r[(1, 2)].powi(2)).sqrt();
        let theta = sin_theta.atan2(cos_theta);
        if sin_theta > 1e-12 {
            let psi = r[(1, 2)].atan2(r[(0, 2)]);
            let phi = r[(2, 1)].atan2(-r[(2, 0)]);
            Self { psi: wrap(psi), theta, phi: wrap(phi) }
        } else if cos_theta > 0.0 {
            // Rz(ψ + φ)
            Self { psi: wrap(r[(1, 0)].atan2(r[(0, 0)])), theta: 0.0, phi: 0.0 }
        } else {
            // Rz(ψ) Ry(π) Rz(φ) has R10 = -sin(ψ-φ), R11 = cos(ψ-φ)
            Self { psi: wrap((-r[(1, 0)]).atan2(r[(1, 1)])), theta: PI, phi: 0.0 }
        }
    }

    /// Angles of the rotation `R(self) R(other)`.
    pub fn compose(&self, other: &EulerAngles) -> Self {
        Self::from_rotation(&(self.rotation_matrix() * other.rotation_matrix()))
    }
}

fn wrap(angle: f64) -> f64 {
    let w = angle.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

pub(crate) fn rz(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

pub(crate) fn ry(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_round_trips() {
        for &(psi, theta, phi) in &[(0.3, 1.1, 4.0), (5.9, 0.2, 0.1), (2.0, 3.0, 1.0)] {
            let e = EulerAngles::new(psi, theta, phi).unwrap();
            let back = EulerAngles::from_rotation(&e.rotation_matrix());
            assert!((back.rotation_matrix() - e.rotation_matrix()).norm() < 1e-12);
            assert!((back.theta - theta).abs() < 1e-12);
            assert!((back.psi - psi).abs() < 1e-12 && (back.phi - phi).abs() < 1e-12);
        }
    }

    #[test]
    fn poles_round_trip() {
        for theta in [0.0, PI] {
            let e = EulerAngles::new(0.7, theta, 0.4).unwrap();
            let back = EulerAngles::from_rotation(&e.rotation_matrix());
            assert!((back.rotation_matrix() - e.rotation_matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn wraps_and_rejects() {
        let e = EulerAngles::new(-0.5, 1.0, 7.0).unwrap();
        assert!((e.psi - (TAU - 0.5)).abs() < 1e-15);
        assert!((e.phi - (7.0 - TAU)).abs() < 1e-15);
        assert!(EulerAngles::new(0.0, -0.1, 0.0).is_err());
        assert!(EulerAngles::new(0.0, 3.5, 0.0).is_err());
    }
}
