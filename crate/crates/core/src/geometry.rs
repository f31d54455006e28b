//! Unit vectors in three dimensions.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|v|² - 1` accepted by [`UnitVector::new`].
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// A direction in space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct UnitVector(Vector3<f64>);

impl UnitVector {
    pub const X: UnitVector = UnitVector(Vector3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVector = UnitVector(Vector3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVector = UnitVector(Vector3::new(0.0, 0.0, 1.0));

    /// Accepts only vectors that already have unit norm.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vector3::new(x, y, z);
        if !v.iter().all(|c| c.is_finite()) || (v.norm_squared() - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnit([x, y, z]));
        }
        Ok(Self(v))
    }

    /// Normalizes `v`; fails on a (near) zero vector.
    pub fn normalize(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::Degenerate("cannot normalize a zero vector".into()));
        }
        Ok(Self(v / norm))
    }

    pub fn from_polar(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Vector3::new(st * cp, st * sp, ct))
    }

    /// `(θ, φ)` with `θ ∈ [0, π]`, `φ ∈ (-π, π]`.
    pub fn polar_angles(&self) -> (f64, f64) {
        let v = &self.0;
        let theta = (v.x.hypot(v.y)).atan2(v.z);
        let phi = if v.x == 0.0 && v.y == 0.0 { 0.0 } else { v.y.atan2(v.x) };
        (theta, phi)
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn dot(&self, other: &UnitVector) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn cross(&self, other: &UnitVector) -> Vector3<f64> {
        self.0.cross(&other.0)
    }

    /// Angle between two directions, accurate near 0 and π.
    pub fn angle_to(&self, other: &UnitVector) -> f64 {
        self.cross(other).norm().atan2(self.dot(other))
    }

    pub fn neg(&self) -> Self {
        Self(-self.0)
    }
}

impl TryFrom<[f64; 3]> for UnitVector {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<UnitVector> for [f64; 3] {
    fn from(u: UnitVector) -> Self {
        [u.0.x, u.0.y, u.0.z]
    }
}

/// Deterministic unit vector orthogonal to `v`: `v × z`, or `v × x` when `v`
/// is (nearly) parallel to `z`.
pub fn orthogonal_to(v: &UnitVector) -> UnitVector {
    let c = v.as_vector().cross(&Vector3::z());
    let c = if c.norm() < 1e-9 { v.as_vector().cross(&Vector3::x()) } else { c };
    UnitVector(c.normalize())
}
