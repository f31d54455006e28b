//! Angular-momentum special functions at double precision.
//!
//! Conventions are fixed once for the whole crate: Condon-Shortley phases for
//! Clebsch-Gordan coefficients and active z-y-z Euler rotations,
//! `U(ψθφ) = exp(-i J_z ψ) exp(-i J_y θ) exp(-i J_z φ)`.

mod clebsch;
mod coherent;
mod euler;
mod wigner;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use clebsch::{clebsch_gordan, log_factorial, CouplingTable};
pub use coherent::{coherent_coeffs, CoherentCoeffs};
pub use euler::EulerAngles;
pub use wigner::{wigner_d, wigner_small_d, SmallDMatrix, SmallDTable};

/// Largest principal quantum number supported by the factorial table.
pub const MAX_SHELL: usize = 50;

/// A spin or projection quantum number, stored as twice its value so that
/// half-odd values are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice_value: i32) -> Self {
        HalfInt(twice_value)
    }

    pub const fn integer(value: i32) -> Self {
        HalfInt(2 * value)
    }

    /// The spin carried by each SO(3) factor of the `n` shell, `j = (n - 1)/2`.
    pub const fn shell_spin(n: usize) -> Self {
        HalfInt(n as i32 - 1)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Checks that `self` is a valid projection of the magnitude `j`.
    pub(crate) fn check_projection(self, j: HalfInt) -> Result<()> {
        if j.0 < 0 {
            return Err(Error::Domain(format!("negative angular momentum {j}")));
        }
        if self.0.abs() > j.0 || (j.0 - self.0) % 2 != 0 {
            return Err(Error::Domain(format!("projection {self} invalid for j = {j}")));
        }
        Ok(())
    }

    /// Projections `j, j-1, ..., -j`, in descending order.
    pub fn projections_desc(self) -> impl Iterator<Item = HalfInt> {
        let j = self.0;
        (0..=j.max(-1)).map(move |k| HalfInt(j - 2 * k))
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i32> for HalfInt {
    fn from(value: i32) -> Self {
        HalfInt::integer(value)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
