use nalgebra::Vector3;
use num_complex::Complex64;

use super::check_shell;
use super::operators::PairAmplitudes;
use super::wavefunction::{ProductState, WaveFunction};
use crate::angmom::{clebsch_gordan, CoherentCoeffs, CouplingTable, HalfInt};
use crate::error::Result;
use crate::geometry::{orthogonal_to, UnitVector};

const DEGENERATE_LENGTH: f64 = 1e-9;

/// An SO(4) coherent state `|u1> ⊗ |u2>` of the `n` shell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipticSpec {
    pub n: usize,
    pub u1: UnitVector,
    pub u2: UnitVector,
}

/// Classical frame of the ellipse: `k` along the LRL vector, `l` along the
/// angular momentum, `w = l × k` along the minor axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub k: UnitVector,
    pub l: UnitVector,
    pub w: UnitVector,
}

impl EllipticSpec {
    pub fn new(n: usize, u1: UnitVector, u2: UnitVector) -> Result<Self> {
        check_shell(n)?;
        Ok(Self { n, u1, u2 })
    }

    /// `ζ`, half the angle between `u1` and `u2`.
    pub fn half_angle(&self) -> f64 {
        0.5 * self.u1.angle_to(&self.u2)
    }

    pub fn eccentricity(&self) -> f64 {
        self.half_angle().sin()
    }

    /// When `u1 = -u2` only `k` is defined and `l` is taken from
    /// [`orthogonal_to`]; when `u1 = u2` the same applies with roles swapped.
    pub fn frame(&self) -> Frame {
        let (a, b) = (self.u1.as_vector(), self.u2.as_vector());
        let sum: Vector3<f64> = a + b;
        let diff: Vector3<f64> = b - a;
        let (k, l) = if sum.norm() < DEGENERATE_LENGTH {
            let k = UnitVector::normalize(diff).expect("u2 - u1 has length 2");
            (k, orthogonal_to(&k))
        } else if diff.norm() < DEGENERATE_LENGTH {
            let l = UnitVector::normalize(sum).expect("u1 + u2 has length 2");
            (orthogonal_to(&l), l)
        } else {
            (
                UnitVector::normalize(diff).expect("checked nonzero"),
                UnitVector::normalize(sum).expect("checked nonzero"),
            )
        };
        let w = UnitVector::normalize(l.cross(&k)).expect("k and l are orthonormal");
        Frame { k, l, w }
    }

    /// The factored form `|u1> ⊗ |u2>`.
    pub fn product_state(&self) -> Result<ProductState> {
        let j = HalfInt::shell_spin(self.n);
        ProductState::new(self.n, CoherentCoeffs::along(j, &self.u1)?, CoherentCoeffs::along(j, &self.u2)?)
    }
}

/// `e = sin ζ`.
pub fn eccentricity(spec: &EllipticSpec) -> f64 {
    spec.eccentricity()
}

/// `a_lm = Σ_{m1 m2} D^j_{m1}(θ1φ1) D^j_{m2}(θ2φ2) C^{jj l}_{m1 m2 m}`.
pub fn build_elliptic(spec: &EllipticSpec) -> Result<WaveFunction> {
    let product = spec.product_state()?;
    let table = CouplingTable::new(HalfInt::shell_spin(spec.n))?;
    Ok(PairAmplitudes::from_product(&product).to_wavefunction(&table))
}

/// `|l = n-1, m = n-1>`, zero eccentricity.
pub fn circular_state(n: usize) -> Result<WaveFunction> {
    check_shell(n)?;
    let mut state = WaveFunction::zeros(n);
    state.set(n - 1, n as i32 - 1, Complex64::new(1.0, 0.0));
    Ok(state)
}

/// `|K, z> = |-z> ⊗ |z>`, with `a_l0 = C^{jj l}_{-j j 0}`.
pub fn extreme_stark(n: usize) -> Result<WaveFunction> {
    check_shell(n)?;
    let j = HalfInt::shell_spin(n);
    let mut state = WaveFunction::zeros(n);
    for l in 0..n {
        let c = clebsch_gordan(j, j, HalfInt::integer(l as i32), -j, j, HalfInt::ZERO)?;
        state.set(l, 0, Complex64::new(c, 0.0));
    }
    Ok(state)
}
