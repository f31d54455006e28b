//! Elliptic Rydberg states of hydrogen as carriers of spatial directions.
//!
//! The crate builds SO(4) coherent states of a fixed `n` shell, evaluates the
//! fidelity of direction transmission under SO(3)- and SO(4)-covariant
//! measurements, optimizes the eccentricity of the signal state, and
//! estimates by Monte Carlo the gain from orthogonalizing two axis estimates.

pub mod angmom;
pub mod error;
pub mod geometry;
pub mod optimize;
pub mod ortho;
pub mod povm_so3;
pub mod povm_so4;
pub mod quadrature;
pub mod sampling;
pub mod states;

pub use error::{Error, Result};
pub use geometry::UnitVector;
