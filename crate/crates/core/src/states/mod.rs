//! States of the `n` shell: circular, extreme Stark and general elliptic
//! (SO(4) coherent) states, with `L` and `K` moments.
//!
//! Inside the shell the two commuting spins `J1 = (L - K)/2` and
//! `J2 = (L + K)/2` both carry `j = (n - 1)/2`. All `K` matrix elements are
//! taken through that product representation.

mod elliptic;
mod operators;
mod wavefunction;

pub use elliptic::{build_elliptic, circular_state, eccentricity, extreme_stark, EllipticSpec, Frame};
pub use operators::{dispersion_sum, expectation_lk, shell_moments, PairAmplitudes, ShellMoments, ShellState};
pub use wavefunction::{overlap, rotate, ProductState, StateDump, StateEntry, WaveFunction};

use crate::angmom::MAX_SHELL;
use crate::error::{Error, Result};

pub(crate) fn check_shell(n: usize) -> Result<()> {
    if !(2..=MAX_SHELL).contains(&n) {
        return Err(Error::InvalidShell(n));
    }
    Ok(())
}
