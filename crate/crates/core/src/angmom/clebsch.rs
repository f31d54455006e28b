use std::sync::OnceLock;

use super::{HalfInt, MAX_SHELL};
use crate::error::{Error, Result};

const FACTORIAL_TABLE_LEN: usize = 4 * MAX_SHELL + 2;

fn log_factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(FACTORIAL_TABLE_LEN);
        let mut acc = 0.0f64;
        table.push(0.0);
        for k in 1..FACTORIAL_TABLE_LEN {
            acc += (k as f64).ln();
            table.push(acc);
        }
        table
    })
}

/// `ln(k!)` for `k` up to `4 * MAX_SHELL + 1`.
pub fn log_factorial(k: usize) -> f64 {
    log_factorials()[k]
}

// Factorial argument given in doubled units; callers guarantee it is even.
fn lf(twice: i32) -> f64 {
    debug_assert!(twice >= 0 && twice % 2 == 0);
    log_factorial((twice / 2) as usize)
}

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | l m>` with Condon-Shortley phases.
///
/// Evaluated with the Racah sum over precomputed log-factorials. Returns `0`
/// when `m != m1 + m2`.
pub fn clebsch_gordan(j1: HalfInt, j2: HalfInt, l: HalfInt, m1: HalfInt, m2: HalfInt, m: HalfInt) -> Result<f64> {
    m1.check_projection(j1)?;
    m2.check_projection(j2)?;
    m.check_projection(l)?;
    let (a, b, c) = (j1.twice(), j2.twice(), l.twice());
    if c < (a - b).abs() || c > a + b || (a + b + c) % 2 != 0 {
        return Err(Error::Domain(format!("triangle rule violated: ({j1}, {j2}, {l})")));
    }
    if a + b + c > 2 * (FACTORIAL_TABLE_LEN as i32 - 1) {
        return Err(Error::Domain(format!("angular momenta too large: ({j1}, {j2}, {l})")));
    }
    if m1 + m2 != m {
        return Ok(0.0);
    }
    Ok(racah_sum(a, b, c, m1.twice(), m2.twice(), m.twice()))
}

// All arguments doubled; validity already checked.
fn racah_sum(j1: i32, j2: i32, l: i32, m1: i32, m2: i32, m: i32) -> f64 {
    let prefactor = 0.5
        * ((f64::from(l) + 1.0).ln() + lf(l + j1 - j2) + lf(l - j1 + j2) + lf(j1 + j2 - l) - lf(j1 + j2 + l + 2)
            + lf(l + m)
            + lf(l - m)
            + lf(j1 - m1)
            + lf(j1 + m1)
            + lf(j2 - m2)
            + lf(j2 + m2));

    let k_min = 0.max(j2 - l - m1).max(j1 - l + m2);
    let k_max = (j1 + j2 - l).min(j1 - m1).min(j2 + m2);
    let mut sum = 0.0;
    let mut k = k_min;
    while k <= k_max {
        let denom =
            lf(k) + lf(j1 + j2 - l - k) + lf(j1 - m1 - k) + lf(j2 + m2 - k) + lf(l - j2 + m1 + k) + lf(l - j1 - m2 + k);
        let term = (prefactor - denom).exp();
        if (k / 2) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 2;
    }
    sum
}

/// All coefficients `C^{j j l}_{m1 m2, m1+m2}` for the symmetric coupling of
/// two spins `j` into `l = 0 ..= 2j`.
#[derive(Clone, Debug)]
pub struct CouplingTable {
    spin: HalfInt,
    dim: usize,
    // [l][i1][i2], i = m + j in units of one.
    values: Vec<f64>,
}

impl CouplingTable {
    pub fn new(spin: HalfInt) -> Result<Self> {
        if spin.twice() < 0 {
            return Err(Error::Domain(format!("negative spin {spin}")));
        }
        let dim = spin.twice() as usize + 1;
        let n_l = dim;
        let mut values = vec![0.0; n_l * dim * dim];
        for l in 0..n_l {
            let l_h = HalfInt::integer(l as i32);
            for i1 in 0..dim {
                let m1 = HalfInt::from_twice(2 * i1 as i32 - spin.twice());
                for i2 in 0..dim {
                    let m2 = HalfInt::from_twice(2 * i2 as i32 - spin.twice());
                    let m = m1 + m2;
                    if m.twice().abs() > l_h.twice() {
                        continue;
                    }
                    values[(l * dim + i1) * dim + i2] = clebsch_gordan(spin, spin, l_h, m1, m2, m)?;
                }
            }
        }
        Ok(Self { spin, dim, values })
    }

    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    /// Number of projections of each factor, `2j + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient for total `l`, with factor projections given by their
    /// offsets `i = m + j`.
    #[inline]
    pub fn get(&self, l: usize, i1: usize, i2: usize) -> f64 {
        self.values[(l * self.dim + i1) * self.dim + i2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn stretched_state_is_one() {
        let v = clebsch_gordan(h(1), h(1), h(2), h(1), h(1), h(2)).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn selection_rule_gives_zero() {
        let j = h(3);
        let v = clebsch_gordan(j, j, h(2), h(1), h(1), h(0)).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn spin_one_extreme_column() {
        // C^{1 1 l}_{-1 1 0}: singlet, triplet and quintet components.
        let one = HalfInt::integer(1);
        let mags: Vec<f64> = (0..3)
            .map(|l| clebsch_gordan(one, one, HalfInt::integer(l), -one, one, HalfInt::ZERO).unwrap().abs())
            .collect();
        let expected = [1.0 / 3f64.sqrt(), 1.0 / 2f64.sqrt(), 1.0 / 6f64.sqrt()];
        for (got, want) in mags.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn condon_shortley_signs() {
        // <1/2 1/2; 1/2 -1/2 | 0 0> = +1/sqrt2, <1/2 -1/2; 1/2 1/2 | 0 0> = -1/sqrt2
        let a = clebsch_gordan(h(1), h(1), h(0), h(1), h(-1), h(0)).unwrap();
        let b = clebsch_gordan(h(1), h(1), h(0), h(-1), h(1), h(0)).unwrap();
        assert!((a - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((b + 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn invalid_arguments_are_domain_errors() {
        assert!(matches!(clebsch_gordan(h(2), h(2), h(6), h(0), h(0), h(0)), Err(Error::Domain(_))));
        assert!(matches!(clebsch_gordan(h(2), h(2), h(2), h(4), h(0), h(0)), Err(Error::Domain(_))));
        assert!(matches!(clebsch_gordan(h(2), h(2), h(2), h(1), h(0), h(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn coupling_table_matches_direct_calls() {
        let j = h(5);
        let table = CouplingTable::new(j).unwrap();
        assert_eq!(table.dim(), 6);
        let direct = clebsch_gordan(j, j, HalfInt::integer(3), h(1), h(-3), h(-2)).unwrap();
        assert_eq!(table.get(3, 3, 1), direct);
    }
}
