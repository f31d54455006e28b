//! Gauss-Legendre nodes and product rules for the rotation group and the sphere.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::angmom::EulerAngles;

/// Nodes and weights of the `count`-point Gauss-Legendre rule on `[-1, 1]`,
/// nodes in ascending order. Exact for polynomials of degree `2 count - 1`.
pub fn gauss_legendre(count: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(count > 0, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; count];
    let mut weights = vec![0.0; count];
    let nf = count as f64;
    for i in 0..count.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(count, x);
            derivative = dp;
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(count, x);
        if dp != 0.0 {
            derivative = dp;
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes[count - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[count - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Product rule for the normalized Haar measure `sin β dα dβ dγ / 8π²`:
/// Gauss-Legendre in `cos β`, equispaced (trapezoid) in `α` and `γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    n_beta: usize,
    n_alpha: usize,
    n_gamma: usize,
    cos_beta: Vec<f64>,
    beta_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(n_beta: usize, n_alpha: usize, n_gamma: usize) -> Self {
        assert!(n_beta > 0 && n_alpha > 0 && n_gamma > 0, "empty quadrature rule");
        let (cos_beta, beta_weights) = gauss_legendre(n_beta);
        Self { n_beta, n_alpha, n_gamma, cos_beta, beta_weights }
    }

    /// Default orders for the `n` shell: `2n` Gauss-Legendre nodes in
    /// `cos β`, `4n + 4` equispaced nodes in each of `α`, `γ`.
    pub fn for_shell(n: usize) -> Self {
        Self::new(2 * n, 4 * n + 4, 4 * n + 4)
    }

    pub fn n_beta(&self) -> usize {
        self.n_beta
    }

    pub fn n_alpha(&self) -> usize {
        self.n_alpha
    }

    pub fn n_gamma(&self) -> usize {
        self.n_gamma
    }

    /// `(β, weight)` pairs; weights sum to one.
    pub fn beta_nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.cos_beta.iter().zip(&self.beta_weights).map(|(&x, &w)| (x.clamp(-1.0, 1.0).acos(), 0.5 * w))
    }

    pub fn alpha_nodes(&self) -> Vec<f64> {
        equispaced(self.n_alpha)
    }

    pub fn gamma_nodes(&self) -> Vec<f64> {
        equispaced(self.n_gamma)
    }

    /// `∫ f dα dβ dγ sin β / 8π²`. The sum runs in a fixed order, so the
    /// result does not depend on the number of worker threads.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&EulerAngles) -> f64 + Sync,
    {
        let alphas = self.alpha_nodes();
        let gammas = self.gamma_nodes();
        let cell = 1.0 / (self.n_alpha * self.n_gamma) as f64;
        let betas: Vec<(f64, f64)> = self.beta_nodes().collect();
        let partial: Vec<f64> = betas
            .par_iter()
            .map(|&(beta, w)| {
                let mut acc = 0.0;
                for &alpha in &alphas {
                    for &gamma in &gammas {
                        acc += f(&EulerAngles { psi: alpha, theta: beta, phi: gamma });
                    }
                }
                acc * w * cell
            })
            .collect();
        partial.iter().sum()
    }
}

/// `∫ f sin θ dθ dφ` over the whole sphere (unnormalized, total `4π`).
#[derive(Clone, Debug, PartialEq)]
pub struct SphereRule {
    cos_theta: Vec<f64>,
    weights: Vec<f64>,
    n_phi: usize,
}

impl SphereRule {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        assert!(n_theta > 0 && n_phi > 0, "empty sphere rule");
        let (cos_theta, weights) = gauss_legendre(n_theta);
        Self { cos_theta, weights, n_phi }
    }

    /// `(θ, φ, weight)` for every node.
    pub fn nodes(&self) -> Vec<(f64, f64, f64)> {
        let phis = equispaced(self.n_phi);
        let dphi = TAU / self.n_phi as f64;
        self.cos_theta
            .iter()
            .zip(&self.weights)
            .flat_map(|(&x, &w)| phis.iter().map(move |&phi| (x.clamp(-1.0, 1.0).acos(), phi, w * dphi)))
            .collect()
    }
}

fn equispaced(count: usize) -> Vec<f64> {
    (0..count).map(|k| TAU * k as f64 / count as f64).collect()
}
