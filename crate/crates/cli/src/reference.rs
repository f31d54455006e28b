//! Published values the commands are checked against.

/// `(n, e, η)` for one axis along the minor axis `w`.
pub const SINGLE_AXIS_W: [(usize, f64, f64); 2] = [(5, 0.6963, 0.193967), (10, 0.701261, 0.0861934)];

/// `(n, η)` for one axis along `l`, circular signal.
pub const SINGLE_AXIS_L: [(usize, f64); 2] = [(5, 0.1), (10, 0.05)];

/// `(n, η)` for one axis along `k`, extreme Stark signal.
pub const SINGLE_AXIS_K: [(usize, f64); 2] = [(5, 0.0573645), (10, 0.0264067)];

/// `|a_l0|` at `n = 10`, printed to four truncated decimals.
pub const STARK_N10: [f64; 10] = [0.3162, 0.4954, 0.5222, 0.4534, 0.3365, 0.2148, 0.1167, 0.0526, 0.0186, 0.0045];
pub const OPTIMAL_N10: [f64; 10] = [0.1825, 0.3079, 0.3767, 0.4098, 0.4130, 0.3894, 0.3422, 0.2751, 0.1923, 0.0989];

/// Width of the interval a truncated four-decimal entry stands for.
pub const TRUNCATION_STEP: f64 = 1e-4;

/// `|<K,z|A_opt>|²` by shell.
pub const STARK_OPTIMAL_OVERLAP: [(usize, f64); 2] = [(3, 0.993491), (10, 0.76406)];

/// `(n, e_opt, η)` for two axes carried by one elliptic state.
pub const TWO_AXIS_ELLIPTIC: [(usize, f64, f64); 3] = [(5, 0.708, 0.14765), (10, 0.704, 0.06822), (20, 0.674, 0.03190)];
