use std::path::Path;

use elliptic_rydberg::ortho::gain_factor;
use elliptic_rydberg::povm_so3::{
    alice_two_axis_state, axis_state, cos_omega_z, eccentricity_error, m0_overlap_sqr, optimal_m0_state,
    optimize_eccentricity, FrameAxis, Objective, TWO_AXIS_OPTIMAL_REFERENCE,
};
use elliptic_rydberg::povm_so4::{outcome_stream, simulate_so4, so4_infidelity};
use elliptic_rydberg::states::extreme_stark;
use elliptic_rydberg::UnitVector;

use crate::config::Tolerances;
use crate::reference;
use crate::report::{Cell, Check, Report};
use crate::CliError;

fn single_axis_eta(n: usize, e: f64, axis: FrameAxis) -> Result<f64, CliError> {
    Ok(0.5 * (1.0 - cos_omega_z(&axis_state(n, e, axis)?)))
}

/// Smallest `η` over interior eccentricities, to confirm an endpoint optimum.
fn interior_minimum(n: usize, axis: FrameAxis) -> Result<f64, CliError> {
    let mut best = f64::INFINITY;
    for k in 1..10 {
        best = best.min(single_axis_eta(n, 0.1 * k as f64, axis)?);
    }
    Ok(best)
}

/// One axis along `w`, `l` or `k` for `n = 5, 10`.
pub fn table1(tol: &Tolerances) -> Result<Report, CliError> {
    let t = &tol.table1;
    let mut report = Report::new(
        "table1",
        &["n", "axis", "e", "eta", "reference_e", "reference_eta", "deviation_e", "deviation_eta"],
    )
    .with_quadrature();
    for &(n, ref_e, ref_eta) in &reference::SINGLE_AXIS_W {
        let opt = optimize_eccentricity(n, Objective::SingleMinorAxis)?;
        report.push_row(vec![
            n.into(),
            "w".into(),
            opt.e.into(),
            opt.eta.into(),
            ref_e.into(),
            ref_eta.into(),
            (opt.e - ref_e).abs().into(),
            (opt.eta - ref_eta).abs().into(),
        ]);
        report.checks.push(Check::absolute(format!("n={n} z=w eta"), opt.eta, ref_eta, t.eta));
        report.checks.push(Check::absolute(format!("n={n} z=w e"), opt.e, ref_e, t.e));
    }
    let endpoints =
        [("l", FrameAxis::L, 0.0, &reference::SINGLE_AXIS_L), ("k", FrameAxis::K, 1.0, &reference::SINGLE_AXIS_K)];
    for (label, axis, e, refs) in endpoints {
        for &(n, ref_eta) in refs.iter() {
            let eta = single_axis_eta(n, e, axis)?;
            report.push_row(vec![
                n.into(),
                label.into(),
                e.into(),
                eta.into(),
                e.into(),
                ref_eta.into(),
                0.0.into(),
                (eta - ref_eta).abs().into(),
            ]);
            report.checks.push(Check::absolute(format!("n={n} z={label} eta"), eta, ref_eta, t.eta_closed_form));
            let interior = interior_minimum(n, axis)?;
            report.checks.push(Check::at_least(format!("n={n} z={label} endpoint is optimal"), interior, eta));
        }
    }
    Ok(report)
}

/// `|a_l0|` of the extreme Stark and optimal one-axis signals at `n = 10`.
pub fn table2(tol: &Tolerances) -> Result<Report, CliError> {
    let t = &tol.table2;
    let n = 10;
    let stark = extreme_stark(n)?.m0_magnitudes();
    let optimal = optimal_m0_state(n)?.amplitudes;
    let mut report = Report::new("table2", &["l", "stark", "optimal", "reference_stark", "reference_optimal"]);
    // printed digits are truncated: the entry T stands for [T, T + step)
    let half = 0.5 * reference::TRUNCATION_STEP;
    for l in 0..n {
        let (rs, ro) = (reference::STARK_N10[l], reference::OPTIMAL_N10[l]);
        report.push_row(vec![l.into(), stark[l].into(), optimal[l].into(), rs.into(), ro.into()]);
        report.checks.push(Check::absolute(format!("stark l={l}"), stark[l], rs + half, t.coefficient));
        report.checks.push(Check::absolute(format!("optimal l={l}"), optimal[l], ro + half, t.coefficient));
    }
    for &(m, want) in &reference::STARK_OPTIMAL_OVERLAP {
        let s = extreme_stark(m)?.m0_magnitudes();
        let o = optimal_m0_state(m)?.amplitudes;
        report.checks.push(Check::absolute(format!("overlap n={m}"), m0_overlap_sqr(&s, &o), want, t.overlap));
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    report.checks.push(Check::absolute("stark row norm", norm(&stark), 1.0, tol.closed_forms.quadrature));
    report.checks.push(Check::absolute("optimal row norm", norm(&optimal), 1.0, tol.closed_forms.quadrature));
    Ok(report)
}

pub const DEFAULT_TABLE3_SHELLS: [usize; 3] = [5, 10, 20];

/// `0.05, 0.10, ..., 0.95`.
pub fn default_ecc_grid() -> Vec<f64> {
    (1..=19).map(|k| 0.05 * k as f64).collect()
}

/// Two-axis error curve `η(e)` and its optimum per shell.
pub fn table3(shells: &[usize], grid: &[f64], tol: &Tolerances) -> Result<Report, CliError> {
    let t = &tol.table3;
    let mut report =
        Report::new("table3", &["section", "n", "e", "eta", "reference_e", "reference_eta", "quoted_optimal_eta"])
            .with_quadrature();
    for &n in shells {
        for &e in grid {
            let eta = eccentricity_error(n, e, Objective::TwoAxes)?;
            report.push_row(vec![
                "curve".into(),
                n.into(),
                e.into(),
                eta.into(),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ]);
        }
    }
    for &n in shells {
        let opt = optimize_eccentricity(n, Objective::TwoAxes)?;
        let reference = reference::TWO_AXIS_ELLIPTIC.iter().find(|r| r.0 == n);
        let quoted = TWO_AXIS_OPTIMAL_REFERENCE.iter().find(|r| r.0 == n).map(|r| r.1);
        report.push_row(vec![
            "optimum".into(),
            n.into(),
            opt.e.into(),
            opt.eta.into(),
            reference.map(|r| r.1).into(),
            reference.map(|r| r.2).into(),
            quoted.into(),
        ]);
        if let Some(&(_, ref_e, ref_eta)) = reference {
            report.checks.push(Check::absolute(format!("n={n} eta"), opt.eta, ref_eta, t.eta));
            report.checks.push(Check::absolute(format!("n={n} e"), opt.e, ref_e, t.e));
        }
    }
    Ok(report)
}

/// Per-axis infidelity of the product measurement, closed form and sampled.
pub fn so4(
    n: usize,
    v1: &UnitVector,
    v2: &UnitVector,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Report, CliError> {
    let closed = so4_infidelity(n)?;
    let mut report =
        Report::new("so4", &["n", "axis", "closed_form", "monte_carlo", "stderr", "samples"]).with_seed(seed);
    if samples < 2 {
        for axis in [1usize, 2] {
            report.push_row(vec![n.into(), axis.into(), closed.into(), Cell::Empty, Cell::Empty, samples.into()]);
        }
        return Ok(report);
    }
    let stats = simulate_so4(n, v1, v2, samples, seed)?;
    let sigmas = tol.monte_carlo.sigmas;
    for axis in [1usize, 2] {
        let (mc, se) = (stats.infidelity(axis), stats.infidelity_stderr(axis));
        report.push_row(vec![n.into(), axis.into(), closed.into(), mc.into(), se.into(), samples.into()]);
        report.checks.push(Check::statistical(format!("axis {axis} infidelity"), mc, closed, se, sigmas));
    }
    report.checks.push(Check::absolute("correlation", stats.correlation, 0.0, sigmas / (samples as f64).sqrt()));
    Ok(report)
}

/// Writes `(sample, chi1, chi2, cos_chi1, cos_chi2)` for every draw.
pub fn write_outcomes(
    path: &Path,
    n: usize,
    v1: &UnitVector,
    v2: &UnitVector,
    samples: usize,
    seed: u64,
) -> Result<(), CliError> {
    let rows = outcome_stream(n, v1, v2, samples, seed)?;
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
    for r in &rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub const DEFAULT_ORTHO_SHELLS: [usize; 4] = [5, 10, 20, 40];

/// Per-axis error before and after orthogonalizing the two estimates.
pub fn ortho(shells: &[usize], samples: usize, seed: u64, tol: &Tolerances) -> Result<Report, CliError> {
    let t = &tol.ortho;
    let sigmas = tol.monte_carlo.sigmas;
    let mut report = Report::new("ortho", &["n", "samples", "g", "g_new", "ratio", "stderr"]).with_seed(seed);
    for &n in shells {
        let g = gain_factor(n, samples, seed)?;
        report.push_row(vec![n.into(), samples.into(), g.g.into(), g.g_new.into(), g.ratio.into(), g.stderr.into()]);
        let want = 1.0 / (n as f64 + 1.0);
        report.checks.push(Check::statistical(format!("n={n} g"), g.g, want, g.g_stderr, sigmas));
        if n >= t.min_n_for_ratio {
            report.checks.push(Check::absolute(format!("n={n} ratio"), g.ratio, t.ratio_target, t.ratio));
        }
    }
    Ok(report)
}

/// Coefficients of the two-axis elliptic signal.
pub fn state(n: usize, e: f64) -> Result<Report, CliError> {
    let s = alice_two_axis_state(n, e)?;
    let mut report = Report::new("state", &["l", "m", "re", "im"]);
    for entry in s.to_dump().entries {
        report.push_row(vec![entry.l.into(), Cell::Int(entry.m.into()), entry.re.into(), entry.im.into()]);
    }
    Ok(report)
}
