use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

/// The tolerance file shipped with the binary.
pub const DEFAULT_TOLERANCES: &str = include_str!("../tolerances.toml");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub version: u32,
    pub table1: Table1Tolerances,
    pub table2: Table2Tolerances,
    pub table3: Table3Tolerances,
    pub closed_forms: ClosedFormTolerances,
    pub monte_carlo: MonteCarloTolerances,
    pub asymptote: AsymptoteBand,
    pub ortho: OrthoTolerances,
    pub stark_operator: StarkOperatorTolerances,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Tolerances {
    pub eta: f64,
    pub eta_closed_form: f64,
    pub e: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Tolerances {
    pub coefficient: f64,
    pub overlap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table3Tolerances {
    pub eta: f64,
    pub e: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormTolerances {
    pub quadrature: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloTolerances {
    pub sigmas: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteBand {
    pub low: f64,
    pub high: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthoTolerances {
    pub ratio: f64,
    pub ratio_target: f64,
    pub min_n_for_ratio: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarkOperatorTolerances {
    pub min_spread: f64,
}

impl Tolerances {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("bad tolerance file: {e}")))
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Self::parse(DEFAULT_TOLERANCES),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
                Self::parse(&text)
            }
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::parse(DEFAULT_TOLERANCES).expect("shipped tolerance file parses")
    }
}
