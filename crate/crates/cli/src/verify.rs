//! Spot checks of the analytic solution against the RK4 oracle.

use rayon::prelude::*;

use jcm_core::evolve;
use jcm_core::oracle::{compare, OracleState};

use crate::config::{Case, RunConfig};
use crate::error::VerifyError;

pub const VERIFY_SAMPLES: usize = 5;
pub const VERIFY_TOLERANCE: f64 = 1e-5;
/// Oracle step in units of `1/λ`.
pub const VERIFY_STEP: f64 = 0.002;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub label: Option<String>,
    /// `(τ, max |ψ_oracle - ψ_analytic|)` per checkpoint.
    pub samples: Vec<(f64, f64)>,
}

impl VerifyReport {
    pub fn max_deviation(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }
}

/// `VERIFY_SAMPLES` evenly spaced τ values spanning the run, endpoints included.
pub fn checkpoints(config: &RunConfig) -> Vec<f64> {
    let (a, b) = (config.tau_start(), config.tau_end());
    (0..VERIFY_SAMPLES)
        .map(|k| a + (b - a) * k as f64 / (VERIFY_SAMPLES - 1) as f64)
        .collect()
}

/// Integrates each case once from τ = 0 through all checkpoints.
pub fn verify(config: &RunConfig) -> Result<Vec<VerifyReport>, VerifyError> {
    config.cases().par_iter().map(verify_case).collect()
}

pub fn verify_case(case: &Case) -> Result<VerifyReport, VerifyError> {
    let params = case.config.params();
    let oracle_err = |source| VerifyError::Oracle {
        label: case.label.clone(),
        source,
    };
    let field = params.coherent_field().map_err(oracle_err)?;
    let dt = VERIFY_STEP / params.lambda();
    let mut oracle = OracleState::initial(&field);
    let mut samples = Vec::with_capacity(VERIFY_SAMPLES);
    for tau in checkpoints(&case.config) {
        let t = tau / params.lambda();
        oracle.advance_to(params, t, dt).map_err(oracle_err)?;
        let deviation = compare(&oracle, &evolve(params, &field, t)).map_err(oracle_err)?;
        if !(deviation <= VERIFY_TOLERANCE) {
            return Err(VerifyError::Deviation {
                label: case.label.clone(),
                tau,
                deviation,
                limit: VERIFY_TOLERANCE,
            });
        }
        samples.push((tau, deviation));
    }
    Ok(VerifyReport {
        label: case.label.clone(),
        samples,
    })
}
