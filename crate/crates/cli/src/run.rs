use rayon::prelude::*;

use jcm_core::entanglement::field_entropy;
use jcm_core::squeezing::{entropy_pair, HermiteTable, QuadratureGrid};
use jcm_core::statistics::{mandel_q, quadrature_squeezing};
use jcm_core::{evolve, Error as CoreError};

use crate::config::{Case, Observable, RunConfig};
use crate::error::RunError;

/// Sampled observables of one case. Columns that were not requested are `None`;
/// requested columns have one value per entry of `tau`.
#[derive(Debug, Clone)]
pub struct ObservableSeries {
    pub label: Option<String>,
    pub config: RunConfig,
    pub tau: Vec<f64>,
    pub s_f: Option<Vec<f64>>,
    pub e_x: Option<Vec<f64>>,
    pub e_p: Option<Vec<f64>>,
    pub big_e_x: Option<Vec<f64>>,
    pub big_e_p: Option<Vec<f64>>,
    /// `None` entries mark samples where the Mandel parameter is undefined.
    pub q: Option<Vec<Option<f64>>>,
    pub v_x: Option<Vec<f64>>,
    pub v_p: Option<Vec<f64>>,
}

impl ObservableSeries {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Sample {
    s_f: f64,
    e_x: f64,
    e_p: f64,
    big_e_x: f64,
    big_e_p: f64,
    q: Option<f64>,
    v_x: f64,
    v_p: f64,
}

/// Runs every case of the config, in sweep order.
pub fn run(config: &RunConfig) -> Result<Vec<ObservableSeries>, RunError> {
    config.cases().iter().map(run_case).collect()
}

/// Evaluates one case on its τ grid. Samples are computed in parallel and
/// gathered in grid order, so the result does not depend on scheduling.
pub fn run_case(case: &Case) -> Result<ObservableSeries, RunError> {
    let config = &case.config;
    let params = config.params();
    let tau = config.tau_grid();
    let fail = |tau: f64, source: CoreError| RunError {
        tau,
        label: case.label.clone(),
        source,
    };
    let field = params
        .coherent_field()
        .map_err(|e| fail(config.tau_start(), e))?;

    let wants_entropy = config.wants(Observable::Entropy);
    let wants_squeezing = config.wants(Observable::EntropySqueezing);
    let wants_mandel = config.wants(Observable::Mandel);
    let wants_quadrature = config.wants(Observable::Quadrature);

    let table = if wants_squeezing {
        let half_width = QuadratureGrid::for_alpha(params.alpha()).half_width();
        let grid = QuadratureGrid::new(half_width, config.grid_points())
            .map_err(|e| fail(config.tau_start(), e))?;
        Some(HermiteTable::new(grid, params.n_max()))
    } else {
        None
    };

    let samples: Vec<Sample> = tau
        .par_iter()
        .map(|&tau| {
            let state = evolve(params, &field, tau / params.lambda());
            let mut s = Sample::default();
            if wants_entropy {
                s.s_f = field_entropy(&state);
            }
            if let Some(table) = &table {
                let pair = entropy_pair(&state, table).map_err(|e| fail(tau, e))?;
                s.e_x = pair.e_x;
                s.e_p = pair.e_p;
                s.big_e_x = pair.big_e_x;
                s.big_e_p = pair.big_e_p;
            }
            if wants_mandel {
                s.q = match mandel_q(&state) {
                    Ok(q) => Some(q),
                    Err(CoreError::UndefinedStatistic { .. }) => None,
                    Err(e) => return Err(fail(tau, e)),
                };
            }
            if wants_quadrature {
                (s.v_x, s.v_p) = quadrature_squeezing(&state).map_err(|e| fail(tau, e))?;
            }
            Ok(s)
        })
        .collect::<Result<_, _>>()?;

    let column = |on: bool, f: fn(&Sample) -> f64| on.then(|| samples.iter().map(f).collect());
    Ok(ObservableSeries {
        label: case.label.clone(),
        config: config.clone(),
        s_f: column(wants_entropy, |s| s.s_f),
        e_x: column(wants_squeezing, |s| s.e_x),
        e_p: column(wants_squeezing, |s| s.e_p),
        big_e_x: column(wants_squeezing, |s| s.big_e_x),
        big_e_p: column(wants_squeezing, |s| s.big_e_p),
        q: wants_mandel.then(|| samples.iter().map(|s| s.q).collect()),
        v_x: column(wants_quadrature, |s| s.v_x),
        v_p: column(wants_quadrature, |s| s.v_p),
        tau,
    })
}
