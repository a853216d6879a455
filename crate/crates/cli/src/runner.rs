use std::thread;

use dnwr_core::heat::monodomain_interface_trace;
use dnwr_core::laplace::{kernel_f, theoretical_error, InitialError, SymbolParams};
use dnwr_core::{dnwr_iterate, dnwr_iterate_with_reference, ConvergenceReport, Error};

use crate::config::{ExperimentKind, ExperimentSpec};
use crate::error::RunError;
use crate::output::{Cell, CsvTable, ExperimentOutput};

/// Header of the `bound_compare` table.
pub const BOUND_COMPARE_HEADER: [&str; 5] = [
    "iteration",
    "numerical_error",
    "theoretical_error",
    "linear_bound",
    "superlinear_bound",
];

/// Iteration errors below `1e6 * eps * ||h^0||_inf` are dominated by roundoff;
/// convergence ratios are only meaningful above this level.
pub fn error_floor(h0_inf: f64) -> f64 {
    1e6 * f64::EPSILON * h0_inf
}

/// `n` equispaced points of `(0, T]`.
pub fn sample_times(horizon: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| horizon * i as f64 / n as f64).collect()
}

fn horizon_suffix(horizon: f64) -> String {
    format!("T{horizon}")
}

/// Runs the experiment selected by `spec.kind`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentOutput>, RunError> {
    match spec.kind {
        ExperimentKind::SweepTheta => run_sweep_theta(spec),
        ExperimentKind::BoundCompare => run_bound_compare(spec),
        ExperimentKind::Kernels => run_kernels(spec).map(|o| vec![o]),
    }
}

/// Absolute interface errors `||h^k - u(0, .)||_inf` for every relaxation
/// parameter in `theta_list`, one table per time window. Cells after early
/// convergence (`run.tol`) stay empty.
pub fn run_sweep_theta(spec: &ExperimentSpec) -> Result<Vec<ExperimentOutput>, RunError> {
    let mut outputs = Vec::with_capacity(spec.horizons.len());
    for &horizon in &spec.horizons {
        let base = spec.config_for(horizon);
        let grids = base.grids()?;
        log::info!("sweep T = {horizon}: computing the monodomain reference");
        let reference = monodomain_interface_trace(&grids.monodomain, &base.problem)?;

        let reports: Vec<Result<ConvergenceReport, RunError>> = thread::scope(|scope| {
            let workers: Vec<_> = spec
                .theta_list
                .iter()
                .map(|&theta| {
                    let mut config = base.clone();
                    config.theta = theta;
                    let reference = &reference;
                    scope.spawn(move || {
                        log::info!("sweep T = {horizon}: theta = {theta}");
                        dnwr_iterate_with_reference(&config, reference).map(|o| o.report)
                    })
                })
                .collect();
            workers
                .into_iter()
                .map(|w| w.join().map_err(|_| RunError::Worker)?.map_err(RunError::from))
                .collect()
        });
        let errors: Vec<Vec<f64>> = reports
            .into_iter()
            .map(|r| r.map(|report| report.errors()))
            .collect::<Result<_, _>>()?;

        let mut table = CsvTable::new(
            std::iter::once("iteration".to_string()).chain(spec.theta_list.iter().map(|t| format!("theta_{t}"))),
        );
        for k in 0..=base.max_iter {
            let mut row = vec![Cell::Index(k)];
            row.extend(errors.iter().map(|e| e.get(k).map_or(Cell::Empty, |&v| Cell::Value(v))));
            table.push_row(row);
        }
        table.check_finite()?;
        outputs.push(ExperimentOutput {
            suffix: Some(horizon_suffix(horizon)),
            table,
            notes: Vec::new(),
        });
    }
    Ok(outputs)
}

/// Numerical error next to the continuous-model error and both bounds, for
/// `theta = 1/2`, one table per time window. All columns are absolute:
/// the bounds are scaled by the measured initial error, and the continuous
/// error, computed from the ramp `h^0(t) = t` on `time_samples` points, is
/// scaled by the same initial error relative to the ramp's.
pub fn run_bound_compare(spec: &ExperimentSpec) -> Result<Vec<ExperimentOutput>, RunError> {
    let mut outputs = Vec::with_capacity(spec.horizons.len());
    for &horizon in &spec.horizons {
        let config = spec.config_for(horizon);
        log::info!("bound_compare T = {horizon}");
        let outcome = dnwr_iterate(&config)?;
        let p = config.symbol_params()?;
        let times = sample_times(horizon, spec.time_samples);
        let e0 = outcome.report.initial_error();
        let ramp_inf = times.iter().fold(0.0f64, |m, t| m.max(t.abs()));

        let mut table = CsvTable::new(BOUND_COMPARE_HEADER);
        let mut notes = Vec::new();
        for record in &outcome.report.records {
            let k = record.iteration;
            let hk = theoretical_error(&InitialError::Ramp, k, &p, &times)?;
            let hk_inf = hk.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let missing = || Error::Hypothesis("bounds need theta = 1/2".into());
            let linear = record.linear_bound.ok_or_else(missing)?;
            let superlinear = record.superlinear_bound.ok_or_else(missing)?;
            if record.superlinear_even_index {
                notes.push(format!(
                    "T = {horizon}, iteration {k}: superlinear_bound is the even-index estimate of iteration {}",
                    k - 1
                ));
            }
            table.push_row(vec![
                Cell::Index(k),
                Cell::Value(record.error_inf),
                Cell::Value(hk_inf / ramp_inf * e0),
                Cell::Value(linear),
                Cell::Value(superlinear),
            ]);
        }
        table.check_finite()?;
        outputs.push(ExperimentOutput {
            suffix: Some(horizon_suffix(horizon)),
            table,
            notes,
        });
    }
    Ok(outputs)
}

/// Kernels `F_k(t)` for `k` in `k_list` on `time_samples` points of `(0, T]`.
/// A failed inversion leaves its cell empty and adds a note.
pub fn run_kernels(spec: &ExperimentSpec) -> Result<ExperimentOutput, RunError> {
    let config = &spec.config;
    let p = SymbolParams::new(config.a, config.b, config.theta)?;
    if p.is_symmetric() {
        return Err(Error::Hypothesis("kernels need a != b".into()).into());
    }
    let mut table = CsvTable::new(std::iter::once("t".to_string()).chain(spec.k_list.iter().map(|k| format!("F_{k}"))));
    let mut notes = Vec::new();
    for t in sample_times(config.horizon, spec.time_samples) {
        let mut row = vec![Cell::Value(t)];
        for &k in &spec.k_list {
            row.push(match kernel_f(k, t, &p) {
                Ok(v) if v.is_finite() => Cell::Value(v),
                Ok(_) | Err(Error::InversionFailure { .. }) => {
                    notes.push(format!("F_{k} at t = {t}: inversion failed, cell left empty"));
                    Cell::Empty
                }
                Err(e) => return Err(e.into()),
            });
        }
        table.push_row(row);
    }
    table.check_finite()?;
    Ok(ExperimentOutput {
        suffix: None,
        table,
        notes,
    })
}
