//! The Dirichlet-Neumann waveform relaxation loop.
//!
//! One sweep solves the Dirichlet subdomain `(-b, 0)` with interface data
//! `h^k`, reads the flux at `x = 0`, solves the Neumann subdomain `(0, a)`
//! with that flux, and relaxes: `h^{k+1} = theta u_2(0, .) + (1 - theta) h^k`.
//! Errors are measured against the monodomain solution on the same grid.

use crate::error::{Error, Result};
use crate::heat::{
    interface_node, march_dirichlet, march_neumann, monodomain_interface_trace, same_step, whole_multiple, Boundary,
    FluxProbe, FluxScheme, Grid1D, InterfaceTrace, ProblemData, SpaceTimeSolution, TimeFn,
};
use crate::laplace::{linear_bound, superlinear_bound, superlinear_uses_even_index, BoundParams, SymbolParams};

/// `h^0` on the interface.
#[derive(Clone)]
pub enum InitialGuess {
    /// `h^0(t) = t`.
    Ramp,
    Zero,
    Function(TimeFn),
    /// Samples at `t_1, ..., t_nt`.
    Trace(InterfaceTrace),
}

impl std::fmt::Debug for InitialGuess {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitialGuess::Ramp => f.write_str("Ramp"),
            InitialGuess::Zero => f.write_str("Zero"),
            InitialGuess::Function(_) => f.write_str("Function"),
            InitialGuess::Trace(t) => f.debug_tuple("Trace").field(&t.nt()).finish(),
        }
    }
}

impl InitialGuess {
    fn to_trace(&self, nt: usize, dt: f64) -> Result<InterfaceTrace> {
        match self {
            InitialGuess::Ramp => Ok(InterfaceTrace::sample(nt, dt, |t| t)),
            InitialGuess::Zero => Ok(InterfaceTrace::zeros(nt, dt)),
            InitialGuess::Function(f) => Ok(InterfaceTrace::sample(nt, dt, |t| f(t))),
            InitialGuess::Trace(trace) => {
                trace.check_len(nt, "initial guess")?;
                Ok(trace.clone())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct DnwrConfig {
    /// Length of the Dirichlet subdomain `(-b, 0)`.
    pub b: f64,
    /// Length of the Neumann subdomain `(0, a)`.
    pub a: f64,
    pub theta: f64,
    /// Time window `T`.
    pub horizon: f64,
    pub dx: f64,
    pub dt: f64,
    pub max_iter: usize,
    /// Stop once `||h^{k+1} - h^k||_inf < tol`.
    pub tol: f64,
    pub initial_guess: InitialGuess,
    pub problem: ProblemData,
    pub flux_scheme: FluxScheme,
    /// Keep the subdomain solutions of the last sweep in the outcome.
    pub keep_solutions: bool,
}

/// Grids of the two subdomains and of the undecomposed domain.
#[derive(Debug, Clone, Copy)]
pub struct SubdomainGrids {
    pub dirichlet: Grid1D,
    pub neumann: Grid1D,
    pub monodomain: Grid1D,
}

impl DnwrConfig {
    /// The benchmark setup: `(-3, 2)` split at `x = 0`, `dx = 0.02`,
    /// `dt = 4e-4`, `theta = 1/2`, `h^0(t) = t`.
    pub fn model_problem(horizon: f64) -> Self {
        Self {
            b: 3.0,
            a: 2.0,
            theta: 0.5,
            horizon,
            dx: 2e-2,
            dt: 4e-4,
            max_iter: 10,
            tol: 0.0,
            initial_guess: InitialGuess::Ramp,
            problem: ProblemData::model_problem(),
            flux_scheme: FluxScheme::default(),
            keep_solutions: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.a > 0.0 && self.b > 0.0) || !(self.a.is_finite() && self.b.is_finite()) {
            return bad(format!(
                "subdomain lengths must be positive (a = {}, b = {})",
                self.a, self.b
            ));
        }
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return bad(format!("theta = {} is outside (0, 1]", self.theta));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad(format!("time horizon T = {} must be positive", self.horizon));
        }
        if !(self.dx > 0.0 && self.dt > 0.0) {
            return bad(format!(
                "grid steps must be positive (dx = {}, dt = {})",
                self.dx, self.dt
            ));
        }
        if self.max_iter < 1 {
            return bad("max_iter must be at least 1".into());
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return bad(format!("tol = {} must be non-negative", self.tol));
        }
        for (name, len) in [("a", self.a), ("b", self.b)] {
            if whole_multiple(len, self.dx).is_none() {
                return bad(format!("{name}/dx = {} must be an integer", len / self.dx));
            }
        }
        self.nt().map(|_| ())
    }

    /// Number of time steps, `T / dt`.
    pub fn nt(&self) -> Result<usize> {
        whole_multiple(self.horizon, self.dt)
            .ok_or_else(|| Error::InvalidConfig(format!("T/dt = {} must be an integer", self.horizon / self.dt)))
    }

    pub fn grids(&self) -> Result<SubdomainGrids> {
        self.validate()?;
        let nt = self.nt()?;
        Ok(SubdomainGrids {
            dirichlet: Grid1D::with_spacing(-self.b, 0.0, self.dx, nt, self.dt)?,
            neumann: Grid1D::with_spacing(0.0, self.a, self.dx, nt, self.dt)?,
            monodomain: Grid1D::with_spacing(-self.b, self.a, self.dx, nt, self.dt)?,
        })
    }

    pub fn symbol_params(&self) -> Result<SymbolParams> {
        SymbolParams::new(self.a, self.b, self.theta)
    }

    fn bounds_apply(&self) -> bool {
        (self.theta - 0.5).abs() <= 1e-12
    }
}

/// Returns `theta * new + (1 - theta) * old`.
pub fn relax_update(new: &InterfaceTrace, old: &InterfaceTrace, theta: f64) -> Result<InterfaceTrace> {
    new.check_compatible(old)?;
    Ok(InterfaceTrace::new(
        new.dt(),
        new.samples()
            .iter()
            .zip(old.samples())
            .map(|(n, o)| theta * n + (1.0 - theta) * o)
            .collect(),
    ))
}

/// `max_n |h(t_n) - u_ref(0, t_n)|` over `n = 1..=nt`.
pub fn interface_error(trace: &InterfaceTrace, reference: &SpaceTimeSolution) -> Result<f64> {
    let grid = reference.grid();
    let i0 = interface_node(grid)?;
    trace.check_len(grid.nt(), "interface trace")?;
    if !same_step(trace.dt(), grid.dt()) {
        return Err(Error::GridAlignment(format!(
            "trace time step {} differs from reference time step {}",
            trace.dt(),
            grid.dt()
        )));
    }
    Ok(trace
        .samples()
        .iter()
        .enumerate()
        .fold(0.0, |m, (j, h)| m.max((h - reference.at(j + 1, i0)).abs())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `||h^k - u(0, .)||_inf` at the time nodes.
    pub error_inf: f64,
    /// `||h^k - h^{k-1}||_inf`; absent for `k = 0`.
    pub increment_inf: Option<f64>,
    /// Linear bound times the initial error; only for `theta = 1/2`.
    pub linear_bound: Option<f64>,
    /// Superlinear bound times the initial error; only for `theta = 1/2`.
    pub superlinear_bound: Option<f64>,
    /// The superlinear value is the even-index estimate reused at an odd `k`.
    pub superlinear_even_index: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceReport {
    /// Contiguous from `k = 0`.
    pub records: Vec<IterationRecord>,
    pub converged_at: Option<usize>,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.error_inf).collect()
    }

    pub fn initial_error(&self) -> f64 {
        self.records.first().map_or(0.0, |r| r.error_inf)
    }
}

#[derive(Debug, Clone)]
pub struct DnwrOutcome {
    pub report: ConvergenceReport,
    /// Last interface iterate.
    pub trace: InterfaceTrace,
    /// `u(0, t_n)` of the monodomain solution.
    pub reference: InterfaceTrace,
    /// Subdomain solutions of the last sweep, when requested.
    pub dirichlet: Option<SpaceTimeSolution>,
    pub neumann: Option<SpaceTimeSolution>,
}

/// Runs the relaxation, computing the monodomain reference first.
pub fn dnwr_iterate(config: &DnwrConfig) -> Result<DnwrOutcome> {
    let grids = config.grids()?;
    let reference = monodomain_interface_trace(&grids.monodomain, &config.problem)?;
    run(config, grids, reference)
}

/// Runs the relaxation against a precomputed reference interface trace, e.g.
/// when several relaxation parameters share one problem.
pub fn dnwr_iterate_with_reference(config: &DnwrConfig, reference: &InterfaceTrace) -> Result<DnwrOutcome> {
    let grids = config.grids()?;
    reference.check_len(grids.monodomain.nt(), "reference trace")?;
    run(config, grids, reference.clone())
}

struct Sweep {
    interface: InterfaceTrace,
    dirichlet: Option<SpaceTimeSolution>,
    neumann: Option<SpaceTimeSolution>,
}

fn sweep(config: &DnwrConfig, grids: &SubdomainGrids, h: &InterfaceTrace, iteration: usize) -> Result<Sweep> {
    let data = &config.problem;
    let keep = config.keep_solutions;

    let mut probe = FluxProbe::new(config.flux_scheme, &grids.dirichlet, &data.source)?;
    let mut dirichlet = keep.then(|| SpaceTimeSolution::with_capacity(grids.dirichlet));
    march_dirichlet(
        &grids.dirichlet,
        data,
        Boundary::Problem,
        Boundary::Trace(h),
        |n, row| {
            probe.observe(n, row);
            if let Some(s) = dirichlet.as_mut() {
                s.push_row(row);
            }
        },
    )?;
    let flux = probe.finish();
    if !flux.is_finite() {
        return Err(Error::Divergence { iteration });
    }

    let mut samples = Vec::with_capacity(grids.neumann.nt());
    let mut neumann = keep.then(|| SpaceTimeSolution::with_capacity(grids.neumann));
    march_neumann(&grids.neumann, data, &flux, Boundary::Problem, |n, row| {
        if n > 0 {
            samples.push(row[0]);
        }
        if let Some(s) = neumann.as_mut() {
            s.push_row(row);
        }
    })?;
    Ok(Sweep {
        interface: InterfaceTrace::new(grids.neumann.dt(), samples),
        dirichlet,
        neumann,
    })
}

fn run(config: &DnwrConfig, grids: SubdomainGrids, reference: InterfaceTrace) -> Result<DnwrOutcome> {
    let nt = grids.monodomain.nt();
    let mut h = config.initial_guess.to_trace(nt, config.dt)?;
    if !h.is_finite() {
        return Err(Error::Divergence { iteration: 0 });
    }

    let bounds = if config.bounds_apply() {
        Some((
            config.symbol_params()?,
            BoundParams::new(config.a, config.b, config.horizon)?,
        ))
    } else {
        None
    };
    let e0 = h.sup_distance(&reference)?;
    let record = |k: usize, error_inf: f64, increment_inf: Option<f64>| -> Result<IterationRecord> {
        let (linear, superlinear, even) = match &bounds {
            Some((p, bp)) => (
                Some(linear_bound(k, p)? * e0),
                Some(superlinear_bound(k, bp) * e0),
                superlinear_uses_even_index(k, bp),
            ),
            None => (None, None, false),
        };
        Ok(IterationRecord {
            iteration: k,
            error_inf,
            increment_inf,
            linear_bound: linear,
            superlinear_bound: superlinear,
            superlinear_even_index: even,
        })
    };

    let mut report = ConvergenceReport {
        records: vec![record(0, e0, None)?],
        converged_at: None,
    };
    let mut dirichlet = None;
    let mut neumann = None;
    for k in 0..config.max_iter {
        let next = k + 1;
        let Sweep {
            interface,
            dirichlet: d,
            neumann: n,
        } = sweep(config, &grids, &h, next)?;
        let h_next = relax_update(&interface, &h, config.theta)?;
        if !h_next.is_finite() {
            return Err(Error::Divergence { iteration: next });
        }
        let increment = h_next.sup_distance(&h)?;
        let error = h_next.sup_distance(&reference)?;
        report.records.push(record(next, error, Some(increment))?);
        h = h_next;
        dirichlet = d;
        neumann = n;
        if increment < config.tol {
            report.converged_at = Some(next);
            break;
        }
    }

    Ok(DnwrOutcome {
        report,
        trace: h,
        reference,
        dirichlet,
        neumann,
    })
}
