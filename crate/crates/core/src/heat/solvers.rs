//! Backward-Euler / centered-difference solvers for `u_t = u_xx + f`.
//!
//! Every solver marches row by row and hands each completed time level to a
//! visitor. The public functions collect full [`SpaceTimeSolution`]s; the
//! relaxation engine uses the same marches but only keeps the columns it
//! needs, which keeps long time windows affordable.

use super::grid::{same_step, Grid1D, InterfaceTrace, SpaceTimeSolution};
use super::problem::{ProblemData, Source};
use super::tridiag::TridiagonalLu;
use crate::error::{Error, Result};

/// Dirichlet data for one end of a subdomain.
#[derive(Debug, Clone, Copy)]
pub enum Boundary<'a> {
    /// Use the problem's own boundary function for this side.
    Problem,
    /// Use the given samples at `t_1, ..., t_nt`.
    Trace(&'a InterfaceTrace),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

impl Boundary<'_> {
    fn check(&self, grid: &Grid1D) -> Result<()> {
        match self {
            Boundary::Problem => Ok(()),
            Boundary::Trace(trace) => check_trace(trace, grid),
        }
    }

    fn value(&self, data: &ProblemData, side: Side, n: usize, t: f64) -> f64 {
        match (self, side) {
            (Boundary::Trace(trace), _) => trace.at(n),
            (Boundary::Problem, Side::Left) => (data.boundary_left)(t),
            (Boundary::Problem, Side::Right) => (data.boundary_right)(t),
        }
    }
}

fn check_trace(trace: &InterfaceTrace, grid: &Grid1D) -> Result<()> {
    trace.check_len(grid.nt(), "boundary trace")?;
    if !same_step(trace.dt(), grid.dt()) {
        return Err(Error::GridAlignment(format!(
            "trace time step {} differs from grid time step {}",
            trace.dt(),
            grid.dt()
        )));
    }
    Ok(())
}

/// Source values on a fixed set of nodes, with the spatial part cached when
/// the source is separable.
struct SourceSampler<'a> {
    source: &'a Source,
    xs: Vec<f64>,
    profile: Vec<f64>,
}

impl<'a> SourceSampler<'a> {
    fn new(source: &'a Source, xs: Vec<f64>) -> Self {
        let profile = match source {
            Source::Separable { space, .. } => xs.iter().map(|&x| space(x)).collect(),
            _ => Vec::new(),
        };
        Self { source, xs, profile }
    }

    /// Adds `scale * f(x_j, t)` to `out[j]`.
    fn add_scaled(&self, t: f64, scale: f64, out: &mut [f64]) {
        match self.source {
            Source::Zero => {}
            Source::Separable { time, .. } => {
                let s = scale * time(t);
                for (o, p) in out.iter_mut().zip(&self.profile) {
                    *o += s * p;
                }
            }
            Source::General(f) => {
                for (o, &x) in out.iter_mut().zip(&self.xs) {
                    *o += scale * f(x, t);
                }
            }
        }
    }
}

fn initial_row(grid: &Grid1D, data: &ProblemData) -> Vec<f64> {
    (0..grid.node_count()).map(|i| (data.initial)(grid.x(i))).collect()
}

/// Dirichlet data on both ends. Row `0` is `u0` sampled on every node,
/// boundary nodes included.
pub(crate) fn march_dirichlet(
    grid: &Grid1D,
    data: &ProblemData,
    left: Boundary<'_>,
    right: Boundary<'_>,
    mut visit: impl FnMut(usize, &[f64]),
) -> Result<()> {
    left.check(grid)?;
    right.check(grid)?;

    let nx = grid.nx();
    let dt = grid.dt();
    let r = dt / (grid.dx() * grid.dx());
    let lu = TridiagonalLu::factor(&vec![-r; nx - 1], &vec![1.0 + 2.0 * r; nx], &vec![-r; nx - 1])?;
    let source = SourceSampler::new(&data.source, (1..=nx).map(|i| grid.x(i)).collect());

    let mut row = initial_row(grid, data);
    visit(0, &row);
    let mut rhs = vec![0.0; nx];
    for n in 1..=grid.nt() {
        let t = grid.t(n);
        let gl = left.value(data, Side::Left, n, t);
        let gr = right.value(data, Side::Right, n, t);
        rhs.copy_from_slice(&row[1..=nx]);
        source.add_scaled(t, dt, &mut rhs);
        rhs[0] += r * gl;
        rhs[nx - 1] += r * gr;
        lu.solve_in_place(&mut rhs);
        row[0] = gl;
        row[1..=nx].copy_from_slice(&rhs);
        row[nx + 1] = gr;
        visit(n, &row);
    }
    Ok(())
}

/// Imposed flux `u_x(x_left, t_n)` on the left end, Dirichlet data on the right.
///
/// The left node is an unknown. The centered stencil there uses a ghost node
/// eliminated through `(u_1 - u_ghost) / (2 dx) = flux`, which gives the row
/// `(1 + 2r) u_0 - 2r u_1 = u_0^old + dt f - 2 r dx flux`.
pub(crate) fn march_neumann(
    grid: &Grid1D,
    data: &ProblemData,
    flux: &InterfaceTrace,
    right: Boundary<'_>,
    mut visit: impl FnMut(usize, &[f64]),
) -> Result<()> {
    check_trace(flux, grid)?;
    right.check(grid)?;

    let nx = grid.nx();
    let m = nx + 1;
    let dt = grid.dt();
    let dx = grid.dx();
    let r = dt / (dx * dx);
    let mut upper = vec![-r; m - 1];
    upper[0] = -2.0 * r;
    let lu = TridiagonalLu::factor(&vec![-r; m - 1], &vec![1.0 + 2.0 * r; m], &upper)?;
    let source = SourceSampler::new(&data.source, (0..=nx).map(|i| grid.x(i)).collect());

    let mut row = initial_row(grid, data);
    visit(0, &row);
    let mut rhs = vec![0.0; m];
    for n in 1..=grid.nt() {
        let t = grid.t(n);
        let gr = right.value(data, Side::Right, n, t);
        rhs.copy_from_slice(&row[..m]);
        source.add_scaled(t, dt, &mut rhs);
        rhs[0] -= 2.0 * r * dx * flux.at(n);
        rhs[m - 1] += r * gr;
        lu.solve_in_place(&mut rhs);
        row[..m].copy_from_slice(&rhs);
        row[m] = gr;
        visit(n, &row);
    }
    Ok(())
}

/// Solves the heat equation with Dirichlet data on both ends.
///
/// For the Dirichlet subdomain `(-b, 0)` the left side is normally
/// [`Boundary::Problem`] and the right side the interface trace `h^k`.
pub fn dirichlet_solve(
    grid: &Grid1D,
    data: &ProblemData,
    left: Boundary<'_>,
    right: Boundary<'_>,
) -> Result<SpaceTimeSolution> {
    let mut out = SpaceTimeSolution::with_capacity(*grid);
    march_dirichlet(grid, data, left, right, |_, row| out.push_row(row))?;
    Ok(out)
}

/// Solves the heat equation with the flux `u_x(x_left, t)` imposed on the left
/// end and Dirichlet data on the right. The interface value `u(x_left, t_n)`
/// comes out of the solve and is stored in column `0`.
pub fn neumann_solve(
    grid: &Grid1D,
    data: &ProblemData,
    flux: &InterfaceTrace,
    right: Boundary<'_>,
) -> Result<SpaceTimeSolution> {
    let mut out = SpaceTimeSolution::with_capacity(*grid);
    march_neumann(grid, data, flux, right, |_, row| out.push_row(row))?;
    Ok(out)
}

/// Reference solution on the undecomposed domain. The grid must have `x = 0`
/// as an interior node.
pub fn monodomain_solve(grid: &Grid1D, data: &ProblemData) -> Result<SpaceTimeSolution> {
    interface_node(grid)?;
    dirichlet_solve(grid, data, Boundary::Problem, Boundary::Problem)
}

/// `u(0, t_n)` of the monodomain solution without storing the full solution.
pub fn monodomain_interface_trace(grid: &Grid1D, data: &ProblemData) -> Result<InterfaceTrace> {
    let i0 = interface_node(grid)?;
    let mut samples = Vec::with_capacity(grid.nt());
    march_dirichlet(grid, data, Boundary::Problem, Boundary::Problem, |n, row| {
        if n > 0 {
            samples.push(row[i0]);
        }
    })?;
    Ok(InterfaceTrace::new(grid.dt(), samples))
}

/// Index of the interior node at `x = 0`.
pub fn interface_node(grid: &Grid1D) -> Result<usize> {
    match grid.node_index(0.0) {
        Some(i) if i >= 1 && i <= grid.nx() => Ok(i),
        _ => Err(Error::GridAlignment(format!(
            "x = 0 is not an interior node of [{}, {}] with dx = {}",
            grid.x_left(),
            grid.x_right(),
            grid.dx()
        ))),
    }
}

/// How the Dirichlet subdomain's normal derivative at its right end is read off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FluxScheme {
    /// Discrete flux balance on the half cell next to the interface,
    /// `(u_N - u_{N-1})/dx + (dx/2) (D_t u_N - f)`. Paired with the ghost-node
    /// Neumann closure it makes the monodomain solution an exact fixed point
    /// of the discrete relaxation.
    #[default]
    Conservative,
    /// Spatial one-sided formula `(3 u_N - 4 u_{N-1} + u_{N-2}) / (2 dx)`.
    OneSided,
}

/// Streaming flux reader fed with the rows of a Dirichlet solve.
pub(crate) struct FluxProbe<'a> {
    scheme: FluxScheme,
    dx: f64,
    dt: f64,
    x_interface: f64,
    source: &'a Source,
    previous: f64,
    samples: Vec<f64>,
}

impl<'a> FluxProbe<'a> {
    pub(crate) fn new(scheme: FluxScheme, grid: &Grid1D, source: &'a Source) -> Result<Self> {
        let required = match scheme {
            FluxScheme::OneSided => 2,
            FluxScheme::Conservative => 1,
        };
        if grid.nx() < required {
            return Err(Error::InsufficientStencil {
                nx: grid.nx(),
                required,
            });
        }
        Ok(Self {
            scheme,
            dx: grid.dx(),
            dt: grid.dt(),
            x_interface: grid.x_right(),
            source,
            previous: f64::NAN,
            samples: Vec::with_capacity(grid.nt()),
        })
    }

    pub(crate) fn observe(&mut self, n: usize, row: &[f64]) {
        let last = row.len() - 1;
        if n > 0 {
            let q = match self.scheme {
                FluxScheme::OneSided => (3.0 * row[last] - 4.0 * row[last - 1] + row[last - 2]) / (2.0 * self.dx),
                FluxScheme::Conservative => {
                    let t = n as f64 * self.dt;
                    let dudt = (row[last] - self.previous) / self.dt;
                    (row[last] - row[last - 1]) / self.dx
                        + 0.5 * self.dx * (dudt - self.source.eval(self.x_interface, t))
                }
            };
            self.samples.push(q);
        }
        self.previous = row[last];
    }

    pub(crate) fn finish(self) -> InterfaceTrace {
        InterfaceTrace::new(self.dt, self.samples)
    }
}

fn read_flux(solution: &SpaceTimeSolution, scheme: FluxScheme, source: &Source) -> Result<InterfaceTrace> {
    let grid = solution.grid();
    let mut probe = FluxProbe::new(scheme, grid, source)?;
    for n in 0..=grid.nt() {
        probe.observe(n, solution.row(n));
    }
    Ok(probe.finish())
}

/// One-sided second-order approximation of `u_x` at the right end of the grid
/// (the interface `x = 0` for the Dirichlet subdomain), for `t_1, ..., t_nt`.
/// Exact on functions quadratic in `x`.
pub fn extract_interface_flux(solution: &SpaceTimeSolution) -> Result<InterfaceTrace> {
    read_flux(solution, FluxScheme::OneSided, &Source::Zero)
}

/// Flux at the right end computed from the discrete balance on the last half
/// cell. Needs the source term of the problem the solution belongs to.
pub fn extract_interface_flux_conservative(solution: &SpaceTimeSolution, data: &ProblemData) -> Result<InterfaceTrace> {
    read_flux(solution, FluxScheme::Conservative, &data.source)
}
