use crate::error::{Error, Result};

/// Relative tolerance used when deciding whether a length is an integer
/// multiple of a step.
const ALIGN_RTOL: f64 = 1e-9;

/// Uniform space-time grid on `[x_left, x_right] x [0, nt*dt]`.
///
/// Nodes are numbered `0..=nx+1`; nodes `0` and `nx+1` sit on the boundary,
/// so `dx = (x_right - x_left) / (nx + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_left: f64,
    x_right: f64,
    nx: usize,
    dx: f64,
    nt: usize,
    dt: f64,
}

impl Grid1D {
    pub fn new(x_left: f64, x_right: f64, nx: usize, nt: usize, dt: f64) -> Result<Self> {
        if !(x_left.is_finite() && x_right.is_finite()) || x_right <= x_left {
            return Err(Error::InvalidGrid(format!(
                "interval [{x_left}, {x_right}] is empty or not finite"
            )));
        }
        if nx < 1 {
            return Err(Error::InvalidGrid("need at least one interior node".into()));
        }
        if nt < 1 {
            return Err(Error::InvalidGrid("need at least one time step".into()));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidGrid(format!("time step {dt} must be positive")));
        }
        Ok(Self {
            x_left,
            x_right,
            nx,
            dx: (x_right - x_left) / (nx + 1) as f64,
            nt,
            dt,
        })
    }

    /// Builds a grid from a target spacing, requiring the interval length to be
    /// an integer number of cells.
    pub fn with_spacing(x_left: f64, x_right: f64, dx: f64, nt: usize, dt: f64) -> Result<Self> {
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing {dx} must be positive")));
        }
        let cells = whole_multiple(x_right - x_left, dx).ok_or_else(|| {
            Error::GridAlignment(format!(
                "length {} is not an integer multiple of dx = {dx}",
                x_right - x_left
            ))
        })?;
        if cells < 2 {
            return Err(Error::InvalidGrid(format!(
                "[{x_left}, {x_right}] with dx = {dx} has no interior node"
            )));
        }
        Self::new(x_left, x_right, cells - 1, nt, dt)
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    /// Number of interior nodes.
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// Total number of nodes, boundaries included.
    pub fn node_count(&self) -> usize {
        self.nx + 2
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Time horizon `T = nt * dt`.
    pub fn horizon(&self) -> f64 {
        self.nt as f64 * self.dt
    }

    pub fn x(&self, i: usize) -> f64 {
        if i == self.nx + 1 {
            self.x_right
        } else {
            self.x_left + i as f64 * self.dx
        }
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    /// Index of the node located at `x`, if any.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let offset = (x - self.x_left) / self.dx;
        let i = offset.round();
        if i < 0.0 || i > (self.nx + 1) as f64 {
            return None;
        }
        ((offset - i).abs() <= ALIGN_RTOL * offset.abs().max(1.0)).then_some(i as usize)
    }
}

/// Returns `length / step` when it is (numerically) a positive integer.
pub(crate) fn whole_multiple(length: f64, step: f64) -> Option<usize> {
    let ratio = length / step;
    let rounded = ratio.round();
    (rounded >= 1.0 && (ratio - rounded).abs() <= ALIGN_RTOL * rounded).then_some(rounded as usize)
}

/// Time samples of a scalar quantity at `t_n = n*dt`, `n = 1..=nt`.
///
/// The `t = 0` value is fixed by the initial condition and is not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceTrace {
    dt: f64,
    samples: Vec<f64>,
}

impl InterfaceTrace {
    pub fn new(dt: f64, samples: Vec<f64>) -> Self {
        Self { dt, samples }
    }

    pub fn zeros(nt: usize, dt: f64) -> Self {
        Self::new(dt, vec![0.0; nt])
    }

    /// Samples `f` at `t_1, ..., t_nt`.
    pub fn sample(nt: usize, dt: f64, f: impl Fn(f64) -> f64) -> Self {
        Self::new(dt, (1..=nt).map(|n| f(n as f64 * dt)).collect())
    }

    pub fn nt(&self) -> usize {
        self.samples.len()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Value at time level `n` (1-based, `1..=nt`).
    pub fn at(&self, n: usize) -> f64 {
        self.samples[n - 1]
    }

    /// Sample times `t_1, ..., t_nt`.
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.nt()).map(|n| n as f64 * self.dt)
    }

    /// Discrete L-infinity norm over the stored samples.
    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max_n |self(t_n) - other(t_n)|`.
    pub fn sup_distance(&self, other: &InterfaceTrace) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|v| v.is_finite())
    }

    pub(crate) fn check_compatible(&self, other: &InterfaceTrace) -> Result<()> {
        self.check_len(other.nt(), "interface trace")?;
        if !same_step(self.dt, other.dt) {
            return Err(Error::GridAlignment(format!(
                "time steps differ: {} vs {}",
                self.dt, other.dt
            )));
        }
        Ok(())
    }

    pub(crate) fn check_len(&self, nt: usize, what: &'static str) -> Result<()> {
        if self.nt() != nt {
            return Err(Error::DimensionMismatch {
                what,
                expected: nt,
                found: self.nt(),
            });
        }
        Ok(())
    }
}

pub(crate) fn same_step(a: f64, b: f64) -> bool {
    (a - b).abs() <= ALIGN_RTOL * a.abs().max(b.abs())
}

/// Nodal values on a [`Grid1D`], stored time-major: row `n` holds the
/// `nx + 2` node values at `t_n`, rows `0..=nt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeSolution {
    grid: Grid1D,
    values: Vec<f64>,
}

impl SpaceTimeSolution {
    pub(crate) fn with_capacity(grid: Grid1D) -> Self {
        Self {
            grid,
            values: Vec::with_capacity((grid.nt() + 1) * grid.node_count()),
        }
    }

    pub(crate) fn push_row(&mut self, row: &[f64]) {
        debug_assert_eq!(row.len(), self.grid.node_count());
        self.values.extend_from_slice(row);
    }

    /// Builds a solution from time-major values, e.g. to feed hand-made data to
    /// [`extract_interface_flux`](crate::heat::extract_interface_flux).
    pub fn from_values(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        let expected = (grid.nt() + 1) * grid.node_count();
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "space-time values",
                expected,
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    /// Samples `u(x, t)` on every node and time level.
    pub fn from_fn(grid: Grid1D, u: impl Fn(f64, f64) -> f64) -> Self {
        let mut out = Self::with_capacity(grid);
        for n in 0..=grid.nt() {
            let t = grid.t(n);
            out.values.extend((0..grid.node_count()).map(|i| u(grid.x(i), t)));
        }
        out
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, n: usize) -> &[f64] {
        let w = self.grid.node_count();
        &self.values[n * w..(n + 1) * w]
    }

    pub fn at(&self, n: usize, i: usize) -> f64 {
        self.values[n * self.grid.node_count() + i]
    }

    /// Values of node `i` at `t_1, ..., t_nt`.
    pub fn node_trace(&self, i: usize) -> InterfaceTrace {
        InterfaceTrace::new(self.grid.dt(), (1..=self.grid.nt()).map(|n| self.at(n, i)).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
