use std::fmt;
use std::sync::Arc;

pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Right-hand side `f(x, t)` of `u_t = u_xx + f`.
///
/// The separable form lets the solvers evaluate the spatial profile once per
/// grid instead of once per node and time step.
#[derive(Clone)]
pub enum Source {
    Zero,
    /// `f(x, t) = space(x) * time(t)`.
    Separable {
        space: SpaceFn,
        time: TimeFn,
    },
    General(SpaceTimeFn),
}

impl Source {
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        match self {
            Source::Zero => 0.0,
            Source::Separable { space, time } => space(x) * time(t),
            Source::General(f) => f(x, t),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Source::Zero)
    }
}

impl fmt::Debug for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Zero => f.write_str("Zero"),
            Source::Separable { .. } => f.write_str("Separable"),
            Source::General(_) => f.write_str("General"),
        }
    }
}

/// Data of the heat problem `u_t = u_xx + f`, `u(x,0) = u0(x)`, Dirichlet data
/// at the two outer ends of the domain.
#[derive(Clone)]
pub struct ProblemData {
    pub source: Source,
    pub initial: SpaceFn,
    pub boundary_left: TimeFn,
    pub boundary_right: TimeFn,
}

impl fmt::Debug for ProblemData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemData")
            .field("source", &self.source)
            .finish_non_exhaustive()
    }
}

impl ProblemData {
    pub fn new(
        source: Source,
        initial: impl Fn(f64) -> f64 + Send + Sync + 'static,
        boundary_left: impl Fn(f64) -> f64 + Send + Sync + 'static,
        boundary_right: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            source,
            initial: Arc::new(initial),
            boundary_left: Arc::new(boundary_left),
            boundary_right: Arc::new(boundary_right),
        }
    }

    /// `f = 0`, `u0 = 0`, `g = 0`: the error equation of the relaxation.
    pub fn homogeneous() -> Self {
        Self::new(Source::Zero, |_| 0.0, |_| 0.0, |_| 0.0)
    }

    /// The benchmark problem on `(-3, 2)`: `f = -exp(-t - x^2)`,
    /// `u0 = exp(-2x)`, `g = exp(-2t)` at both ends.
    pub fn model_problem() -> Self {
        Self::new(
            Source::Separable {
                space: Arc::new(|x| -(-x * x).exp()),
                time: Arc::new(|t| (-t).exp()),
            },
            |x| (-2.0 * x).exp(),
            |t| (-2.0 * t).exp(),
            |t| (-2.0 * t).exp(),
        )
    }

    /// Largest mismatch between `u0` and the boundary data at `t = 0`.
    pub fn compatibility_gap(&self, x_left: f64, x_right: f64) -> f64 {
        let left = ((self.initial)(x_left) - (self.boundary_left)(0.0)).abs();
        let right = ((self.initial)(x_right) - (self.boundary_right)(0.0)).abs();
        left.max(right)
    }

    /// Logs a warning when `u0` and `g` disagree at `t = 0` by more than `tol`.
    /// Incompatible data is allowed; it only degrades accuracy near `t = 0`.
    pub fn check_compatibility(&self, x_left: f64, x_right: f64, tol: f64) -> bool {
        let gap = self.compatibility_gap(x_left, x_right);
        let ok = gap <= tol;
        if !ok {
            log::warn!("initial data and boundary data disagree by {gap:e} at t = 0 on [{x_left}, {x_right}]");
        }
        ok
    }
}
