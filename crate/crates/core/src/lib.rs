//! Dirichlet-Neumann waveform relaxation (DNWR) for the 1D heat equation.
//!
//! - [`heat`]: grids, backward-Euler subdomain solvers and the monodomain reference.
//! - [`dnwr`]: the relaxation loop and its convergence report.
//! - [`laplace`]: the Laplace-domain contraction symbol, convergence bounds,
//!   `erfc`, and Talbot inversion for the kernels `F_k(t)`.

pub mod dnwr;
pub mod error;
pub mod heat;
pub mod laplace;

pub use dnwr::{
    dnwr_iterate, dnwr_iterate_with_reference, interface_error, relax_update, ConvergenceReport, DnwrConfig,
    DnwrOutcome, InitialGuess, IterationRecord,
};
pub use error::{Error, Result};
pub use heat::{Boundary, FluxScheme, Grid1D, InterfaceTrace, ProblemData, Source, SpaceTimeSolution};
pub use laplace::{BoundParams, SymbolParams};
