//! Discrete 1D heat-equation machinery: grids, traces, tridiagonal solves,
//! subdomain solvers and the monodomain reference.

mod grid;
mod problem;
mod solvers;
mod tridiag;

pub(crate) use grid::{same_step, whole_multiple};
pub use grid::{Grid1D, InterfaceTrace, SpaceTimeSolution};
pub use problem::{ProblemData, Source, SpaceFn, SpaceTimeFn, TimeFn};
pub use solvers::{
    dirichlet_solve, extract_interface_flux, extract_interface_flux_conservative, interface_node,
    monodomain_interface_trace, monodomain_solve, neumann_solve, Boundary, FluxScheme,
};
pub(crate) use solvers::{march_dirichlet, march_neumann, FluxProbe};
pub use tridiag::{thomas_solve, TridiagonalLu};
