//! Laplace-domain convergence theory for the relaxation with `theta = 1/2`
//! and the numerical machinery to evaluate it.

mod bounds;
mod kernels;
mod symbol;
mod talbot;

pub use bounds::{erfc_eval, linear_bound, superlinear_bound, superlinear_uses_even_index, BoundParams};
pub use kernels::{kernel_f, kernel_f_with_nodes, theoretical_error, InitialError, SMALL_T_CUTOFF};
pub use symbol::{iteration_symbol, symbol_g, SymbolParams};
pub use talbot::{invert_laplace, TransformFn, DEFAULT_NODES};
