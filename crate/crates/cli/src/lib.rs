//! Experiment runner for the DNWR solver: parses a run configuration, runs
//! relaxation sweeps, bound comparisons or kernel evaluations, and writes CSV.

pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{
    load_config, parse_config, parse_config_with_base, ExperimentKind, ExperimentSpec, Preset, ProblemKind,
};
pub use error::{ConfigError, RunError};
pub use output::{resolve_output_path, write_outputs, Cell, CsvTable, ExperimentOutput, OUT_DIR_ENV};
pub use runner::{
    error_floor, run_bound_compare, run_experiment, run_kernels, run_sweep_theta, sample_times, BOUND_COMPARE_HEADER,
};
