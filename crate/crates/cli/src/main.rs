use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dnwr_cli::{
    load_config, resolve_output_path, run_experiment, write_outputs, ConfigError, ExperimentSpec, Preset, RunError,
    OUT_DIR_ENV,
};

/// Exit code for configuration errors (also used by clap for usage errors).
const EXIT_CONFIG: u8 = 2;
/// Exit code for failures while running or writing output.
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(name = "dnwr", version, about = "Dirichlet-Neumann waveform relaxation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML configuration file.
    Run {
        config: PathBuf,
        /// Output directory; overrides DNWR_OUT and the directory of output.path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Start from a named setup; keys in the file override it.
        #[arg(long)]
        preset: Option<Preset>,
    },
}

enum Failure {
    Config(ConfigError),
    Run(RunError),
}

fn run(config: PathBuf, out: Option<PathBuf>, preset: Option<Preset>) -> Result<(), Failure> {
    let base = preset.map_or_else(ExperimentSpec::default, Preset::spec);
    let spec = load_config(&config, base).map_err(Failure::Config)?;
    let env_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let target = resolve_output_path(&spec.output_path(), out.as_deref(), env_dir.as_deref());

    let outputs = run_experiment(&spec).map_err(Failure::Run)?;
    for note in outputs.iter().flat_map(|o| &o.notes) {
        eprintln!("note: {note}");
    }
    for path in write_outputs(&outputs, &target).map_err(Failure::Run)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let Command::Run { config, out, preset } = Cli::parse().command;
    match run(config, out, preset) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}
