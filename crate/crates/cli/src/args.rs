use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "braidsim", version, about = "Five-qubit Majorana exchange simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Exchange,
    Tomography,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SettingArg {
    X,
    Y,
    Z,
}

impl From<SettingArg> for braidsim::Setting {
    fn from(s: SettingArg) -> Self {
        match s {
            SettingArg::X => braidsim::Setting::X,
            SettingArg::Y => braidsim::Setting::Y,
            SettingArg::Z => braidsim::Setting::Z,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the experiment and report C (and tomography).
    Run(RunArgs),
    /// Compile the experiment for a device and print the circuit.
    Compile(CompileArgs),
    /// Print the ideal circuit in the text format.
    Export(ExportArgs),
    /// Dump a lattice, its stabilizers and optionally an exchange schedule as JSON.
    Lattice(LatticeArgs),
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// Shots (per setting for tomography).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Device-format file whose calibration drives the noise model.
    #[arg(long)]
    pub noise: Option<PathBuf>,
    /// Device file used for compilation.
    #[arg(long)]
    pub device: Option<PathBuf>,
    /// Run the shared-ancilla circuit compiled for `--device`.
    #[arg(long, requires = "device")]
    pub compiled: bool,
    /// Qubit assignment for `--compiled`: `auto` or `v1=..,v2=..,v3=..,e1=..,e12=..`.
    #[arg(long, default_value = "auto")]
    pub assign: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct CompileArgs {
    #[arg(long)]
    pub device: PathBuf,
    #[arg(long, default_value = "auto")]
    pub assign: String,
    #[arg(long, value_enum, default_value = "z")]
    pub setting: SettingArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ExportArgs {
    #[arg(long, value_enum, default_value = "z")]
    pub setting: SettingArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct LatticeArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub rows: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub cols: u64,
    /// Two blue edge ids whose Majorana pairs are exchanged.
    #[arg(long, num_args = 2, value_names = ["EDGE_A", "EDGE_B"])]
    pub exchange: Option<Vec<usize>>,
}
