use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::format::Format;

#[derive(Debug, Parser)]
#[command(name = "pauli", version, about = "Pauli blocking of light scattering in a trapped Fermi gas")]
pub struct Cli {
    /// Run configuration (key=value with [section] headers); defaults apply without it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Output format; overrides [output] format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Override a sweep: name=min:max:count[:log] (t_over_tf, power_mw, delta_ghz, q_lambda).
    #[arg(long = "grid", global = true, value_name = "SPEC")]
    pub grids: Vec<String>,

    /// Average the suppression factor over the collection aperture.
    #[arg(long, global = true)]
    pub aperture_average: bool,

    /// Seed for the fitter Monte Carlo.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Scalar report of the sample's energy, length and rate scales.
    Constants,
    /// Detected suppression, beam overlap and their product versus T/T_F.
    Fig2,
    /// Photons per atom and final T/T_F versus probe power, with the two-slope fit.
    Fig3,
    /// Model inelastic loss versus detuning.
    Fig4,
    /// Power-law fit of measured loss versus detuning.
    Fit {
        /// CSV with columns delta_ghz,loss[,loss_err].
        input: PathBuf,
    },
    /// Homogeneous β(q) next to the Gaussian approximation.
    Sq,
    /// One heating trajectory at the configured power.
    Trajectory,
    /// Monte Carlo self-test of the power-law fitter.
    FitCalibrate {
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Print the effective configuration in canonical form.
    Config,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Fig2 => "fig2",
            Command::Fig3 => "fig3",
            Command::Fig4 => "fig4",
            Command::Fit { .. } => "fit",
            Command::Sq => "sq",
            Command::Trajectory => "trajectory",
            Command::FitCalibrate { .. } => "fit-calibrate",
            Command::Config => "config",
        }
    }
}
