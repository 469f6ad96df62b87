use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::config::{LogBase, Overrides};

#[derive(Debug, Parser)]
#[command(name = "bosecap", version, about = "Classical capacities of bosonic optical channels")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Config file of `key = value` lines (defaults to $BOSECAP_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true)]
    pub omega: Option<f64>,
    /// Units for information quantities.
    #[arg(long, value_enum, global = true)]
    pub log_base: Option<LogBase>,
    /// Optimizer convergence threshold (nats).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Fock-space truncation for photon-number computations.
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Write CSV here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Log more (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

impl GlobalArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            hbar: self.hbar,
            omega: self.omega,
            log_base: self.log_base,
            tol: self.tol,
            n_max: self.n_max,
            output_path: self.output.clone(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-point capacity queries.
    #[command(subcommand)]
    Capacity(CapacityCmd),
    /// Binary discretizations of the noiseless coherent-state channel.
    Discretize(DiscretizeArgs),
    /// Parameter sweeps.
    Sweep(SweepArgs),
    /// Closed forms against brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum CapacityCmd {
    /// Attenuated noisy channel, transmitter constraint, squeezed carrier.
    Gaussian(GaussianArgs),
    /// Gaussian channel with a squeezed-state noise, input constraint.
    Input(InputArgs),
    /// Photon-number states through binomial loss.
    Number(NumberArgs),
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct GaussianArgs {
    /// Squeezing amplitude of the carrier.
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Squeezing angle (0 or π for the closed form).
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// Amplitude attenuation.
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Channel noise photons.
    #[arg(long = "nc", default_value_t = 0.0)]
    pub n_c: f64,
    /// Transmitter photon budget.
    #[arg(long = "ntr")]
    pub n_tr: f64,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("budget").required(true).args(["energy", "photons"])))]
#[command(allow_negative_numbers = true)]
pub struct InputArgs {
    /// Squeezing amplitude of the noise state.
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// Energy bound on the prior.
    #[arg(long)]
    pub energy: Option<f64>,
    /// Energy bound given as a photon number (E = ħω·N).
    #[arg(long)]
    pub photons: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NumberMode {
    /// Numerically optimal input distribution.
    Optimize,
    /// Bose–Einstein input with the full budget.
    BoseEinstein,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct NumberArgs {
    /// Photon transmission probability.
    #[arg(long)]
    pub eta: f64,
    /// Mean photon number at the transmitter.
    #[arg(long)]
    pub budget: f64,
    #[arg(long, value_enum, default_value_t = NumberMode::Optimize)]
    pub mode: NumberMode,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct DiscretizeArgs {
    /// Mean photon number per letter.
    #[arg(long)]
    pub m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    Gamma,
    M,
    K,
    #[value(name = "n_c")]
    NC,
    #[value(name = "n_tr")]
    NTr,
    Eta,
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["figure", "variable"])))]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    /// Preset: 2 sweeps γ for three channels, 3 sweeps m.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub figure: Option<u8>,
    #[arg(long, value_enum)]
    pub variable: Option<Variable>,
    #[arg(long)]
    pub start: f64,
    #[arg(long)]
    pub stop: f64,
    #[arg(long)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,

    // values held fixed while another one is swept
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long = "nc", default_value_t = 0.0)]
    pub n_c: f64,
    /// Transmitter budget (default 1, or 5 for `--figure 2`).
    #[arg(long = "ntr")]
    pub n_tr: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub budget: f64,
    #[arg(long, value_enum, default_value_t = NumberMode::Optimize)]
    pub mode: NumberMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    All,
    ThermalEntropy,
    GramC2,
    BetaOracle,
    Constellation,
    NumberChannel,
    Trine,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Check::All)]
    pub check: Check,
    /// Thermal mean photon number for `thermal-entropy`.
    #[arg(long)]
    pub nbar: Option<f64>,
    /// Photon budget for `gram-c2`.
    #[arg(long)]
    pub m: Option<f64>,
}
