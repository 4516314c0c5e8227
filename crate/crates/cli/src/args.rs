use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtherm::ModelId;

#[derive(Debug, Parser)]
#[command(
    name = "qtherm",
    version,
    about = "Qubit-probe thermometry of a harmonic oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate quantities over a one- or two-parameter lattice as CSV.
    Sweep(SweepArgs),
    /// Cross-check closed forms against the oracles on the standard grid.
    Validate(ValidateArgs),
    /// Monte Carlo maximum-likelihood experiment against the Cramér–Rao bounds.
    Estimate(EstimateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Transverse,
    Dispersive,
}

impl From<ModelArg> for ModelId {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Transverse => ModelId::Transverse,
            ModelArg::Dispersive => ModelId::Dispersive,
        }
    }
}

/// `τ` given as a number or `opt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauArg {
    Value(f64),
    Opt,
}

impl FromStr for TauArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("opt") {
            Ok(TauArg::Opt)
        } else {
            s.parse()
                .map(TauArg::Value)
                .map_err(|_| format!("expected a number or `opt`, got `{s}`"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Param {
    Beta,
    Theta,
    Phi,
    Tau,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::Beta, Param::Theta, Param::Phi, Param::Tau];

    pub fn name(self) -> &'static str {
        match self {
            Param::Beta => "beta",
            Param::Theta => "theta",
            Param::Phi => "phi",
            Param::Tau => "tau",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `name=start:stop:steps`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.steps {
            self.stop
        } else {
            self.start + (self.stop - self.start) * k as f64 / (self.steps - 1) as f64
        }
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, range) = s
            .split_once('=')
            .ok_or_else(|| format!("expected name=start:stop:steps, got `{s}`"))?;
        let param = Param::from_str(name.trim(), true)?;
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, steps] = parts[..] else {
            return Err(format!("expected start:stop:steps, got `{range}`"));
        };
        let start: f64 = start
            .trim()
            .parse()
            .map_err(|_| format!("bad start `{start}`"))?;
        let stop: f64 = stop
            .trim()
            .parse()
            .map_err(|_| format!("bad stop `{stop}`"))?;
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|_| format!("bad step count `{steps}`"))?;
        if steps < 2 {
            return Err(format!("{name}: need at least 2 steps"));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(format!("{name}: need finite start < stop"));
        }
        Ok(Axis {
            param,
            start,
            stop,
            steps,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Quantity {
    P0,
    Fisher,
    Qfi,
    #[value(name = "sld_coeffs")]
    SldCoeffs,
    #[value(name = "tau_opt")]
    TauOpt,
    Deficit,
}

impl Quantity {
    /// CSV column names.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Quantity::P0 => &["p0"],
            Quantity::Fisher => &["fisher"],
            Quantity::Qfi => &["qfi"],
            Quantity::SldCoeffs => &["sld_c0", "sld_cx", "sld_cy", "sld_cz"],
            Quantity::TauOpt => &["tau_opt"],
            Quantity::Deficit => &["deficit"],
        }
    }

    /// Parameters the quantity depends on.
    pub fn needs(self) -> &'static [Param] {
        match self {
            Quantity::TauOpt => &[Param::Beta],
            Quantity::Deficit => &[Param::Beta, Param::Tau],
            _ => &Param::ALL,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    /// `name=start:stop:steps`, at most twice.
    #[arg(long = "sweep", required = true)]
    pub sweeps: Vec<Axis>,
    /// Comma-separated: p0, fisher, qfi, sld_coeffs, tau_opt, deficit.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub quantities: Vec<Quantity>,
    /// Output CSV (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    /// Full 10⁴-point grid.
    Strict,
    /// Every fourth grid point.
    Fast,
}

impl Profile {
    pub fn stride(self) -> usize {
        match self {
            Profile::Strict => 1,
            Profile::Fast => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Strict => "strict",
            Profile::Fast => "fast",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value = "strict")]
    pub profile: Profile,
    /// JSON report path (stdout table only if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Multiplies the transverse decoherence exponent in the analytic state.
    #[arg(long, default_value_t = 1.0, hide = true)]
    pub zeta_scale: f64,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    /// Interaction time or `opt`.
    #[arg(long)]
    pub tau: TauArg,
    /// Measurements per replicate.
    #[arg(long, default_value_t = 100_000)]
    pub measurements: u64,
    #[arg(long, default_value_t = 1000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// JSON report path (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
