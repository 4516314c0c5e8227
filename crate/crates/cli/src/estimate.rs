use std::f64::consts::PI;

use qtherm::estimation::{optimize_time, tau_opt_transverse};
use qtherm::mle::{crlb_experiment, CrlbReport};
use qtherm::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};
use serde::Serialize;

use crate::args::{EstimateArgs, TauArg};
use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateInput {
    pub model: ModelId,
    pub beta: InverseTemperature,
    pub prep: QubitPrep,
    pub tau: TauArg,
    pub measurements: u64,
    pub replicates: usize,
    pub seed: u64,
}

impl EstimateInput {
    pub fn from_args(a: &EstimateArgs) -> CliResult<Self> {
        Ok(Self {
            model: a.model.into(),
            beta: InverseTemperature::new(a.beta)?,
            prep: QubitPrep::wrapped(a.theta, a.phi)?,
            tau: a.tau,
            measurements: a.measurements,
            replicates: a.replicates,
            seed: a.seed,
        })
    }

    /// Resolves `opt` with the closed form (transverse) or the time optimizer
    /// over `[0, π]` at the given preparation (dispersive).
    pub fn time(&self) -> CliResult<ProtocolTime> {
        Ok(match (self.tau, self.model) {
            (TauArg::Value(t), _) => ProtocolTime::new(t)?,
            (TauArg::Opt, ModelId::Transverse) => tau_opt_transverse(self.beta),
            (TauArg::Opt, ModelId::Dispersive) => {
                ProtocolTime::new(optimize_time(self.model, self.beta, self.prep, PI)?.tau)?
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub model: ModelId,
    pub beta: f64,
    pub theta: f64,
    pub phi: f64,
    /// `"opt"` or the number given.
    pub tau_requested: String,
    pub tau: f64,
    pub measurements: u64,
    pub replicates: usize,
    pub seed: u64,
}

/// Report written by `qtherm estimate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateOutput {
    pub input: InputEcho,
    #[serde(flatten)]
    pub report: CrlbReport,
}

pub fn run_estimate(input: &EstimateInput) -> CliResult<EstimateOutput> {
    let time = input.time()?;
    let report = crlb_experiment(
        input.model,
        input.beta,
        input.prep,
        time,
        input.measurements,
        input.replicates,
        input.seed,
    )?;
    Ok(EstimateOutput {
        input: InputEcho {
            model: input.model,
            beta: input.beta.value(),
            theta: input.prep.theta,
            phi: input.prep.phi,
            tau_requested: match input.tau {
                TauArg::Opt => "opt".into(),
                TauArg::Value(t) => t.to_string(),
            },
            tau: time.value(),
            measurements: input.measurements,
            replicates: input.replicates,
            seed: input.seed,
        },
        report,
    })
}
