//! Command-line front end: CSV sweeps, oracle validation and Monte Carlo
//! estimation experiments.

pub mod args;
pub mod error;
pub mod estimate;
pub mod format;
pub mod output;
pub mod sweep;
pub mod validate;

use args::{Cli, Command};
use error::{CliError, CliResult};

/// Runs one parsed command. `invocation` is recorded in CSV preambles.
pub fn run(cli: Cli, invocation: &str) -> CliResult<()> {
    match cli.command {
        Command::Sweep(a) => {
            let spec = sweep::SweepSpec::from_args(&a)?;
            sweep::run_sweep(&spec, invocation, a.out.as_deref())?;
            Ok(())
        }
        Command::Validate(a) => {
            let report = validate::run_validate(a.profile, a.zeta_scale);
            eprint!("{}", report.table());
            if let Some(path) = a.out.as_deref() {
                output::write_json(&report, Some(path))?;
            }
            if report.passed {
                Ok(())
            } else {
                let names: Vec<_> = report.failed().map(|c| c.name).collect();
                Err(CliError::Validation(names.join(", ")))
            }
        }
        Command::Estimate(a) => {
            let r = estimate::run_estimate(&estimate::EstimateInput::from_args(&a)?)?;
            output::write_json(&r, a.out.as_deref())
        }
    }
}
