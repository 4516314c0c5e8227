use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use qtherm::estimation::{
    fi_deficit, fisher_population, optimize_time, qfi, sld, tau_opt_transverse,
};
use qtherm::models::probe_state;
use qtherm::{Error, InverseTemperature, ModelId, ProtocolTime, QubitPrep};
use rayon::prelude::*;

use crate::args::{Axis, Param, Quantity, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::format::format_float;
use crate::output::{open_output, version_line};

/// A validated sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: ModelId,
    pub fixed: BTreeMap<&'static str, f64>,
    pub axes: Vec<Axis>,
    pub quantities: Vec<Quantity>,
}

/// Header and rows in lattice order (first axis outermost).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepSpec {
    pub fn new(
        model: ModelId,
        fixed: &[(Param, f64)],
        axes: Vec<Axis>,
        quantities: Vec<Quantity>,
    ) -> CliResult<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(CliError::Usage(format!(
                "expected one or two --sweep axes, got {}",
                axes.len()
            )));
        }
        if axes.len() == 2 && axes[0].param == axes[1].param {
            return Err(CliError::Usage(format!("{} swept twice", axes[0].param)));
        }
        if quantities.is_empty() {
            return Err(CliError::Usage("no quantities requested".into()));
        }
        let mut map = BTreeMap::new();
        for &(p, v) in fixed {
            if axes.iter().any(|a| a.param == p) {
                return Err(CliError::Usage(format!("{p} is both fixed and swept")));
            }
            if !v.is_finite() {
                return Err(CliError::Usage(format!("{p} must be finite")));
            }
            map.insert(p.name(), v);
        }
        let mut quantities_seen = Vec::new();
        for q in quantities {
            if !quantities_seen.contains(&q) {
                quantities_seen.push(q);
            }
        }
        let spec = Self {
            model,
            fixed: map,
            axes,
            quantities: quantities_seen,
        };
        for q in &spec.quantities {
            for &p in q.needs() {
                if !spec.covers(p) {
                    return Err(CliError::Usage(format!(
                        "quantity {} needs {p}: pass --{p} or sweep it",
                        q.columns()[0]
                    )));
                }
            }
        }
        Ok(spec)
    }

    pub fn from_args(a: &SweepArgs) -> CliResult<Self> {
        let fixed: Vec<(Param, f64)> = [
            (Param::Beta, a.beta),
            (Param::Theta, a.theta),
            (Param::Phi, a.phi),
            (Param::Tau, a.tau),
        ]
        .into_iter()
        .filter_map(|(p, v)| v.map(|v| (p, v)))
        .collect();
        Self::new(
            a.model.into(),
            &fixed,
            a.sweeps.clone(),
            a.quantities.clone(),
        )
    }

    fn covers(&self, p: Param) -> bool {
        self.fixed.contains_key(p.name()) || self.axes.iter().any(|a| a.param == p)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.steps).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameter values of lattice point `index`.
    fn point(&self, index: usize) -> Point {
        let mut values = [None; 4];
        for (k, p) in Param::ALL.iter().enumerate() {
            values[k] = self.fixed.get(p.name()).copied();
        }
        let mut rem = index;
        for axis in self.axes.iter().rev() {
            let k = rem % axis.steps;
            rem /= axis.steps;
            let slot = Param::ALL
                .iter()
                .position(|&p| p == axis.param)
                .expect("known parameter");
            values[slot] = Some(axis.value(k));
        }
        Point { values }
    }
}

struct Point {
    values: [Option<f64>; 4],
}

impl Point {
    fn get(&self, p: Param) -> f64 {
        self.values[p as usize].expect("coverage checked")
    }

    fn beta(&self) -> CliResult<InverseTemperature> {
        Ok(InverseTemperature::new(self.get(Param::Beta))?)
    }

    fn prep(&self) -> CliResult<QubitPrep> {
        Ok(QubitPrep::wrapped(
            self.get(Param::Theta),
            self.get(Param::Phi),
        )?)
    }

    fn time(&self) -> CliResult<ProtocolTime> {
        Ok(ProtocolTime::new(self.get(Param::Tau))?)
    }
}

/// Optimal interaction time at the ground preparation.
pub fn tau_opt(model: ModelId, beta: InverseTemperature) -> CliResult<f64> {
    Ok(match model {
        ModelId::Transverse => tau_opt_transverse(beta).value(),
        ModelId::Dispersive => optimize_time(model, beta, QubitPrep::ground(), PI)?.tau,
    })
}

fn evaluate(spec: &SweepSpec, point: &Point) -> CliResult<Vec<f64>> {
    let model = spec.model;
    let mut row = Vec::new();
    for q in &spec.quantities {
        match q {
            Quantity::P0 => row.push(
                probe_state(model, point.beta()?, point.prep()?, point.time()?).populations()[0],
            ),
            Quantity::Fisher => row.push(fisher_population(
                model,
                point.beta()?,
                point.prep()?,
                point.time()?,
            )),
            Quantity::Qfi => row.push(qfi(model, point.beta()?, point.prep()?, point.time()?)?),
            Quantity::SldCoeffs => {
                let c =
                    sld(model, point.beta()?, point.prep()?, point.time()?).pauli_coefficients();
                row.extend(c);
            }
            Quantity::TauOpt => row.push(tau_opt(model, point.beta()?)?),
            Quantity::Deficit => match fi_deficit(model, point.beta()?, point.time()?) {
                Ok(d) => row.push(d),
                Err(Error::UndefinedDeficit(_)) => row.push(f64::NAN),
                Err(e) => return Err(e.into()),
            },
        }
    }
    Ok(row)
}

/// Evaluates every lattice point in parallel.
pub fn sweep_table(spec: &SweepSpec) -> CliResult<SweepTable> {
    let mut header: Vec<String> = spec
        .axes
        .iter()
        .map(|a| a.param.name().to_string())
        .collect();
    for q in &spec.quantities {
        header.extend(q.columns().iter().map(|c| c.to_string()));
    }
    let rows = (0..spec.len())
        .into_par_iter()
        .map(|i| {
            let point = spec.point(i);
            let mut row: Vec<f64> = spec.axes.iter().map(|a| point.get(a.param)).collect();
            row.extend(evaluate(spec, &point)?);
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SweepTable { header, rows })
}

/// Writes the table as CSV after `#` lines recording the invocation and version.
pub fn write_csv<W: Write>(
    table: &SweepTable,
    spec: &SweepSpec,
    invocation: &str,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "# {invocation}")?;
    writeln!(out, "# {}", version_line())?;
    writeln!(out, "# model: {}", spec.model)?;
    for (name, v) in &spec.fixed {
        writeln!(out, "# {name} = {}", format_float(*v))?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&x| format_float(x)))?;
    }
    w.flush()
}

/// Computes the sweep and writes it to `out`, or stdout.
pub fn run_sweep(spec: &SweepSpec, invocation: &str, out: Option<&Path>) -> CliResult<SweepTable> {
    let table = sweep_table(spec)?;
    let (writer, name) = open_output(out)?;
    write_csv(&table, spec, invocation, writer)
        .map_err(|source| CliError::Io { path: name, source })?;
    Ok(table)
}
