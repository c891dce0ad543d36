//! Parameter points, sweeps and grids comparing the projected and exact
//! ground states, plus their CSV / JSON serialization.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, ExactError, Level};
use crate::model::{ModelError, ModelParams};
use crate::projected::{self, ObservableSet, ProjectedError};

/// CSV header of [`SweepRecord`].
pub const CSV_HEADER: &str = "gamma,delta,n_atoms,lambda_proj,lambda_exact,e_proj,e_exact,\
n_mean_proj,n_mean_exact,n_var_proj,n_var_exact,jz_mean_proj,jz_mean_exact,\
jz_var_proj,jz_var_exact,xi_proj,xi_exact,se_proj,se_exact,fidelity";

/// CSV header of spectrum output.
pub const SPECTRUM_HEADER: &str = "index,energy,lambda";

/// Slack in the variational inequality `e_proj ≥ e_exact`.
pub const VARIATIONAL_SLACK: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("projected state at gamma = {gamma}, delta = {delta}: {source}")]
    Projected {
        gamma: f64,
        delta: f64,
        source: ProjectedError,
    },
    #[error("exact ground state at gamma = {gamma}, delta = {delta}: {source}")]
    Exact { gamma: f64, delta: f64, source: ExactError },
    #[error("record at gamma = {gamma}, delta = {delta} violates {what}")]
    Invariant { gamma: f64, delta: f64, what: String },
    #[error("invalid range for {flag}: {reason}")]
    Range { flag: &'static str, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl SweepError {
    /// Usage errors as opposed to solver failures.
    pub fn is_usage(&self) -> bool {
        matches!(self, SweepError::Model(_) | SweepError::Range { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Method {
    Projected,
    Exact,
    #[default]
    Both,
}

impl Method {
    fn projected(self) -> bool {
        matches!(self, Method::Projected | Method::Both)
    }

    fn exact(self) -> bool {
        matches!(self, Method::Exact | Method::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// One `(γ, Δ)` point with both solutions side by side.
///
/// Columns of a method that was not run are `None` (empty in CSV, `null`
/// in JSON).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub gamma: f64,
    pub delta: f64,
    pub n_atoms: u32,
    pub lambda_proj: Option<f64>,
    pub lambda_exact: Option<f64>,
    pub e_proj: Option<f64>,
    pub e_exact: Option<f64>,
    pub n_mean_proj: Option<f64>,
    pub n_mean_exact: Option<f64>,
    pub n_var_proj: Option<f64>,
    pub n_var_exact: Option<f64>,
    pub jz_mean_proj: Option<f64>,
    pub jz_mean_exact: Option<f64>,
    pub jz_var_proj: Option<f64>,
    pub jz_var_exact: Option<f64>,
    pub xi_proj: Option<f64>,
    pub xi_exact: Option<f64>,
    pub se_proj: Option<f64>,
    pub se_exact: Option<f64>,
    pub fidelity: Option<f64>,
}

impl SweepRecord {
    fn new(
        params: &ModelParams,
        proj: Option<&ObservableSet>,
        exact: Option<&ObservableSet>,
        fidelity: Option<f64>,
    ) -> Self {
        let pick = |o: Option<&ObservableSet>, f: fn(&ObservableSet) -> f64| o.map(f);
        SweepRecord {
            gamma: params.coupling(),
            delta: params.detuning(),
            n_atoms: params.n_atoms(),
            lambda_proj: pick(proj, |o| o.lambda.value()),
            lambda_exact: pick(exact, |o| o.lambda.value()),
            e_proj: pick(proj, |o| o.energy_per_particle),
            e_exact: pick(exact, |o| o.energy_per_particle),
            n_mean_proj: pick(proj, |o| o.n_mean),
            n_mean_exact: pick(exact, |o| o.n_mean),
            n_var_proj: pick(proj, |o| o.n_var),
            n_var_exact: pick(exact, |o| o.n_var),
            jz_mean_proj: pick(proj, |o| o.jz_mean),
            jz_mean_exact: pick(exact, |o| o.jz_mean),
            jz_var_proj: pick(proj, |o| o.jz_var),
            jz_var_exact: pick(exact, |o| o.jz_var),
            xi_proj: pick(proj, |o| o.xi),
            xi_exact: pick(exact, |o| o.xi),
            se_proj: pick(proj, |o| o.entropy),
            se_exact: pick(exact, |o| o.entropy),
            fidelity,
        }
    }

    /// Checks `0 ≤ F ≤ 1` and `e_proj ≥ e_exact − slack`.
    pub fn validate(&self) -> Result<(), SweepError> {
        let fail = |what: String| SweepError::Invariant {
            gamma: self.gamma,
            delta: self.delta,
            what,
        };
        if let Some(f) = self.fidelity {
            if !(0.0..=1.0).contains(&f) {
                return Err(fail(format!("fidelity in [0, 1] (got {f})")));
            }
        }
        if let (Some(p), Some(e)) = (self.e_proj, self.e_exact) {
            if p < e - VARIATIONAL_SLACK {
                return Err(fail(format!("variational bound (e_proj = {p}, e_exact = {e})")));
            }
        }
        Ok(())
    }

    fn csv_fields(&self) -> [Option<f64>; 17] {
        [
            self.lambda_proj,
            self.lambda_exact,
            self.e_proj,
            self.e_exact,
            self.n_mean_proj,
            self.n_mean_exact,
            self.n_var_proj,
            self.n_var_exact,
            self.jz_mean_proj,
            self.jz_mean_exact,
            self.jz_var_proj,
            self.jz_var_exact,
            self.xi_proj,
            self.xi_exact,
            self.se_proj,
            self.se_exact,
            self.fidelity,
        ]
    }

    /// One CSV line without terminator.
    pub fn to_csv_row(&self) -> String {
        let mut row = format!("{},{},{}", fmt_real(self.gamma), fmt_real(self.delta), self.n_atoms);
        for (i, field) in self.csv_fields().into_iter().enumerate() {
            row.push(',');
            if let Some(x) = field {
                // the first two are λ values, written as plain decimals
                if i < 2 {
                    row.push_str(&fmt_lambda(x));
                } else {
                    row.push_str(&fmt_real(x));
                }
            }
        }
        row
    }
}

/// Scientific notation with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Integer or half-integer as a short decimal (`-10`, `-0.5`).
pub fn fmt_lambda(x: f64) -> String {
    format!("{x}")
}

/// Solves one point with the requested methods.
pub fn run_point(params: &ModelParams, method: Method) -> Result<SweepRecord, SweepError> {
    let gamma = params.coupling();
    let delta = params.detuning();
    let projected = if method.projected() {
        let wrap = |source| SweepError::Projected { gamma, delta, source };
        let state = projected::projected_ground_state(params).map_err(wrap)?;
        let obs = projected::observables(params, state.lambda).map_err(wrap)?;
        Some((state, obs))
    } else {
        None
    };
    let exact = if method.exact() {
        let wrap = |source| SweepError::Exact { gamma, delta, source };
        let gs = exact::ground_state(params).map_err(wrap)?;
        let obs = exact::observables_from_state(&gs.state, params).map_err(wrap)?;
        Some((gs, obs))
    } else {
        None
    };
    let fidelity = match (&projected, &exact) {
        (Some((p, _)), Some((g, _))) => Some(exact::fidelity(&p.to_sector_state(), &g.state)),
        _ => None,
    };
    let record = SweepRecord::new(
        params,
        projected.as_ref().map(|(_, o)| o),
        exact.as_ref().map(|(_, o)| o),
        fidelity,
    );
    record.validate()?;
    Ok(record)
}

/// `steps` uniformly spaced values from `min` to `max`, both included.
pub fn linspace(flag: &'static str, min: f64, max: f64, steps: usize) -> Result<Vec<f64>, SweepError> {
    if steps < 2 {
        return Err(SweepError::Range {
            flag,
            reason: format!("need at least 2 steps, got {steps}"),
        });
    }
    if !(min.is_finite() && max.is_finite()) || min >= max {
        return Err(SweepError::Range {
            flag,
            reason: format!("need finite min < max, got [{min}, {max}]"),
        });
    }
    let width = max - min;
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + width * (i as f64 / last)
            }
        })
        .collect())
}

/// Like [`linspace`], but also accepts the single-value axis `steps == 1`
/// with `min == max`, so a grid can be one row or one column.
pub fn grid_axis(flag: &'static str, min: f64, max: f64, steps: usize) -> Result<Vec<f64>, SweepError> {
    if steps == 1 && min == max && min.is_finite() {
        return Ok(vec![min]);
    }
    linspace(flag, min, max, steps)
}

/// Runs every point in parallel; results come back in input order.
pub fn run_points(points: &[ModelParams], method: Method) -> Result<Vec<SweepRecord>, SweepError> {
    points.par_iter().map(|p| run_point(p, method)).collect()
}

/// Records along a γ sweep at fixed Δ, ascending in γ.
pub fn run_sweep(base: &ModelParams, gammas: &[f64], method: Method) -> Result<Vec<SweepRecord>, SweepError> {
    let points = gammas
        .iter()
        .map(|&g| base.with_coupling(g))
        .collect::<Result<Vec<_>, _>>()?;
    run_points(&points, method)
}

/// Records over a `(Δ, γ)` grid, Δ outer and γ inner.
pub fn run_grid(n_atoms: u32, deltas: &[f64], gammas: &[f64], method: Method) -> Result<Vec<SweepRecord>, SweepError> {
    let mut points = Vec::with_capacity(deltas.len() * gammas.len());
    for &d in deltas {
        for &g in gammas {
            points.push(ModelParams::new(n_atoms, d, g)?);
        }
    }
    run_points(&points, method)
}

pub fn run_spectrum(params: &ModelParams, k: usize) -> Result<Vec<Level>, SweepError> {
    exact::spectrum(params, k).map_err(|source| SweepError::Exact {
        gamma: params.coupling(),
        delta: params.detuning(),
        source,
    })
}

pub fn write_records<W: Write>(out: &mut W, records: &[SweepRecord], format: Format) -> Result<(), SweepError> {
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(out, "{}", r.to_csv_row())?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn write_record<W: Write>(out: &mut W, record: &SweepRecord, format: Format) -> Result<(), SweepError> {
    match format {
        Format::Csv => write_records(out, std::slice::from_ref(record), format),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, record)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct LevelRow {
    index: usize,
    energy: f64,
    lambda: f64,
}

pub fn write_spectrum<W: Write>(out: &mut W, levels: &[Level], format: Format) -> Result<(), SweepError> {
    match format {
        Format::Csv => {
            writeln!(out, "{SPECTRUM_HEADER}")?;
            for (i, l) in levels.iter().enumerate() {
                writeln!(out, "{},{},{}", i, fmt_real(l.energy), fmt_lambda(l.lambda.value()))?;
            }
        }
        Format::Json => {
            let rows: Vec<LevelRow> = levels
                .iter()
                .enumerate()
                .map(|(index, l)| LevelRow {
                    index,
                    energy: l.energy,
                    lambda: l.lambda.value(),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
