//! Analytic-versus-RK4 cross validation over a parameter grid.

use std::io::Write;

use rayon::prelude::*;
use vqutrit::oracle::cross_validate;
use vqutrit::{named_initial_state, NamedState, Params};

use crate::format::fmt;
use crate::sweep::pool;

pub const DEFAULT_GAMMA0: [f64; 2] = [0.1, 10.0];
pub const DEFAULT_THETA: [f64; 4] = [0.0, 0.5, 0.9, 1.0];
pub const DEFAULT_OMEGA: [f64; 3] = [0.0, 6.0, 12.0];
pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_T_END: f64 = 10.0;
/// A cell fails when its max amplitude error exceeds this.
pub const ERROR_THRESHOLD: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationSpec {
    /// `(gamma0, theta, omega)` with omega in units of kappa.
    pub grid: Vec<(f64, f64, f64)>,
    pub initial: Vec<NamedState>,
    pub t_end: f64,
    pub dt: f64,
}

impl Default for ValidationSpec {
    /// The 24-cell grid, every named initial state, `t_end = 10`, `dt = 1e-3`.
    fn default() -> Self {
        Self {
            grid: grid(&DEFAULT_GAMMA0, &DEFAULT_THETA, &DEFAULT_OMEGA),
            initial: NamedState::ALL.to_vec(),
            t_end: DEFAULT_T_END,
            dt: DEFAULT_DT,
        }
    }
}

pub fn grid(gamma0: &[f64], theta: &[f64], omega: &[f64]) -> Vec<(f64, f64, f64)> {
    gamma0
        .iter()
        .flat_map(|&g| {
            theta
                .iter()
                .flat_map(move |&th| omega.iter().map(move |&om| (g, th, om)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub gamma0: f64,
    pub theta: f64,
    pub omega: f64,
    /// Max over the initial states of the max amplitude error, or the failure.
    pub max_abs_error: Result<f64, String>,
}

impl ValidationRow {
    pub fn passed(&self) -> bool {
        matches!(self.max_abs_error, Ok(e) if e <= ERROR_THRESHOLD)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ValidationRow::passed)
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "gamma0,theta,omega,max_abs_error,status")?;
        for r in &self.rows {
            match &r.max_abs_error {
                Ok(e) => writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt(r.gamma0),
                    fmt(r.theta),
                    fmt(r.omega),
                    fmt(*e),
                    if r.passed() { "ok" } else { "fail" }
                )?,
                Err(msg) => writeln!(
                    out,
                    "{},{},{},,error: {}",
                    fmt(r.gamma0),
                    fmt(r.theta),
                    fmt(r.omega),
                    msg.replace(',', ";")
                )?,
            }
        }
        Ok(())
    }
}

fn run_cell(spec: &ValidationSpec, (g, th, om): (f64, f64, f64)) -> ValidationRow {
    let params = Params::new(g, th, om);
    let max_abs_error = spec
        .initial
        .iter()
        .map(|&n| cross_validate(&params, &named_initial_state(n), spec.t_end, spec.dt))
        .try_fold(0.0f64, |acc, e| e.map(|e| acc.max(e)))
        .map_err(|e| e.to_string());
    ValidationRow {
        gamma0: g,
        theta: th,
        omega: om,
        max_abs_error,
    }
}

pub fn run_validation(spec: &ValidationSpec, jobs: usize) -> ValidationReport {
    let rows = pool(jobs).install(|| spec.grid.par_iter().map(|&pt| run_cell(spec, pt)).collect());
    ValidationReport { rows }
}
