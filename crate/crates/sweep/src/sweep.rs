//! Cartesian parameter sweeps with analytic steady values.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use vqutrit::{
    named_initial_state, Complex, Error as ModelError, Initial, NamedState, Params, C64,
};

use crate::error::{Result, SweepError};
use crate::format::fmt;
use crate::preset::OmegaUnit;
use crate::trajectory::{steady_negativity, write_csv, Trajectory, TAIL_TOL};

/// Initial state given by name or as explicit amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitSpec {
    Named(NamedState),
    /// `[c1a, c1b, c2a, c2b]`
    Custom([C64; 4]),
}

impl InitSpec {
    /// Custom amplitudes are not normalized here; validation reports it.
    pub fn state(&self) -> Initial {
        match self {
            InitSpec::Named(n) => named_initial_state(*n),
            InitSpec::Custom(c) => Initial::from_array_unchecked(*c),
        }
    }
}

impl Default for InitSpec {
    fn default() -> Self {
        InitSpec::Named(NamedState::Maximal)
    }
}

impl FromStr for InitSpec {
    type Err = String;

    /// A preset name, or four comma-separated amplitudes `c1a,c1b,c2a,c2b`,
    /// each either real (`0.5`) or `re:im`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if let Ok(n) = s.parse::<NamedState>() {
            return Ok(InitSpec::Named(n));
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(format!(
                "expected maximal, partial, product or four amplitudes c1a,c1b,c2a,c2b; got '{s}'"
            ));
        }
        let mut c = [Complex::new(0.0, 0.0); 4];
        for (slot, part) in c.iter_mut().zip(parts) {
            let (re, im) = part.split_once(':').unwrap_or((part, "0"));
            let num = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("amplitude '{part}': {e}"))
            };
            *slot = Complex::new(num(re)?, num(im)?);
        }
        Ok(InitSpec::Custom(c))
    }
}

/// Parse a comma-separated list of floats; an empty string gives an empty list.
pub fn parse_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<f64>().map_err(|e| format!("'{x}': {e}")))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub gamma0: Vec<f64>,
    pub theta: Vec<f64>,
    /// Quoted in `omega_unit`.
    pub omega: Vec<f64>,
    pub omega_unit: OmegaUnit,
    pub initial: InitSpec,
    pub t_end: f64,
    pub n_points: usize,
}

impl SweepSpec {
    pub fn check(&self) -> Result<()> {
        if self.gamma0.is_empty() || self.theta.is_empty() || self.omega.is_empty() {
            return Err(SweepError::InvalidSpec("parameter grid is empty".into()));
        }
        if !self.t_end.is_finite() || self.t_end <= 0.0 {
            return Err(SweepError::InvalidSpec(format!(
                "t_end must be positive, got {}",
                self.t_end
            )));
        }
        if self.n_points < 2 {
            return Err(SweepError::InvalidSpec(format!(
                "points must be at least 2, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    /// Grid points in lexicographic order: gamma0 outermost, omega innermost.
    pub fn grid(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.gamma0.len() * self.theta.len() * self.omega.len());
        for &g in &self.gamma0 {
            for &th in &self.theta {
                for &om in &self.omega {
                    out.push((g, th, om));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutput {
    pub trajectory: Trajectory,
    /// `None` when the parameters have no steady state (`gamma0 = 0`).
    pub steady: Option<f64>,
    pub tail_deviation: Option<f64>,
}

impl CellOutput {
    pub fn settled(&self) -> Option<bool> {
        self.tail_deviation.map(|d| d <= TAIL_TOL)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub gamma0: f64,
    pub theta: f64,
    pub omega: f64,
    pub label: String,
    pub outcome: std::result::Result<CellOutput, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
}

pub fn cell_label(gamma0: f64, theta: f64, omega: f64) -> String {
    format!(
        "gamma0={} theta={} omega={}",
        fmt(gamma0),
        fmt(theta),
        fmt(omega)
    )
}

fn run_cell(spec: &SweepSpec, (g, th, om): (f64, f64, f64)) -> SweepCell {
    let label = cell_label(g, th, om);
    let params = Params::new(g, th, spec.omega_unit.to_kappa(om, g));
    let init = spec.initial.state();
    let outcome = Trajectory::compute(&params, &init, spec.t_end, spec.n_points, label.clone())
        .and_then(|trajectory| {
            let steady = match steady_negativity(&params, &init) {
                Ok(n) => Some(n),
                Err(SweepError::Model(ModelError::NoSteadyState(_))) => None,
                Err(e) => return Err(e),
            };
            let tail_deviation = steady.map(|s| trajectory.tail_deviation(s));
            Ok(CellOutput {
                trajectory,
                steady,
                tail_deviation,
            })
        })
        .map_err(|e| e.to_string());
    SweepCell {
        gamma0: g,
        theta: th,
        omega: om,
        label,
        outcome,
    }
}

/// Build a worker pool; `jobs = 0` lets rayon pick the size.
pub fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
}

/// Evaluate every grid cell. Cell order never depends on `jobs`.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<SweepResult> {
    spec.check()?;
    let grid = spec.grid();
    let cells = pool(jobs).install(|| grid.par_iter().map(|&pt| run_cell(spec, pt)).collect());
    Ok(SweepResult { cells })
}

impl SweepResult {
    pub fn all_ok(&self) -> bool {
        self.cells.iter().all(|c| c.outcome.is_ok())
    }

    /// Trajectories of the successful cells, in grid order.
    pub fn write_trajectories<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let curves: Vec<Trajectory> = self
            .cells
            .iter()
            .filter_map(|c| c.outcome.as_ref().ok().map(|o| o.trajectory.clone()))
            .collect();
        write_csv(out, &curves)
    }

    pub fn write_summary<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "gamma0,theta,omega,steady_negativity,final_negativity,tail_deviation,settled,status"
        )?;
        let opt = |x: Option<f64>| x.map(fmt).unwrap_or_default();
        for c in &self.cells {
            match &c.outcome {
                Ok(o) => writeln!(
                    out,
                    "{},{},{},{},{},{},{},ok",
                    fmt(c.gamma0),
                    fmt(c.theta),
                    fmt(c.omega),
                    opt(o.steady),
                    fmt(o.trajectory.last_negativity()),
                    opt(o.tail_deviation),
                    o.settled().map(|s| s.to_string()).unwrap_or_default(),
                )?,
                Err(e) => writeln!(
                    out,
                    "{},{},{},,,,,error: {}",
                    fmt(c.gamma0),
                    fmt(c.theta),
                    fmt(c.omega),
                    e.replace(',', ";")
                )?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_init_spec() {
        assert_eq!(
            "partial".parse::<InitSpec>(),
            Ok(InitSpec::Named(NamedState::Partial))
        );
        let c = "0, 1, 0:0.5, -0.25".parse::<InitSpec>().unwrap();
        assert_eq!(
            c,
            InitSpec::Custom([
                Complex::new(0.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(0.0, 0.5),
                Complex::new(-0.25, 0.0)
            ])
        );
        assert!("1,2,3".parse::<InitSpec>().is_err());
        assert!("a,b,c,d".parse::<InitSpec>().is_err());
    }

    #[test]
    fn parse_lists() {
        assert_eq!(parse_list("0, 0.5,0.9"), Ok(vec![0.0, 0.5, 0.9]));
        assert_eq!(parse_list(""), Ok(vec![]));
        assert!(parse_list("1,x").is_err());
    }

    fn spec() -> SweepSpec {
        SweepSpec {
            gamma0: vec![0.1, 10.0],
            theta: vec![0.0, 1.0],
            omega: vec![0.0, 12.0, 3.0],
            omega_unit: OmegaUnit::Kappa,
            initial: InitSpec::Named(NamedState::Product),
            t_end: 5.0,
            n_points: 11,
        }
    }

    #[test]
    fn grid_is_lexicographic() {
        let g = spec().grid();
        assert_eq!(g.len(), 12);
        assert_eq!(g[0], (0.1, 0.0, 0.0));
        assert_eq!(g[1], (0.1, 0.0, 12.0));
        assert_eq!(g[2], (0.1, 0.0, 3.0));
        assert_eq!(g[3], (0.1, 1.0, 0.0));
        assert_eq!(g[11], (10.0, 1.0, 3.0));
    }

    #[test]
    fn spec_checks() {
        let mut s = spec();
        s.theta.clear();
        assert!(matches!(run_sweep(&s, 1), Err(SweepError::InvalidSpec(_))));
        let mut s = spec();
        s.t_end = 0.0;
        assert!(s.check().is_err());
        let mut s = spec();
        s.n_points = 1;
        assert!(s.check().is_err());
    }

    #[test]
    fn bad_cells_do_not_abort() {
        let mut s = spec();
        s.theta = vec![0.5, 1.5];
        s.gamma0 = vec![0.0, 10.0];
        let r = run_sweep(&s, 2).unwrap();
        assert_eq!(r.cells.len(), 12);
        assert!(!r.all_ok());
        for c in &r.cells {
            assert_eq!(c.outcome.is_err(), c.theta == 1.5, "{}", c.label);
        }
        // gamma0 = 0 has no steady state but is still a valid trajectory
        let free = r
            .cells
            .iter()
            .find(|c| c.gamma0 == 0.0 && c.theta == 0.5)
            .unwrap();
        assert_eq!(free.outcome.as_ref().unwrap().steady, None);

        let mut buf = Vec::new();
        r.write_summary(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 13);
        assert!(text
            .lines()
            .any(|l| l.starts_with("0,1.5,0,,,,,error: SGI parameter")));
    }

    #[test]
    fn single_cell_equals_single_trajectory() {
        let s = SweepSpec {
            gamma0: vec![10.0],
            theta: vec![0.5],
            omega: vec![6.0],
            omega_unit: OmegaUnit::Kappa,
            initial: InitSpec::Named(NamedState::Partial),
            t_end: 10.0,
            n_points: 101,
        };
        let r = run_sweep(&s, 1).unwrap();
        let direct = Trajectory::compute(
            &Params::new(10.0, 0.5, 6.0),
            &named_initial_state(NamedState::Partial),
            10.0,
            101,
            cell_label(10.0, 0.5, 6.0),
        )
        .unwrap();
        assert_eq!(r.cells[0].outcome.as_ref().unwrap().trajectory, direct);
    }
}
