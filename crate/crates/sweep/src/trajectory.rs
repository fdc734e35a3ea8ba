//! Sampled negativity curves and their CSV form.

use std::io::Write;

use vqutrit::{negativity, propagate, steady_amplitudes, Error as ModelError, Initial, Params};

use crate::error::{Result, SweepError};
use crate::format::fmt;

pub const CSV_HEADER: &str = "t,curve_label,negativity,p,abs2_c1a,abs2_c1b,abs2_c2a,abs2_c2b";

/// Fraction of the trajectory treated as its tail when checking the steady value.
pub const TAIL_FRACTION: f64 = 0.05;
/// Allowed distance between the tail and the analytic steady negativity.
pub const TAIL_TOL: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub negativity: f64,
    /// Ground population `|C(t)|²`.
    pub p: f64,
    /// `|c1a|², |c1b|², |c2a|², |c2b|²`
    pub abs2: [f64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub label: String,
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    /// Evaluate the analytic solution on `n_points` uniform times in `[0, t_end]`.
    pub fn compute(
        params: &Params,
        init: &Initial,
        t_end: f64,
        n_points: usize,
        label: impl Into<String>,
    ) -> Result<Self> {
        vqutrit::validate(params, init)?;
        if !t_end.is_finite() || t_end <= 0.0 {
            return Err(SweepError::InvalidSpec(format!(
                "t_end must be positive, got {t_end}"
            )));
        }
        if n_points < 2 {
            return Err(SweepError::InvalidSpec(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        let last = (n_points - 1) as f64;
        let points = (0..n_points)
            .map(|k| {
                let t = if k + 1 == n_points {
                    t_end
                } else {
                    t_end * k as f64 / last
                };
                let amps = propagate(params, init, t);
                Ok(TrajectoryPoint {
                    t,
                    negativity: negativity(&amps)?,
                    p: amps.ground_population(),
                    abs2: amps.populations(),
                })
            })
            .collect::<std::result::Result<Vec<_>, ModelError>>()?;
        Ok(Self {
            label: label.into(),
            points,
        })
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.t)
    }

    pub fn negativities(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.negativity).collect()
    }

    pub fn last_negativity(&self) -> f64 {
        self.points.last().map_or(f64::NAN, |p| p.negativity)
    }

    /// Points in the last [`TAIL_FRACTION`] of the time range.
    pub fn tail(&self) -> &[TrajectoryPoint] {
        let n = self.points.len();
        let k = ((n as f64) * TAIL_FRACTION).ceil() as usize;
        &self.points[n - k.clamp(1, n)..]
    }

    /// Largest tail deviation from `steady`.
    pub fn tail_deviation(&self, steady: f64) -> f64 {
        self.tail()
            .iter()
            .map(|p| (p.negativity - steady).abs())
            .fold(0.0, f64::max)
    }

    pub fn write_rows<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for p in &self.points {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                fmt(p.t),
                self.label,
                fmt(p.negativity),
                fmt(p.p),
                fmt(p.abs2[0]),
                fmt(p.abs2[1]),
                fmt(p.abs2[2]),
                fmt(p.abs2[3]),
            )?;
        }
        Ok(())
    }
}

/// Header plus every curve, in order.
pub fn write_csv<W: Write>(out: &mut W, curves: &[Trajectory]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for c in curves {
        c.write_rows(out)?;
    }
    Ok(())
}

/// Analytic steady negativity.
pub fn steady_negativity(params: &Params, init: &Initial) -> Result<f64> {
    Ok(negativity(&steady_amplitudes(params, init)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vqutrit::{named_initial_state, NamedState};

    #[test]
    fn grid_and_first_point() {
        let init = named_initial_state(NamedState::Partial);
        let tr = Trajectory::compute(&Params::new(0.1, 0.0, 0.0), &init, 2.0, 5, "x").unwrap();
        let t: Vec<f64> = tr.times().collect();
        assert_eq!(t, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!((tr.points[0].negativity - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(tr.points[0].p < 1e-15);
    }

    #[test]
    fn rejects_bad_grid() {
        let init = named_initial_state(NamedState::Partial);
        let p = Params::new(0.1, 0.0, 0.0);
        assert!(Trajectory::compute(&p, &init, 1.0, 1, "x").is_err());
        assert!(Trajectory::compute(&p, &init, 0.0, 10, "x").is_err());
        assert!(matches!(
            Trajectory::compute(&Params::new(0.1, 2.0, 0.0), &init, 1.0, 10, "x"),
            Err(SweepError::Model(vqutrit::Error::ThetaOutOfRange(_)))
        ));
    }

    #[test]
    fn tail_covers_five_percent() {
        let init = named_initial_state(NamedState::Maximal);
        let tr = Trajectory::compute(&Params::new(0.1, 0.0, 0.0), &init, 1.0, 2001, "x").unwrap();
        assert_eq!(tr.tail().len(), 101);
        let tr = Trajectory::compute(&Params::new(0.1, 0.0, 0.0), &init, 1.0, 2, "x").unwrap();
        assert_eq!(tr.tail().len(), 1);
    }

    #[test]
    fn csv_layout() {
        let init = named_initial_state(NamedState::Product);
        let tr =
            Trajectory::compute(&Params::new(0.1, 0.0, 0.0), &init, 1.0, 2, "theta=0").unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &[tr]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "0,theta=0,0,0,0,1,0,0");
        assert!(lines[2].starts_with("1,theta=0,"));
        assert_eq!(lines[2].split(',').count(), 8);
        assert_eq!(lines[3], "");
        assert!(!text.contains('\r'));
    }
}
