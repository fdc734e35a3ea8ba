//! Parameter sets of the published figures.
//!
//! Panels `a` use `gamma0 / kappa = 0.1`, panels `b` use `gamma0 / kappa = 10`.
//! Figures 2-4 sweep theta at `Omega = 0`, figures 5-7 sweep theta at
//! `Omega = 12`, figure 8 sweeps Omega at `theta = 0` with the product state.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use vqutrit::{named_initial_state, NamedState, Params};

use crate::error::{Result, SweepError};
use crate::trajectory::Trajectory;

pub const WEAK_GAMMA0: f64 = 0.1;
pub const STRONG_GAMMA0: f64 = 10.0;
pub const WEAK_T_END: f64 = 50.0;
pub const STRONG_T_END: f64 = 10.0;
pub const PRESET_POINTS: usize = 2001;
pub const THETAS: [f64; 4] = [0.0, 0.5, 0.9, 1.0];
pub const OMEGAS: [f64; 4] = [0.0, 3.0, 6.0, 12.0];

/// Unit in which a dipole-dipole strength is quoted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaUnit {
    /// Omega is already a multiple of kappa.
    #[default]
    Kappa,
    /// Omega is a multiple of gamma0.
    Gamma0,
}

impl OmegaUnit {
    /// Omega in units of kappa (kappa = 1).
    pub fn to_kappa(self, omega: f64, gamma0: f64) -> f64 {
        match self {
            OmegaUnit::Kappa => omega,
            OmegaUnit::Gamma0 => omega * gamma0,
        }
    }
}

impl FromStr for OmegaUnit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kappa" => Ok(OmegaUnit::Kappa),
            "gamma0" => Ok(OmegaUnit::Gamma0),
            other => Err(format!(
                "unknown omega unit '{other}' (expected kappa or gamma0)"
            )),
        }
    }
}

impl fmt::Display for OmegaUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaUnit::Kappa => "kappa",
            OmegaUnit::Gamma0 => "gamma0",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Preset {
    pub figure: u8,
    pub strong: bool,
}

/// One curve of a preset, with Omega still in the quoted unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub theta: f64,
    pub omega: f64,
}

impl Preset {
    pub fn all() -> Vec<Preset> {
        (2..=8)
            .flat_map(|figure| [false, true].map(|strong| Preset { figure, strong }))
            .collect()
    }

    pub fn name(&self) -> String {
        format!("fig{}{}", self.figure, if self.strong { 'b' } else { 'a' })
    }

    pub fn gamma0(&self) -> f64 {
        if self.strong {
            STRONG_GAMMA0
        } else {
            WEAK_GAMMA0
        }
    }

    pub fn t_end(&self) -> f64 {
        if self.strong {
            STRONG_T_END
        } else {
            WEAK_T_END
        }
    }

    pub fn initial(&self) -> NamedState {
        match self.figure {
            2 | 5 => NamedState::Maximal,
            3 | 6 => NamedState::Partial,
            _ => NamedState::Product,
        }
    }

    pub fn curves(&self) -> Vec<Curve> {
        match self.figure {
            8 => OMEGAS
                .iter()
                .map(|&omega| Curve {
                    label: format!("omega={omega}"),
                    theta: 0.0,
                    omega,
                })
                .collect(),
            f => {
                let omega = if f >= 5 { 12.0 } else { 0.0 };
                THETAS
                    .iter()
                    .map(|&theta| Curve {
                        label: format!("theta={theta}"),
                        theta,
                        omega,
                    })
                    .collect()
            }
        }
    }

    pub fn params(&self, curve: &Curve, unit: OmegaUnit) -> Params {
        let g = self.gamma0();
        Params::new(g, curve.theta, unit.to_kappa(curve.omega, g))
    }
}

impl FromStr for Preset {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self> {
        let name = s.trim().to_ascii_lowercase();
        Preset::all()
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or(SweepError::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One trajectory per curve, in caption order.
pub fn run_preset(preset: Preset, unit: OmegaUnit) -> Result<Vec<Trajectory>> {
    let init = named_initial_state(preset.initial());
    preset
        .curves()
        .par_iter()
        .map(|c| {
            Trajectory::compute(
                &preset.params(c, unit),
                &init,
                preset.t_end(),
                PRESET_POINTS,
                c.label.clone(),
            )
        })
        .collect()
}
