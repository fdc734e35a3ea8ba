//! Figure presets, parameter sweeps, steady-state reports and oracle
//! validation on top of [`vqutrit`], with deterministic CSV output.

pub mod config;
pub mod error;
pub mod format;
pub mod preset;
pub mod sweep;
pub mod trajectory;
pub mod validation;

pub use error::{Result, SweepError};
pub use preset::{run_preset, OmegaUnit, Preset};
pub use sweep::{run_sweep, InitSpec, SweepResult, SweepSpec};
pub use trajectory::{write_csv, Trajectory, TrajectoryPoint, CSV_HEADER};
pub use validation::{run_validation, ValidationReport, ValidationSpec};
