//! Entanglement dynamics of two V-type (qutrit) atoms sharing a dissipative
//! cavity with a Lorentzian reservoir.
//!
//! * [`model`]: parameters, amplitude sets and named initial states.
//! * [`propagator`]: closed-form amplitudes `C_l^m(t)` for any single-excitation
//!   initial state, and their long-time limit.
//! * [`negativity`]: the 9×9 reduced density matrix, its partial transpose and
//!   the negativity, by eigenvalues and by closed form.
//! * [`eigen`]: Jacobi eigensolver for small complex Hermitian matrices.
//! * [`oracle`]: independent RK4 integration of the memory-kernel equations.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the scalar to `f64`.

pub mod eigen;
pub mod error;
pub mod model;
pub mod negativity;
pub mod oracle;
pub mod propagator;
pub mod scalar;

pub use error::{Error, Result};
pub use model::{
    named_initial_state, validate, AmplitudeSet, CouplingRegime, InitialState, ModelParams,
    NamedState,
};
pub use negativity::{
    build_density, negativity, negativity_closed_form, partial_transpose, DensityMatrix9, Matrix9,
};
pub use propagator::{
    d_pm, g_pm, propagate, q_coeffs, slowest_decay_rate, steady_amplitudes, Branch,
    PropagatorCoeffs,
};
pub use scalar::Real;

pub use num_complex::Complex;

pub type Params = ModelParams<f64>;
pub type Amplitudes = AmplitudeSet<f64>;
pub type Initial = InitialState<f64>;
pub type Density = DensityMatrix9<f64>;
pub type Coeffs = PropagatorCoeffs<f64>;
pub type C64 = Complex<f64>;

pub type Params32 = ModelParams<f32>;
pub type Amplitudes32 = AmplitudeSet<f32>;
pub type Initial32 = InitialState<f32>;
