use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the whole model is generic over: `f32` or `f64`.
///
/// Tolerances that the model treats as invariants (normalization, Hermiticity,
/// Jacobi convergence) depend on the precision, so each implementation carries
/// its own.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Slack on `|excited_norm - 1|` and on the norm upper bound.
    fn norm_tol() -> Self;

    /// Relative tolerance for Hermiticity and for Jacobi off-diagonal convergence.
    fn matrix_tol() -> Self;

    /// Convert an `f64` literal. Every literal used by the crate is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits the scalar type")
    }
}

impl Real for f64 {
    fn norm_tol() -> Self {
        1e-9
    }

    fn matrix_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn norm_tol() -> Self {
        1e-5
    }

    fn matrix_tol() -> Self {
        1e-6
    }
}
