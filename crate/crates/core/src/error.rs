use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFiniteInput(&'static str),
    #[error("SGI parameter theta = {0} is outside [-1, 1]")]
    ThetaOutOfRange(f64),
    #[error("initial state is not normalized: excited norm = {0}")]
    NotNormalized(f64),
    #[error("cavity decay rate kappa = {0} must be positive")]
    NonPositiveKappa(f64),
    #[error("rate {name} = {value} must be non-negative")]
    NegativeRate { name: &'static str, value: f64 },
    #[error("no steady state: {0}")]
    NoSteadyState(&'static str),
    #[error("amplitude norm {0} exceeds 1")]
    NormViolation(f64),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("step dt = {dt} exceeds the stability limit {limit}")]
    StepTooLarge { dt: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
