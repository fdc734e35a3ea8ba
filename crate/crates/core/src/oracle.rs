//! Direct time integration of the memory-kernel amplitude equations.
//!
//! The kernel is exponential, `f(τ) = (γ0 κ / 2) e^{-κτ}`, so the convolution
//! `z^m(t) = ∫₀ᵗ e^{-κ(t-t')} (C_1^m + C_2^m)(t') dt'` obeys the local equation
//! `dz^m/dt = -κ z^m + C_1^m + C_2^m`. Augmenting the state with `z^A, z^B`
//! turns the integro-differential system into an ODE with no truncation, which
//! is then integrated with fixed-step classical RK4. This path shares nothing
//! with the Laplace-domain solution in [`crate::propagator`].

use std::ops::{Add, Mul};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{to_f64, AmplitudeSet, InitialState, ModelParams};
use crate::propagator::propagate;
use crate::scalar::Real;

/// Largest allowed `dt * max(κ, γ0, 2Ω, 1)`.
pub const STEP_LIMIT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleState<T> {
    /// `[C_1^A, C_1^B, C_2^A, C_2^B]`
    pub c: [Complex<T>; 4],
    pub z_a: Complex<T>,
    pub z_b: Complex<T>,
    pub t: T,
}

impl<T: Real> OracleState<T> {
    /// Empty memory at `t = 0`.
    pub fn initial(init: &InitialState<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Self {
            c: init.to_array(),
            z_a: zero,
            z_b: zero,
            t: T::zero(),
        }
    }

    pub fn amplitudes(&self) -> AmplitudeSet<T> {
        AmplitudeSet::from_array(self.c, self.t)
    }
}

/// Time derivative of the amplitudes and memory accumulators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative<T> {
    pub c: [Complex<T>; 4],
    pub z_a: Complex<T>,
    pub z_b: Complex<T>,
}

impl<T: Real> Add for Derivative<T> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            c: std::array::from_fn(|i| self.c[i] + o.c[i]),
            z_a: self.z_a + o.z_a,
            z_b: self.z_b + o.z_b,
        }
    }
}

impl<T: Real> Mul<T> for Derivative<T> {
    type Output = Self;

    fn mul(self, h: T) -> Self {
        Self {
            c: self.c.map(|x| x * h),
            z_a: self.z_a * h,
            z_b: self.z_b * h,
        }
    }
}

pub fn rhs<T: Real>(state: &OracleState<T>, params: &ModelParams<T>) -> Derivative<T> {
    let two = T::lit(2.0);
    let coupling = params.gamma0 * params.kappa / two;
    let rot = Complex::new(T::zero(), -two * params.omega_dd);
    let [c1a, c1b, c2a, c2b] = state.c;
    let mem_a = (state.z_a + state.z_b * params.theta) * coupling;
    let mem_b = (state.z_b + state.z_a * params.theta) * coupling;
    Derivative {
        c: [
            rot * c1a - mem_a,
            rot * c1b - mem_b,
            rot * c2a - mem_a,
            rot * c2b - mem_b,
        ],
        z_a: c1a + c2a - state.z_a * params.kappa,
        z_b: c1b + c2b - state.z_b * params.kappa,
    }
}

fn advance<T: Real>(s: &OracleState<T>, d: &Derivative<T>, h: T) -> OracleState<T> {
    OracleState {
        c: std::array::from_fn(|i| s.c[i] + d.c[i] * h),
        z_a: s.z_a + d.z_a * h,
        z_b: s.z_b + d.z_b * h,
        t: s.t + h,
    }
}

pub fn rk4_step<T: Real>(s: &OracleState<T>, params: &ModelParams<T>, h: T) -> OracleState<T> {
    let half = h / T::lit(2.0);
    let k1 = rhs(s, params);
    let k2 = rhs(&advance(s, &k1, half), params);
    let k3 = rhs(&advance(s, &k2, half), params);
    let k4 = rhs(&advance(s, &k3, h), params);
    let slope = (k1 + k2 * T::lit(2.0) + k3 * T::lit(2.0) + k4) * (T::one() / T::lit(6.0));
    advance(s, &slope, h)
}

/// Largest step accepted by [`integrate`] for these parameters.
pub fn max_step<T: Real>(params: &ModelParams<T>) -> T {
    let scale = params
        .kappa
        .max(params.gamma0)
        .max(T::lit(2.0) * params.omega_dd)
        .max(T::one());
    T::lit(STEP_LIMIT) / scale
}

/// RK4 trajectory on `0, dt, 2dt, …`; the final step is shortened to land on `t_end`.
pub fn integrate<T: Real>(
    params: &ModelParams<T>,
    init: &InitialState<T>,
    t_end: T,
    dt: T,
) -> Result<Vec<AmplitudeSet<T>>> {
    params.validate()?;
    init.validate()?;
    if !t_end.is_finite() || t_end < T::zero() {
        return Err(Error::NonFiniteInput("t_end"));
    }
    let limit = max_step(params);
    if dt.is_nan() || dt <= T::zero() || dt > limit {
        return Err(Error::StepTooLarge {
            dt: to_f64(dt),
            limit: to_f64(limit),
        });
    }

    let steps = (t_end / dt - T::lit(1e-9)).ceil().max(T::zero());
    let steps = steps.to_usize().expect("step count fits usize");
    let mut state = OracleState::initial(init);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state.amplitudes());
    for k in 1..=steps {
        let target = if k == steps {
            t_end
        } else {
            dt * T::from_usize(k).expect("step index fits")
        };
        state = rk4_step(&state, params, target - state.t);
        state.t = target;
        out.push(state.amplitudes());
    }
    Ok(out)
}

/// Max over the grid and the four amplitudes of `|analytic - numeric|`.
pub fn cross_validate<T: Real>(
    params: &ModelParams<T>,
    init: &InitialState<T>,
    t_end: T,
    dt: T,
) -> Result<T> {
    let traj = integrate(params, init, t_end, dt)?;
    Ok(traj.iter().fold(T::zero(), |worst, num| {
        let exact = propagate(params, init, num.time);
        exact
            .to_array()
            .iter()
            .zip(num.to_array())
            .fold(worst, |w, (a, b)| w.max((*a - b).norm()))
    }))
}

/// Empirical convergence order from errors at `dt` and `dt / 2`.
pub fn richardson_order<T: Real>(
    params: &ModelParams<T>,
    init: &InitialState<T>,
    t_end: T,
    dt: T,
) -> Result<(T, T, T)> {
    let coarse = cross_validate(params, init, t_end, dt)?;
    let fine = cross_validate(params, init, t_end, dt / T::lit(2.0))?;
    Ok((coarse, fine, (coarse / fine).log2()))
}
