//! Closed-form solution of the amplitude equations.
//!
//! The symmetric combinations `C_1^± + C_2^±` (with `C^± = C^A ± C^B`) relax
//! through the cavity with propagator `G±(t)`, while the antisymmetric
//! combinations `C_1^m - C_2^m` only pick up the phase `exp(-2iΩt)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{AmplitudeSet, InitialState, ModelParams};
use crate::scalar::Real;

/// Which of the two decay channels `1 ± theta` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign<T: Real>(self) -> T {
        match self {
            Branch::Plus => T::one(),
            Branch::Minus => -T::one(),
        }
    }
}

/// Mixing coefficients of the analytic solution at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorCoeffs<T> {
    pub q1: Complex<T>,
    pub q2: Complex<T>,
    pub q3: Complex<T>,
}

/// `D± = sqrt((κ + 2iΩ)² - 4(2iΩκ + γ0 κ (1 ± θ)))`, principal branch.
///
/// The returned root has a non-negative real part; when the real part is zero
/// the imaginary part is non-negative.
pub fn d_pm<T: Real>(params: &ModelParams<T>, branch: Branch) -> Complex<T> {
    let kappa = params.kappa;
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let a = Complex::new(kappa, two * params.omega_dd);
    let rate = params.gamma0 * kappa * (T::one() + branch.sign::<T>() * params.theta);
    let inner = Complex::new(rate, two * params.omega_dd * kappa);
    principal_sqrt(a * a - inner * four)
}

fn principal_sqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let w = z.sqrt();
    if w.re < T::zero() || (w.re == T::zero() && w.im < T::zero()) {
        -w
    } else {
        w
    }
}

/// Relaxation function of the symmetric sector for one branch.
pub fn g_pm<T: Real>(params: &ModelParams<T>, branch: Branch, t: T) -> Complex<T> {
    let d = d_pm(params, branch);
    g_from_root(params.kappa, params.omega_dd, d, t)
}

/// Evaluate `e^{-(κ+2iΩ)t/2} [cosh(Dt/2) + (κ-2iΩ)/D sinh(Dt/2)]`.
///
/// Three regimes: a series around `D = 0`, the cosh/sinh form while `|Dt/2|`
/// is moderate, and the split-exponential form otherwise. Every exponent in the
/// split form has non-positive real part, so large `t` cannot overflow.
pub(crate) fn g_from_root<T: Real>(kappa: T, omega: T, d: Complex<T>, t: T) -> Complex<T> {
    let two = T::lit(2.0);
    let half_t = t / two;
    let decay = Complex::new(kappa, two * omega);
    let drive = Complex::new(kappa, -two * omega);
    let envelope = (-decay * half_t).exp();
    let x = d * half_t;

    if d.norm() < T::lit(1e-8) * kappa {
        // cosh x ≈ 1 + x²/2, sinh(x)/D ≈ (t/2)(1 + x²/6)
        let x2 = x * x;
        let bracket = Complex::new(T::one(), T::zero())
            + x2 / two
            + drive * half_t * (Complex::new(T::one(), T::zero()) + x2 / T::lit(6.0));
        return envelope * bracket;
    }

    if x.re.abs() <= T::one() {
        return envelope * (x.cosh() + drive / d * x.sinh());
    }

    let r = drive / d;
    let one = Complex::new(T::one(), T::zero());
    let slow = ((d - decay) * half_t).exp();
    let fast = ((-d - decay) * half_t).exp();
    ((one + r) * slow + (one - r) * fast) / two
}

pub fn q_coeffs<T: Real>(params: &ModelParams<T>, t: T) -> PropagatorCoeffs<T> {
    let gp = g_pm(params, Branch::Plus, t);
    let gm = g_pm(params, Branch::Minus, t);
    let four = T::lit(4.0);
    PropagatorCoeffs {
        q1: (gp + gm) / four,
        q2: (gp - gm) / four,
        q3: phase(params.omega_dd, t) / T::lit(2.0),
    }
}

/// `exp(-2iΩt)`
fn phase<T: Real>(omega: T, t: T) -> Complex<T> {
    Complex::from_polar(T::one(), -T::lit(2.0) * omega * t)
}

fn apply<T: Real>(q: &PropagatorCoeffs<T>, init: &InitialState<T>, time: T) -> AmplitudeSet<T> {
    let sum_a = init.c1a + init.c2a;
    let sum_b = init.c1b + init.c2b;
    let sym_a = q.q1 * sum_a + q.q2 * sum_b;
    let sym_b = q.q2 * sum_a + q.q1 * sum_b;
    AmplitudeSet {
        c1a: sym_a + q.q3 * (init.c1a - init.c2a),
        c2a: sym_a + q.q3 * (init.c2a - init.c1a),
        c1b: sym_b + q.q3 * (init.c1b - init.c2b),
        c2b: sym_b + q.q3 * (init.c2b - init.c1b),
        time,
    }
}

/// Amplitudes at time `t` for the given initial state.
pub fn propagate<T: Real>(
    params: &ModelParams<T>,
    init: &InitialState<T>,
    t: T,
) -> AmplitudeSet<T> {
    if t == T::zero() {
        return init.amplitudes();
    }
    apply(&q_coeffs(params, t), init, t)
}

/// Long-time limit of [`propagate`] with the common phase `exp(-2iΩt)` removed.
///
/// The returned `time` is `+inf`.
pub fn steady_amplitudes<T: Real>(
    params: &ModelParams<T>,
    init: &InitialState<T>,
) -> Result<AmplitudeSet<T>> {
    params.validate()?;
    if params.gamma0 == T::zero() {
        return Err(Error::NoSteadyState("gamma0 = 0: nothing relaxes"));
    }
    // A branch survives only when its rate γ0 κ (1 ± θ) vanishes.
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let gp = if params.theta == -T::one() { one } else { zero };
    let gm = if params.theta == T::one() { one } else { zero };
    let four = T::lit(4.0);
    let q = PropagatorCoeffs {
        q1: (gp + gm) / four,
        q2: (gp - gm) / four,
        q3: one / T::lit(2.0),
    };
    Ok(apply(&q, init, T::infinity()))
}

/// Slowest relaxation rate among the decaying modes, `min (κ - Re D±) / 2`.
///
/// Branches with zero rate `γ0 κ (1 ± θ)` never decay and are skipped; returns
/// `None` when nothing decays.
pub fn slowest_decay_rate<T: Real>(params: &ModelParams<T>) -> Option<T> {
    [Branch::Plus, Branch::Minus]
        .into_iter()
        .filter(|b| params.gamma0 * (T::one() + b.sign::<T>() * params.theta) > T::zero())
        .map(|b| (params.kappa - d_pm(params, b).re) / T::lit(2.0))
        .reduce(T::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{named_initial_state, NamedState};

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    fn p(gamma0: f64, theta: f64, omega: f64) -> ModelParams<f64> {
        ModelParams::new(gamma0, theta, omega)
    }

    #[test]
    fn d_pm_examples() {
        let d = d_pm(&p(0.1, 0.0, 0.0), Branch::Plus);
        assert!(close(d, Complex::new(0.6f64.sqrt(), 0.0), 1e-15));
        assert!((d.re - 0.774_596_669_241_483).abs() < 1e-12);

        for omega in [0.0, 0.7, 3.0, 12.0] {
            let d = d_pm(&p(0.1, 1.0, omega), Branch::Minus);
            assert!(close(d, Complex::new(1.0, -2.0 * omega), 1e-12), "{d}");
        }

        let d = d_pm(&p(10.0, 0.0, 0.0), Branch::Plus);
        assert!(close(d, Complex::new(0.0, 39f64.sqrt()), 1e-13), "{d}");
    }

    #[test]
    fn g_pm_at_zero_is_one() {
        for (g, th, om) in [
            (0.1, 0.0, 0.0),
            (10.0, 0.9, 12.0),
            (0.25, 0.0, 0.0),
            (3.0, -1.0, 2.0),
        ] {
            for b in [Branch::Plus, Branch::Minus] {
                assert!(close(
                    g_pm(&p(g, th, om), b, 0.0),
                    Complex::new(1.0, 0.0),
                    1e-15
                ));
            }
        }
    }

    #[test]
    fn decoherence_free_branch_is_pure_phase() {
        for omega in [0.0, 3.0, 12.0] {
            let params = p(10.0, 1.0, omega);
            for t in [0.5, 3.0, 10.0, 200.0] {
                let g = g_pm(&params, Branch::Minus, t);
                assert!(close(g, phase(omega, t), 1e-10), "Ω={omega} t={t} g={g}");
            }
        }
    }

    #[test]
    fn weak_coupling_decays_monotonically() {
        let params = p(0.1, 0.0, 0.0);
        let mut last = 1.0;
        for i in 1..=400 {
            let g = g_pm(&params, Branch::Plus, i as f64 * 0.5);
            assert!(g.im.abs() < 1e-15);
            assert!(g.re < last && g.re > 0.0);
            last = g.re;
        }
        assert!(last < 1e-8);
        // no overflow far out
        let g = g_pm(&params, Branch::Plus, 1e6);
        assert!(g.norm().is_finite() && g.norm() < 1e-30);
    }

    #[test]
    fn degenerate_root_continuity() {
        let delta = 1e-8;
        for (kappa, omega) in [(1.0, 0.0), (1.0, 0.3), (2.0, 1.0)] {
            for t in [0.1, 1.0, 5.0, 20.0] {
                let series = g_from_root(kappa, omega, Complex::new(delta * kappa / 2.0, 0.0), t);
                let direct = g_from_root(kappa, omega, Complex::new(2.0 * delta * kappa, 0.0), t);
                assert!((series - direct).norm() < 1e-10, "t={t}");
                let direct_i = g_from_root(kappa, omega, Complex::new(0.0, 2.0 * delta * kappa), t);
                assert!((series - direct_i).norm() < 1e-10);
            }
        }
        // the critically damped point itself
        let g = g_pm(&p(0.25, 0.0, 0.0), Branch::Plus, 2.0);
        assert!(
            close(g, Complex::new((-1.0f64).exp() * 2.0, 0.0), 1e-7),
            "{g}"
        );
    }

    #[test]
    fn split_and_hyperbolic_forms_agree() {
        // |Dt/2| straddling 1 for a real root
        let params = p(0.1, 0.0, 0.0);
        let d = d_pm(&params, Branch::Plus);
        let t_switch = 2.0 / d.re;
        let below = g_pm(&params, Branch::Plus, t_switch * (1.0 - 1e-9));
        let above = g_pm(&params, Branch::Plus, t_switch * (1.0 + 1e-9));
        assert!((below - above).norm() < 1e-8);
    }

    #[test]
    fn q_coeff_limits() {
        let q = q_coeffs(&p(0.1, 0.3, 2.0), 0.0);
        assert!(close(q.q1, Complex::new(0.5, 0.0), 1e-15));
        assert!(close(q.q2, Complex::new(0.0, 0.0), 1e-15));
        assert!(close(q.q3, Complex::new(0.5, 0.0), 1e-15));

        let q = q_coeffs(&p(0.1, 0.5, 0.0), 2000.0);
        assert!(close(q.q1, Complex::new(0.0, 0.0), 1e-12));
        assert!(close(q.q2, Complex::new(0.0, 0.0), 1e-12));
        assert!(close(q.q3, Complex::new(0.5, 0.0), 1e-15));

        let q = q_coeffs(&p(0.1, 1.0, 0.0), 2000.0);
        assert!(close(q.q1, Complex::new(0.25, 0.0), 1e-12));
        assert!(close(q.q2, Complex::new(-0.25, 0.0), 1e-12));
        assert!(close(q.q3, Complex::new(0.5, 0.0), 1e-15));
    }

    #[test]
    fn propagate_examples() {
        let maximal = named_initial_state(NamedState::Maximal);
        let params = p(0.1, 0.0, 0.0);
        assert_eq!(propagate(&params, &maximal, 0.0), maximal.amplitudes());

        let s = 1.0 / (2.0 * 2f64.sqrt());
        let late = propagate(&params, &maximal, 2000.0);
        let want = [-s, s, s, -s];
        for (got, w) in late.to_array().iter().zip(want) {
            assert!(close(*got, Complex::new(w, 0.0), 1e-12));
        }
        assert!((late.ground_population() - 0.5).abs() < 1e-12);

        let product = named_initial_state(NamedState::Product);
        let late = propagate(&p(0.1, 1.0, 0.0), &product, 2000.0);
        let want = [-0.25, 0.75, -0.25, -0.25];
        for (got, w) in late.to_array().iter().zip(want) {
            assert!(close(*got, Complex::new(w, 0.0), 1e-12), "{got}");
        }
        assert!((late.ground_population() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn steady_examples() {
        let maximal = named_initial_state(NamedState::Maximal);
        let st = steady_amplitudes(&p(0.1, 0.0, 0.0), &maximal).unwrap();
        for c in st.to_array() {
            assert!((c.norm() - 1.0 / 8f64.sqrt()).abs() < 1e-15);
        }

        let partial = named_initial_state(NamedState::Partial);
        let st = steady_amplitudes(&p(0.1, 1.0, 0.0), &partial).unwrap();
        let r3 = 3f64.sqrt();
        let want = [
            (r3 - 1.0) / 8.0,
            (r3 + 3.0) / 8.0,
            -(3.0 * r3 + 1.0) / 8.0,
            (r3 - 1.0) / 8.0,
        ];
        for (got, w) in st.to_array().iter().zip(want) {
            assert!(close(*got, Complex::new(w, 0.0), 1e-15), "{got} vs {w}");
        }

        let st12 = steady_amplitudes(&p(0.1, 1.0, 12.0), &partial).unwrap();
        for (a, b) in st.to_array().iter().zip(st12.to_array()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }

        assert!(matches!(
            steady_amplitudes(&p(0.0, 0.5, 0.0), &partial),
            Err(Error::NoSteadyState(_))
        ));
    }

    #[test]
    fn steady_matches_long_time_magnitudes() {
        for name in NamedState::ALL {
            let init = named_initial_state(name);
            for (g, th, om) in [
                (0.1, 0.0, 0.0),
                (10.0, 0.9, 12.0),
                (10.0, 1.0, 6.0),
                (2.0, -1.0, 1.0),
            ] {
                let params = p(g, th, om);
                let rate = slowest_decay_rate(&params).unwrap();
                let t = 40.0 / rate;
                let late = propagate(&params, &init, t);
                let st = steady_amplitudes(&params, &init).unwrap();
                for (a, b) in late.to_array().iter().zip(st.to_array()) {
                    assert!((a.norm() - b.norm()).abs() < 1e-9, "{name} {g} {th} {om}");
                }
            }
        }
    }

    #[test]
    fn decay_rate_weak_coupling() {
        // (κ - sqrt(κ² - 4γ0κ))/2 for Ω = 0, θ = 0
        let r = slowest_decay_rate(&p(0.1, 0.0, 0.0)).unwrap();
        assert!((r - (1.0 - 0.6f64.sqrt()) / 2.0).abs() < 1e-15);
        assert_eq!(slowest_decay_rate(&p(0.0, 0.0, 1.0)), None);
        // θ = 1 drops the minus branch
        let r1 = slowest_decay_rate(&p(0.1, 1.0, 0.0)).unwrap();
        assert!((r1 - (1.0 - 0.2f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn f32_identity_and_phase() {
        let params = ModelParams::<f32>::new(10.0, 1.0, 12.0);
        let init = named_initial_state::<f32>(NamedState::Partial);
        assert_eq!(propagate(&params, &init, 0.0), init.amplitudes());
        let g = g_pm(&params, Branch::Minus, 3.0);
        assert!((g.norm() - 1.0).abs() < 1e-4);
    }
}
