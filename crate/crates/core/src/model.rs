//! Parameter and state types shared by the propagator, the negativity engine
//! and the numeric oracle.
//!
//! Rates are measured in units of the cavity decay rate `kappa` and times in
//! units of `1 / kappa`. The two upper levels of each atom are degenerate and
//! resonant with the cavity, so no transition frequencies appear.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Physical rates of the two-atom / dissipative-cavity model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    /// Atomic relaxation rate into the cavity mode.
    pub gamma0: T,
    /// Cavity decay rate (width of the Lorentzian reservoir).
    pub kappa: T,
    /// SGI parameter between the `A -> C` and `B -> C` channels, `|theta| <= 1`.
    pub theta: T,
    /// Dipole-dipole interaction strength.
    pub omega_dd: T,
}

impl<T: Real> ModelParams<T> {
    /// Parameters with `kappa = 1`.
    pub fn new(gamma0: T, theta: T, omega_dd: T) -> Self {
        Self {
            gamma0,
            kappa: T::one(),
            theta,
            omega_dd,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("gamma0", self.gamma0),
            ("kappa", self.kappa),
            ("theta", self.theta),
            ("omega_dd", self.omega_dd),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::NonFiniteInput(name));
            }
        }
        if self.kappa <= T::zero() {
            return Err(Error::NonPositiveKappa(to_f64(self.kappa)));
        }
        if self.theta.abs() > T::one() {
            return Err(Error::ThetaOutOfRange(to_f64(self.theta)));
        }
        if self.gamma0 < T::zero() {
            return Err(Error::NegativeRate {
                name: "gamma0",
                value: to_f64(self.gamma0),
            });
        }
        if self.omega_dd < T::zero() {
            return Err(Error::NegativeRate {
                name: "omega_dd",
                value: to_f64(self.omega_dd),
            });
        }
        Ok(())
    }

    pub fn regime(&self) -> CouplingRegime {
        CouplingRegime::classify(self.gamma0 / self.kappa)
    }
}

/// Label for the ratio `gamma0 / kappa` against the threshold 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    Weak,
    Crossover,
    Strong,
}

impl CouplingRegime {
    /// `Crossover` covers 1/2 +- 10%.
    pub fn classify<T: Real>(ratio: T) -> Self {
        let half = T::lit(0.5);
        if (ratio - half).abs() <= T::lit(0.05) {
            CouplingRegime::Crossover
        } else if ratio < half {
            CouplingRegime::Weak
        } else {
            CouplingRegime::Strong
        }
    }
}

/// The four single-excitation amplitudes at a given time.
///
/// `c1a` is the amplitude of `|A_1, C_2>`, `c1b` of `|B_1, C_2>`, `c2a` of
/// `|C_1, A_2>` and `c2b` of `|C_1, B_2>`. The remaining population sits in
/// `|C_1, C_2>` with one photon in the environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSet<T> {
    pub c1a: Complex<T>,
    pub c1b: Complex<T>,
    pub c2a: Complex<T>,
    pub c2b: Complex<T>,
    pub time: T,
}

impl<T: Real> AmplitudeSet<T> {
    pub fn from_array(c: [Complex<T>; 4], time: T) -> Self {
        Self {
            c1a: c[0],
            c1b: c[1],
            c2a: c[2],
            c2b: c[3],
            time,
        }
    }

    /// Amplitudes in the order `[c1a, c1b, c2a, c2b]`.
    pub fn to_array(&self) -> [Complex<T>; 4] {
        [self.c1a, self.c1b, self.c2a, self.c2b]
    }

    pub fn populations(&self) -> [T; 4] {
        self.to_array().map(|c| c.norm_sqr())
    }

    pub fn excited_norm(&self) -> T {
        self.populations()
            .into_iter()
            .fold(T::zero(), |acc, x| acc + x)
    }

    /// Population of `|C_1, C_2>`, clamped to `[0, 1]`.
    pub fn ground_population(&self) -> T {
        let p = T::one() - self.excited_norm();
        p.max(T::zero()).min(T::one())
    }

    /// Excited population of atom 1 and of atom 2.
    pub fn atom_populations(&self) -> (T, T) {
        let [a1, b1, a2, b2] = self.populations();
        (a1 + b1, a2 + b2)
    }

    pub fn check_norm(&self) -> Result<()> {
        let n = self.excited_norm();
        if !n.is_finite() {
            return Err(Error::NonFiniteInput("amplitude"));
        }
        if n > T::one() + T::norm_tol() {
            return Err(Error::NormViolation(to_f64(n)));
        }
        Ok(())
    }

    /// Multiply every amplitude by the same complex factor.
    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self::from_array(self.to_array().map(|c| c * factor), self.time)
    }
}

/// Normalized single-excitation state at `t = 0` with the environment in vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState<T> {
    pub c1a: Complex<T>,
    pub c1b: Complex<T>,
    pub c2a: Complex<T>,
    pub c2b: Complex<T>,
}

impl<T: Real> InitialState<T> {
    /// Build and check normalization.
    pub fn new(c: [Complex<T>; 4]) -> Result<Self> {
        let s = Self::from_array_unchecked(c);
        s.validate()?;
        Ok(s)
    }

    pub fn from_array_unchecked(c: [Complex<T>; 4]) -> Self {
        Self {
            c1a: c[0],
            c1b: c[1],
            c2a: c[2],
            c2b: c[3],
        }
    }

    pub fn to_array(&self) -> [Complex<T>; 4] {
        [self.c1a, self.c1b, self.c2a, self.c2b]
    }

    pub fn named(name: NamedState) -> Self {
        named_initial_state(name)
    }

    pub fn amplitudes(&self) -> AmplitudeSet<T> {
        AmplitudeSet::from_array(self.to_array(), T::zero())
    }

    pub fn excited_norm(&self) -> T {
        self.amplitudes().excited_norm()
    }

    pub fn validate(&self) -> Result<()> {
        if self
            .to_array()
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFiniteInput("initial amplitude"));
        }
        let n = self.excited_norm();
        if (n - T::one()).abs() > T::norm_tol() {
            return Err(Error::NotNormalized(to_f64(n)));
        }
        Ok(())
    }

    /// Exchange the roles of atom 1 and atom 2.
    pub fn swapped(&self) -> Self {
        Self {
            c1a: self.c2a,
            c1b: self.c2b,
            c2a: self.c1a,
            c2b: self.c1b,
        }
    }
}

/// Initial states used by the figure presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedState {
    /// `(|C_1, A_2> + |B_1, C_2>) / sqrt(2)`
    Maximal,
    /// `-sqrt(3)/2 |C_1, A_2> + 1/2 |B_1, C_2>`
    Partial,
    /// `|B_1, C_2>`
    Product,
}

impl NamedState {
    pub const ALL: [NamedState; 3] = [
        NamedState::Maximal,
        NamedState::Partial,
        NamedState::Product,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            NamedState::Maximal => "maximal",
            NamedState::Partial => "partial",
            NamedState::Product => "product",
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NamedState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "maximal" => Ok(NamedState::Maximal),
            "partial" => Ok(NamedState::Partial),
            "product" => Ok(NamedState::Product),
            other => Err(format!("unknown initial state '{other}'")),
        }
    }
}

pub fn named_initial_state<T: Real>(name: NamedState) -> InitialState<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let re = |x: T| Complex::new(x, T::zero());
    let two = T::lit(2.0);
    match name {
        NamedState::Maximal => InitialState {
            c1a: zero,
            c1b: re(T::FRAC_1_SQRT_2()),
            c2a: re(T::FRAC_1_SQRT_2()),
            c2b: zero,
        },
        NamedState::Partial => InitialState {
            c1a: zero,
            c1b: re(T::one() / two),
            c2a: re(-T::lit(3.0).sqrt() / two),
            c2b: zero,
        },
        NamedState::Product => InitialState {
            c1a: zero,
            c1b: re(T::one()),
            c2a: zero,
            c2b: zero,
        },
    }
}

/// Check parameters and initial state together, reporting the first failed invariant.
pub fn validate<T: Real>(params: &ModelParams<T>, init: &InitialState<T>) -> Result<()> {
    params.validate()?;
    init.validate()
}

pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
