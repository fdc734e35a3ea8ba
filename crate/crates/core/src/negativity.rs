//! Two-qutrit reduced density matrix, partial transpose and negativity.
//!
//! Basis index `3 * a + b` with `a` the level of atom 1 and `b` the level of
//! atom 2, levels ordered `A, B, C`:
//! `|A1A2>, |A1B2>, |A1C2>, |B1A2>, |B1B2>, |B1C2>, |C1A2>, |C1B2>, |C1C2>`.

use num_complex::Complex;

use crate::eigen::{hermitian_eigenvalues, CMatrix};
use crate::error::Result;
use crate::model::AmplitudeSet;
use crate::scalar::Real;

pub type Matrix9<T> = CMatrix<T, 9>;

/// Index of `|A_1, C_2>`.
pub const A1C2: usize = 2;
/// Index of `|B_1, C_2>`.
pub const B1C2: usize = 5;
/// Index of `|C_1, A_2>`.
pub const C1A2: usize = 6;
/// Index of `|C_1, B_2>`.
pub const C1B2: usize = 7;
/// Index of `|C_1, C_2>`.
pub const C1C2: usize = 8;

/// Reduced density matrix of the two atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix9<T> {
    entries: Matrix9<T>,
}

impl<T: Real> DensityMatrix9<T> {
    /// Wrap raw entries. No invariants are checked.
    pub fn from_entries(entries: Matrix9<T>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &Matrix9<T> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    pub fn trace(&self) -> T {
        (0..9).fold(T::zero(), |acc, i| acc + self.entries[i][i].re)
    }
}

/// Populate the single-excitation pattern: the excited block on
/// `{|A1C2>, |B1C2>, |C1A2>, |C1B2>}` is the outer product of the amplitudes and
/// `|C1C2>` carries the ground population.
pub fn build_density<T: Real>(amps: &AmplitudeSet<T>) -> Result<DensityMatrix9<T>> {
    amps.check_norm()?;
    let zero = Complex::new(T::zero(), T::zero());
    let mut m = [[zero; 9]; 9];
    let slots = [A1C2, B1C2, C1A2, C1B2];
    let c = amps.to_array();
    for (i, &row) in slots.iter().enumerate() {
        for (j, &col) in slots.iter().enumerate() {
            m[row][col] = if i == j {
                Complex::new(c[i].norm_sqr(), T::zero())
            } else {
                c[i] * c[j].conj()
            };
        }
    }
    m[C1C2][C1C2] = Complex::new(amps.ground_population(), T::zero());
    Ok(DensityMatrix9 { entries: m })
}

/// Transpose on the first atom: `<i j| ρ^T1 |k l> = <k j| ρ |i l>`.
pub fn partial_transpose<T: Real>(rho: &Matrix9<T>) -> Matrix9<T> {
    let mut out = *rho;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out[3 * i + j][3 * k + l] = rho[3 * k + j][3 * i + l];
                }
            }
        }
    }
    out
}

/// `-2 × (sum of negative eigenvalues of ρ^T1)`, clamped to `[0, 1 + norm_tol]`.
pub fn negativity<T: Real>(amps: &AmplitudeSet<T>) -> Result<T> {
    let rho = build_density(amps)?;
    let pt = partial_transpose(rho.entries());
    let ev = hermitian_eigenvalues(&pt)?;
    let neg = ev
        .iter()
        .filter(|&&l| l < T::zero())
        .fold(T::zero(), |acc, &l| acc + l);
    Ok(clamp_negativity(-T::lit(2.0) * neg))
}

/// Closed form `sqrt(p² + 4 s1 s2) - p` for single-excitation states.
///
/// `s1`, `s2` are the excited populations of the two atoms and `p` the ground
/// population. The `{|A1C2>,|B1C2>}` and `{|C1A2>,|C1B2>}` blocks of ρ^T1 are
/// rank-one PSD; the remaining arrow block has exactly one negative eigenvalue
/// `(p - sqrt(p² + 4 s1 s2)) / 2`.
pub fn negativity_closed_form<T: Real>(amps: &AmplitudeSet<T>) -> T {
    let (s1, s2) = amps.atom_populations();
    let p = amps.ground_population();
    let four = T::lit(4.0);
    let disc = p * p + four * s1 * s2;
    // p + sqrt(disc) never cancels, so divide instead of subtract
    let n = if disc > T::zero() {
        four * s1 * s2 / (disc.sqrt() + p)
    } else {
        T::zero()
    };
    clamp_negativity(n)
}

fn clamp_negativity<T: Real>(n: T) -> T {
    n.max(T::zero()).min(T::one() + T::norm_tol())
}
