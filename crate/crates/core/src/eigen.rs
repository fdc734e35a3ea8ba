//! Cyclic Jacobi eigensolver for small dense complex Hermitian matrices.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::to_f64;
use crate::scalar::Real;

/// Square complex matrix stored row-major.
pub type CMatrix<T, const N: usize> = [[Complex<T>; N]; N];

/// Upper bound on full sweeps; a 9×9 matrix needs fewer than ten.
pub const MAX_SWEEPS: usize = 50;

pub fn frobenius_norm<T: Real, const N: usize>(m: &CMatrix<T, N>) -> T {
    m.iter()
        .flatten()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

fn off_diagonal_norm<T: Real, const N: usize>(m: &CMatrix<T, N>) -> T {
    let mut s = T::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j {
                s = s + z.norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Largest `|m[i][j] - conj(m[j][i])|`.
#[allow(clippy::needless_range_loop)]
pub fn hermitian_deviation<T: Real, const N: usize>(m: &CMatrix<T, N>) -> T {
    let mut worst = T::zero();
    for i in 0..N {
        for j in i..N {
            worst = worst.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues in ascending order.
pub fn hermitian_eigenvalues<T: Real, const N: usize>(m: &CMatrix<T, N>) -> Result<[T; N]> {
    jacobi(m, false).map(|(values, _)| values)
}

/// Eigenvalues in ascending order with the matching unit eigenvectors as
/// columns of the returned matrix, so that `m = V diag(λ) V†`.
pub fn hermitian_eigen<T: Real, const N: usize>(
    m: &CMatrix<T, N>,
) -> Result<([T; N], CMatrix<T, N>)> {
    jacobi(m, true)
}

fn jacobi<T: Real, const N: usize>(
    input: &CMatrix<T, N>,
    want_vectors: bool,
) -> Result<([T; N], CMatrix<T, N>)> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let scale = frobenius_norm(input);
    if !scale.is_finite() {
        return Err(Error::NonFiniteInput("matrix entry"));
    }
    let tol = T::matrix_tol();
    let dev = hermitian_deviation(input);
    if dev > tol * scale.max(T::one()) {
        return Err(Error::NotHermitian(to_f64(dev)));
    }

    let mut a = *input;
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Complex::new(row[i].re, T::zero());
    }
    let mut v = [[zero; N]; N];
    if want_vectors {
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = one;
        }
    }

    let target = tol * scale;
    let mut converged = off_diagonal_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, want_vectors.then_some(&mut v), p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| {
        a[i][i]
            .re
            .partial_cmp(&a[j][j].re)
            .expect("finite diagonal")
    });
    let values = order.map(|i| a[i][i].re);
    let mut vectors = [[zero; N]; N];
    if want_vectors {
        for (col, &src) in order.iter().enumerate() {
            for row in 0..N {
                vectors[row][col] = v[row][src];
            }
        }
    }
    Ok((values, vectors))
}

/// One unitary rotation `a <- U† a U` annihilating `a[p][q]`.
#[allow(clippy::needless_range_loop)]
fn rotate<T: Real, const N: usize>(
    a: &mut CMatrix<T, N>,
    v: Option<&mut CMatrix<T, N>>,
    p: usize,
    q: usize,
) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    // phase e^{iφ} of a[p][q]; after diag(1, e^{-iφ}) the pivot is real
    let ph = apq / mag;
    let tau = (aqq - app) / (T::lit(2.0) * mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // U = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on the (p, q) plane
    let upp = Complex::new(c, T::zero());
    let upq = Complex::new(s, T::zero());
    let uqp = ph.conj() * (-s);
    let uqq = ph.conj() * c;

    for row in a.iter_mut() {
        let x = row[p];
        let y = row[q];
        row[p] = x * upp + y * uqp;
        row[q] = x * upq + y * uqq;
    }
    for k in 0..N {
        let x = a[p][k];
        let y = a[q][k];
        a[p][k] = upp.conj() * x + uqp.conj() * y;
        a[q][k] = upq.conj() * x + uqq.conj() * y;
    }
    let zero = Complex::new(T::zero(), T::zero());
    a[p][q] = zero;
    a[q][p] = zero;
    a[p][p] = Complex::new(app - t * mag, T::zero());
    a[q][q] = Complex::new(aqq + t * mag, T::zero());

    if let Some(v) = v {
        for row in v.iter_mut() {
            let x = row[p];
            let y = row[q];
            row[p] = x * upp + y * uqp;
            row[q] = x * upq + y * uqq;
        }
    }
}
