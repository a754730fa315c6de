//! One-sided (Hestenes) Jacobi SVD for complex matrices.
//!
//! Column pairs of `A` are rotated until mutually orthogonal; the rotations
//! accumulate into `V`, and the final column norms of `A V` are the singular
//! values. Working on columns gives a full `n×n` right basis for any shape,
//! so the nullspace of a wide matrix falls out directly. Jacobi also keeps
//! small singular values accurate relative to the matrix, which is what the
//! kernel tests downstream rely on.

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;
use crate::numerics::tolerance::ToleranceConfig;
use crate::scalar::{czero, Real, C};

const MAX_SWEEPS: usize = 80;

/// Right-side singular data of a matrix.
#[derive(Clone, Debug)]
pub struct Svd<T> {
    /// Singular values in descending order, one per column of the input
    /// (wide inputs contribute exact or numerical zeros).
    pub singular_values: Vec<T>,
    /// Right singular vectors as columns, ordered like `singular_values`.
    pub v: ComplexMatrix<T>,
    /// Left singular vectors for nonzero singular values (columns of `A V / σ`);
    /// zero columns where `σ = 0`.
    pub u: ComplexMatrix<T>,
    pub sweeps: usize,
}

pub fn svd<T: Real>(a: &ComplexMatrix<T>) -> Result<Svd<T>> {
    let (m, n) = a.shape();
    if n == 0 {
        return Ok(Svd {
            singular_values: vec![],
            v: ComplexMatrix::zeros(0, 0),
            u: ComplexMatrix::zeros(m, 0),
            sweeps: 0,
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("svd input".into()));
    }
    // column-major working copies
    let mut w: Vec<Vec<C<T>>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![czero(); n];
            e[j] = C::new(T::one(), T::zero());
            e
        })
        .collect();
    let eps = T::epsilon();
    // columns this small are rounding noise of a rank-deficient input
    let tiny = {
        let f = eps * a.norm_fro();
        f * f
    };
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = col_norm_sqr(&w[p]);
                let beta = col_norm_sqr(&w[q]);
                if alpha == T::zero() || beta == T::zero() {
                    continue;
                }
                let gamma = col_dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || alpha.min(beta) <= tiny {
                    continue;
                }
                rotated = true;
                // phase so that <w_p, e^{-iφ} w_q> is real positive
                let phase = gamma / g;
                let zeta = (beta - alpha) / (T::lit(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                let ph_conj = phase.conj();
                rotate(&mut w, p, q, cs, sn, ph_conj);
                rotate(&mut v, p, q, cs, sn, ph_conj);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi SVD did not converge in {MAX_SWEEPS} sweeps ({}x{} input, frobenius norm {})",
            m,
            n,
            a.norm_fro()
        )));
    }
    let mut order: Vec<(T, usize)> = w.iter().enumerate().map(|(j, c)| (col_norm_sqr(c).sqrt(), j)).collect();
    order.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut vm = ComplexMatrix::zeros(n, n);
    let mut um = ComplexMatrix::zeros(m, n);
    let mut sv = Vec::with_capacity(n);
    for (k, &(s, j)) in order.iter().enumerate() {
        sv.push(s);
        vm.set_column(k, &v[j]);
        if s > T::zero() {
            let col: Vec<C<T>> = w[j].iter().map(|z| z / s).collect();
            um.set_column(k, &col);
        }
    }
    Ok(Svd {
        singular_values: sv,
        v: vm,
        u: um,
        sweeps,
    })
}

fn col_norm_sqr<T: Real>(x: &[C<T>]) -> T {
    x.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

fn col_dot<T: Real>(x: &[C<T>], y: &[C<T>]) -> C<T> {
    x.iter().zip(y).fold(czero(), |acc, (a, b)| acc + a.conj() * b)
}

// x_p <- c x_p - s ph x_q ;  x_q <- s x_p + c ph x_q
fn rotate<T: Real>(cols: &mut [Vec<C<T>>], p: usize, q: usize, cs: T, sn: T, ph: C<T>) {
    let (left, right) = cols.split_at_mut(q);
    let xp = &mut left[p];
    let xq = &mut right[0];
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bq = *b * ph;
        let ap = *a;
        *a = ap * cs - bq * sn;
        *b = ap * sn + bq * cs;
    }
}

/// Singular values in descending order (one per column).
pub fn singular_values<T: Real>(a: &ComplexMatrix<T>) -> Vec<T> {
    match svd(a) {
        Ok(s) => s.singular_values,
        Err(_) => vec![T::nan(); a.cols()],
    }
}

/// Smallest singular value together with an orthonormal kernel basis.
#[derive(Clone, Debug)]
pub struct NullSpace<T> {
    /// `inf ‖A v‖` over unit vectors `v`.
    pub smallest_sv: T,
    pub largest_sv: T,
    /// Absolute cutoff used to decide kernel membership.
    pub threshold: T,
    /// Orthonormal basis of the numerical kernel.
    pub basis: Vec<Vec<C<T>>>,
    /// Right singular vector for the smallest singular value.
    pub smallest_vector: Vec<C<T>>,
}

impl<T: Real> NullSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Numerical kernel of `a`. The cutoff is relative:
/// `rank_tol · σ_max · max(rows, cols)`.
pub fn nullspace<T: Real>(a: &ComplexMatrix<T>, tol: &ToleranceConfig<T>) -> Result<NullSpace<T>> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::Size("nullspace of an empty matrix".into()));
    }
    let s = svd(a)?;
    let largest = s.singular_values[0];
    let smallest = *s.singular_values.last().expect("nonempty");
    let threshold = tol.rank_tol * largest * T::from_usize_lossy(a.rows().max(a.cols()));
    let basis = s
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &sv)| sv <= threshold)
        .map(|(k, _)| s.v.column(k))
        .collect();
    Ok(NullSpace {
        smallest_sv: smallest,
        largest_sv: largest,
        threshold,
        basis,
        smallest_vector: s.v.column(a.cols() - 1),
    })
}
