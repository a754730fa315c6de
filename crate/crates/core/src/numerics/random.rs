//! Seeded random matrices for generating test colligations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numerics::matrix::{dot, vec_norm, ComplexMatrix};
use crate::scalar::{c, Real, C};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian entry (independent real and imaginary parts,
/// each with variance 1/2).
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    c(T::lit(re * s), T::lit(im * s))
}

pub fn gaussian_matrix<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary of size `n`, deterministic in `seed`.
///
/// Gram-Schmidt on a complex Ginibre matrix yields the Q factor with a
/// positive real diagonal in R, which fixes the column phases and makes the
/// factorization unique.
pub fn random_unitary<T: Real>(n: usize, seed: u64) -> ComplexMatrix<T> {
    let mut rng = rng_from_seed(seed);
    haar_unitary(n, &mut rng)
}

pub fn haar_unitary<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix<T> {
    assert!(n >= 1, "unitary dimension must be positive");
    let g = gaussian_matrix::<T, R>(n, n, rng);
    orthonormalize_columns(&g)
}

/// The first `cols` columns of a Haar unitary of size `rows`.
pub fn random_isometry<T: Real>(rows: usize, cols: usize, seed: u64) -> ComplexMatrix<T> {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let u = random_unitary::<T>(rows, seed);
    u.submatrix(0, 0, rows, cols)
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
pub(crate) fn orthonormalize_columns<T: Real>(g: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (m, n) = g.shape();
    let mut q: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for qk in &q {
                let p = dot(qk, &v);
                for (vi, qi) in v.iter_mut().zip(qk) {
                    *vi = *vi - qi * p;
                }
            }
        }
        let nv = vec_norm(&v);
        q.push(v.into_iter().map(|z| z / nv).collect());
    }
    let mut out = ComplexMatrix::zeros(m, n);
    for (j, col) in q.iter().enumerate() {
        out.set_column(j, col);
    }
    out
}
