//! Dense complex linear algebra kernel.

pub mod eig;
pub mod lu;
pub mod matrix;
pub mod random;
pub mod svd;
pub mod tolerance;

pub use eig::eigenvalues;
pub use lu::{condition_1, det, Lu};
pub use matrix::{commutation_matrix, dot, normalize, subspace_angle_sin, vec_norm, ComplexMatrix};
pub use random::{random_isometry, random_unitary};
pub use svd::{nullspace, singular_values, svd, NullSpace, Svd};
pub use tolerance::ToleranceConfig;

use crate::error::Result;
use crate::scalar::Real;

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    a.kron(b)
}
