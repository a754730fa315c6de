//! Eigenvalue tests for `D*`, determinant pencils and zero certificates.

mod certify;
mod pencil;
mod residual;

pub use certify::{certify, CertificationMode, Thresholds, Verdict, ZeroCertificate};
pub use pencil::{
    det_pencil_roots, det_polynomial, interpolate_on_circle, poly_roots, realization_pencil_roots, zeros_scan,
    DetPolynomial, PencilRoots, ScanRow, ZeroScan,
};
pub use residual::{
    diag_eigen_residual, diag_residual, ncq_residual, relative_residual, row_eigen_residual, row_residual,
    test_matrix, SpectralResidual,
};
