use serde::Serialize;

use crate::colligation::Colligation;
use crate::error::{Error, Result};
use crate::evaluate::{check_domain, eval_nc, witness_unchecked, NcPoint, Witness};
use crate::numerics::{subspace_angle_sin, svd, vec_norm, ToleranceConfig};
use crate::scalar::{Real, C};

use super::residual::{relative_residual, test_matrix, SpectralResidual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ZeroAndEigenvalue,
    Neither,
    Mismatch,
}

/// Which implications a colligation class supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificationMode {
    /// Unitary `V`: zero ⟺ eigenvalue.
    Equivalence,
    /// Isometric `V`: zero ⟹ witness eigenvector only.
    ForwardOnly,
}

/// Function-side and spectral-side cutoffs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds<T> {
    pub function: T,
    pub spectral: T,
}

impl<T: Real> Thresholds<T> {
    /// `residual_tol` on the function side, a hundred times looser on the
    /// spectral side.
    pub fn from_tolerances(tol: &ToleranceConfig<T>) -> Self {
        Self {
            function: tol.residual_tol,
            spectral: tol.residual_tol * T::lit(100.0),
        }
    }
}

/// Both sides of the zero/eigenvalue correspondence at one point.
#[derive(Clone, Debug)]
pub struct ZeroCertificate<T> {
    pub point: NcPoint<T>,
    pub direction: Vec<C<T>>,
    /// `‖f(Λ) y‖` for unit `y`.
    pub f_residual: T,
    /// `σ_min(D^{(n)*} − Z(Λ))`.
    pub spectral_residual: T,
    pub kernel_dim: usize,
    /// Sine of the angle between `v` and the numerical kernel, when the
    /// kernel is nontrivial.
    pub kernel_angle: Option<T>,
    pub witness: Witness<T>,
    /// `‖(D^{(n)*} − Z(Λ)) v‖ / ‖v‖`.
    pub witness_residual: T,
    /// `‖C^{(n)*} v − y‖`.
    pub c_star_v_defect: T,
    pub mode: CertificationMode,
    pub verdict: Verdict,
    /// Exactly one side fell between the strict and loose cutoffs.
    pub dead_band: bool,
    pub notes: Vec<String>,
}

fn unit<T: Real>(y: &[C<T>]) -> Vec<C<T>> {
    let n = vec_norm(y);
    y.iter().map(|z| z / n).collect()
}

/// Certifies whether `at` is a zero of the realized function and an
/// eigenvalue of `D*`, rendering a verdict from both residuals.
///
/// With no `y`, the direction is the right singular vector of `f(Λ)` for its
/// smallest singular value.
pub fn certify<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    y: Option<&[C<T>]>,
    tol: &ToleranceConfig<T>,
    th: &Thresholds<T>,
) -> Result<ZeroCertificate<T>> {
    if at.nvars() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: at.nvars(),
        });
    }
    check_domain(v.structure(), at, tol)?;
    let report = v.validate(tol);
    let mode = if report.is_unitary {
        CertificationMode::Equivalence
    } else if report.is_isometry {
        CertificationMode::ForwardOnly
    } else {
        return Err(Error::Unsupported(format!(
            "certificates need an isometric colligation (isometry defect {:e})",
            report.isometry_defect
        )));
    };
    let f = eval_nc(v, at, tol)?.value;
    let (direction, f_residual) = match y {
        Some(y) => {
            if y.len() != at.level() || vec_norm(y) == T::zero() {
                return Err(Error::Domain("direction must be a nonzero vector of the point's level".into()));
            }
            let u = unit(y);
            let r = vec_norm(&f.mul_vec(&u));
            (u, r)
        }
        None => {
            let s = svd(&f)?;
            let k = s.singular_values.len() - 1;
            (s.v.column(k), s.singular_values[k])
        }
    };
    let m = test_matrix(v, at)?;
    let spec = SpectralResidual::from_matrix(&m, tol)?;
    let witness = witness_unchecked(v, at, &direction)?;
    let witness_residual = relative_residual(&m, &witness.v);
    let c_star_v_defect = vec_norm(
        &witness
            .c_star_v
            .iter()
            .zip(&direction)
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    );
    let kernel_angle = (spec.kernel_dim > 0).then(|| subspace_angle_sin(&witness.v, &spec.kernel_basis));
    let mut notes = vec![];
    let mut dead_band = false;
    let f_zero = f_residual <= th.function;
    let verdict = match mode {
        CertificationMode::Equivalence => {
            let s_zero = spec.sigma_min <= th.spectral;
            if f_zero && s_zero {
                Verdict::ZeroAndEigenvalue
            } else if !f_zero && !s_zero {
                Verdict::Neither
            } else {
                // retry with the cutoffs moved two decades apart
                let hundred = T::lit(100.0);
                let strong_f = f_residual <= th.function / hundred;
                let strong_s = spec.sigma_min <= th.spectral / hundred;
                let clear_not_f = f_residual > th.function * hundred;
                let clear_not_s = spec.sigma_min > th.spectral * hundred;
                if (strong_f && clear_not_s) || (strong_s && clear_not_f) {
                    Verdict::Mismatch
                } else {
                    dead_band = true;
                    notes.push("one residual fell in the dead band between cutoffs".into());
                    Verdict::Neither
                }
            }
        }
        CertificationMode::ForwardOnly => {
            notes.push("isometric colligation: only zero ⟹ eigenvalue is asserted".into());
            if f_zero {
                if witness_residual <= th.function && c_star_v_defect <= th.function {
                    Verdict::ZeroAndEigenvalue
                } else {
                    Verdict::Mismatch
                }
            } else {
                Verdict::Neither
            }
        }
    };
    Ok(ZeroCertificate {
        point: at.clone(),
        direction,
        f_residual,
        spectral_residual: spec.sigma_min,
        kernel_dim: spec.kernel_dim,
        kernel_angle,
        witness,
        witness_residual,
        c_star_v_defect,
        mode,
        verdict,
        dead_band,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ComplexMatrix;
    use crate::realizations::{ball_coordinate, famous_example};
    use crate::scalar::c;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn th() -> Thresholds<f64> {
        Thresholds::from_tolerances(&tol())
    }

    #[test]
    fn famous_zero_certified() {
        let v = famous_example::<f64>();
        let at = NcPoint::from_scalar(&[c(0.25, 0.0), c(-0.5, 0.0)]).unwrap();
        let cert = certify(&v, &at, None, &tol(), &th()).unwrap();
        assert_eq!(cert.verdict, Verdict::ZeroAndEigenvalue);
        assert!(cert.f_residual <= 1e-10 && cert.spectral_residual <= 1e-10);
        assert_eq!(cert.kernel_dim, 1);
        assert!(cert.kernel_angle.unwrap() <= 1e-8);
    }

    #[test]
    fn famous_regular_point() {
        let v = famous_example::<f64>();
        let at = NcPoint::from_scalar(&[c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        let cert = certify(&v, &at, None, &tol(), &th()).unwrap();
        assert_eq!(cert.verdict, Verdict::Neither);
        assert!(!cert.dead_band);
    }

    #[test]
    fn level_two_conjugated_zero() {
        let v = famous_example::<f64>().to_matrix_ball().unwrap();
        let at = NcPoint::diagonal(&[vec![c(0.25, 0.0), c(-0.5, 0.0)], vec![c(0.1, 0.0), c(0.2, 0.0)]]).unwrap();
        let s = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.1, 0.05)], vec![c(-0.05, 0.0), c(1.0, 0.0)]]).unwrap();
        let cert = certify(&v, &at.similarity(&s).unwrap(), None, &tol(), &th()).unwrap();
        assert_eq!(cert.verdict, Verdict::ZeroAndEigenvalue);
    }

    #[test]
    fn ball_forward_direction() {
        let v = ball_coordinate::<f64>(1, 2).unwrap();
        let at = NcPoint::from_scalar(&[c(0.0, 0.0), c(0.4, 0.3)]).unwrap();
        let cert = certify(&v, &at, None, &tol(), &th()).unwrap();
        assert_eq!(cert.mode, CertificationMode::ForwardOnly);
        assert_eq!(cert.verdict, Verdict::ZeroAndEigenvalue);
        assert!(cert.witness_residual <= 1e-12);
    }

    #[test]
    fn boundary_point_is_domain_error() {
        let v = famous_example::<f64>();
        let at = NcPoint::from_scalar(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(certify(&v, &at, None, &tol(), &th()), Err(Error::Domain(_))));
    }
}
