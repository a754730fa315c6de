use crate::colligation::{Colligation, PartitionStructure, QPencil, StateStructure};
use crate::error::{Error, Result};
use crate::evaluate::{delta_matrix, lift, NcPoint};
use crate::numerics::{nullspace, vec_norm, ComplexMatrix, ToleranceConfig};
use crate::scalar::{Real, C};

/// Smallest singular value and numerical kernel of an eigenvalue test matrix.
#[derive(Clone, Debug)]
pub struct SpectralResidual<T> {
    pub sigma_min: T,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<C<T>>>,
    pub threshold: T,
    /// Kernel dimension forced by the shape alone (`cols − rows` for wide
    /// test matrices).
    pub forced_kernel_dim: usize,
    /// `‖M v‖ / ‖v‖` for a supplied witness `v`.
    pub witness_residual: Option<T>,
}

impl<T: Real> SpectralResidual<T> {
    pub(crate) fn from_matrix(m: &ComplexMatrix<T>, tol: &ToleranceConfig<T>) -> Result<Self> {
        let ns = nullspace(m, tol)?;
        Ok(Self {
            sigma_min: ns.smallest_sv,
            kernel_dim: ns.dim(),
            kernel_basis: ns.basis,
            threshold: ns.threshold,
            forced_kernel_dim: m.cols().saturating_sub(m.rows()),
            witness_residual: None,
        })
    }
}

/// `D^{(n)*} − Z(Λ)`; `D* − Δ(λ)` at level 1 for a partition.
pub fn test_matrix<T: Real>(v: &Colligation<T>, at: &NcPoint<T>) -> Result<ComplexMatrix<T>> {
    if at.nvars() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: at.nvars(),
        });
    }
    let z = v.structure().state_operator(at.blocks())?;
    Ok(&lift(&v.d().adjoint(), at.level()) - &z)
}

/// `‖M v‖ / ‖v‖`.
pub fn relative_residual<T: Real>(m: &ComplexMatrix<T>, v: &[C<T>]) -> T {
    vec_norm(&m.mul_vec(v)) / vec_norm(v)
}

fn partition_of<T: Real>(v: &Colligation<T>) -> Result<&PartitionStructure> {
    match v.structure() {
        StateStructure::Partition(p) => Ok(p),
        other => Err(Error::Structure(format!(
            "expected a partition colligation, found {}",
            other.kind()
        ))),
    }
}

/// Kernel data of `D* − Δ(λ)`, defined for every `λ ∈ C^d`.
pub fn diag_residual<T: Real>(
    v: &Colligation<T>,
    lambda: &[C<T>],
    tol: &ToleranceConfig<T>,
) -> Result<SpectralResidual<T>> {
    let p = partition_of(v)?;
    let m = &v.d().adjoint() - &delta_matrix(p, lambda)?;
    SpectralResidual::from_matrix(&m, tol)
}

/// Kernel data of the wide matrix `[D_1* − λ_1 I, …, D_d* − λ_d I]`, plus the
/// witness residual when `witness_v` is given. For `d ≥ 2` the kernel is
/// never trivial; `forced_kernel_dim` records how much of it the shape alone
/// explains.
pub fn row_residual<T: Real>(
    v: &Colligation<T>,
    lambda: &[C<T>],
    witness_v: Option<&[C<T>]>,
    tol: &ToleranceConfig<T>,
) -> Result<SpectralResidual<T>> {
    match v.structure() {
        StateStructure::MatrixBall { pencil, .. } if *pencil == QPencil::row(pencil.d()) => {}
        _ => {
            return Err(Error::Structure(
                "row residual needs a Q_row matrix-ball colligation".into(),
            ))
        }
    }
    let m = test_matrix(v, &NcPoint::from_scalar(lambda)?)?;
    let mut out = SpectralResidual::from_matrix(&m, tol)?;
    if let Some(w) = witness_v {
        if w.len() != m.cols() {
            return Err(Error::Size(format!(
                "witness has length {}, expected {}",
                w.len(),
                m.cols()
            )));
        }
        out.witness_residual = Some(relative_residual(&m, w));
    }
    Ok(out)
}

/// Kernel data of `D^{(n)*} − Q(Λ) ⊗ I_H` in the lifted layout.
pub fn ncq_residual<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    tol: &ToleranceConfig<T>,
) -> Result<SpectralResidual<T>> {
    SpectralResidual::from_matrix(&test_matrix(v, at)?, tol)
}

/// `‖Σ T_j v_j − Σ λ_j v_j‖ / ‖v‖` for a row tuple and a stacked `v`.
pub fn row_eigen_residual<T: Real>(t: &[ComplexMatrix<T>], lambda: &[C<T>], v: &[C<T>]) -> Result<T> {
    if t.len() != lambda.len() {
        return Err(Error::Arity {
            expected: t.len(),
            found: lambda.len(),
        });
    }
    let h = t[0].rows();
    if v.len() != h * t.len() || t.iter().any(|x| x.shape() != (h, h)) {
        return Err(Error::Size("row tuple and stacked vector disagree".into()));
    }
    let mut acc = vec![C::new(T::zero(), T::zero()); h];
    for (j, (tj, lj)) in t.iter().zip(lambda).enumerate() {
        let vj = &v[j * h..(j + 1) * h];
        for (a, (x, y)) in acc.iter_mut().zip(tj.mul_vec(vj).iter().zip(vj)) {
            *a = *a + x - y * lj;
        }
    }
    Ok(vec_norm(&acc) / vec_norm(v))
}

/// `‖T v − Δ(λ) v‖ / ‖v‖`.
pub fn diag_eigen_residual<T: Real>(
    t: &ComplexMatrix<T>,
    p: &PartitionStructure,
    lambda: &[C<T>],
    v: &[C<T>],
) -> Result<T> {
    let m = t - &delta_matrix(p, lambda)?;
    Ok(relative_residual(&m, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{ball_coordinate, famous_example};
    use crate::scalar::c;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    #[test]
    fn famous_origin_kernel() {
        let v = famous_example::<f64>();
        let r = diag_residual(&v, &[c(0.0, 0.0), c(0.0, 0.0)], &tol()).unwrap();
        assert!(r.sigma_min <= 1e-15);
        assert_eq!(r.kernel_dim, 1);
        let k = &r.kernel_basis[0];
        assert!((k[0] - k[1]).norm() <= 1e-14);
    }

    #[test]
    fn famous_half_half_regular() {
        let v = famous_example::<f64>();
        let r = diag_residual(&v, &[c(0.5, 0.0), c(0.5, 0.0)], &tol()).unwrap();
        assert!(r.sigma_min > 0.1);
        assert_eq!(r.kernel_dim, 0);
    }

    #[test]
    fn ball_coordinate_row_kernel() {
        let v = ball_coordinate::<f64>(1, 2).unwrap();
        let lam = [c(0.3, 0.1), c(-0.2, 0.4)];
        let r = row_residual(&v, &lam, None, &tol()).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.forced_kernel_dim, 1);
        // kernel spanned by (λ_2, −λ_1)
        let k = &r.kernel_basis[0];
        assert!((k[0] * lam[0] + k[1] * lam[1]).norm() <= 1e-14);

        let w = [c(1.0, 0.0), c(0.0, 0.0)];
        let r = row_residual(&v, &lam, Some(&w), &tol()).unwrap();
        assert!((r.witness_residual.unwrap() - lam[0].norm()).abs() <= 1e-15);
    }

    #[test]
    fn level_one_ncq_matches_diag() {
        let v = famous_example::<f64>();
        let lam = [c(0.2, -0.1), c(0.7, 0.3)];
        let a = diag_residual(&v, &lam, &tol()).unwrap();
        let b = ncq_residual(&v.to_matrix_ball().unwrap(), &NcPoint::from_scalar(&lam).unwrap(), &tol())
            .unwrap();
        assert!((a.sigma_min - b.sigma_min).abs() <= 1e-14);
    }

    #[test]
    fn row_residual_rejects_partition() {
        let v = famous_example::<f64>();
        assert!(row_residual(&v, &[c(0.0, 0.0), c(0.0, 0.0)], None, &tol()).is_err());
    }
}
