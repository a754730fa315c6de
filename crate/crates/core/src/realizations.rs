//! Concrete colligations: the bundled examples and seeded random generators.

use crate::colligation::{Colligation, QPencil, StateStructure};
use crate::error::{Error, Result};
use crate::numerics::{random_isometry, random_unitary, ComplexMatrix};
use crate::scalar::{c, cone, czero, Real, C};

fn split<T: Real>(
    name: String,
    structure: StateStructure<T>,
    v: &ComplexMatrix<T>,
) -> Result<Colligation<T>> {
    let (rows, cols) = v.shape();
    Colligation::new(
        name,
        structure,
        &v.submatrix(0, 0, 1, 1),
        &v.submatrix(0, 1, 1, cols - 1),
        &v.submatrix(1, 0, rows - 1, 1),
        &v.submatrix(1, 1, rows - 1, cols - 1),
    )
}

/// Unitary realization of `(2zw − z − w)/(2 − z − w)` on the bidisk.
pub fn famous_example<T: Real>() -> Colligation<T> {
    let r = T::FRAC_1_SQRT_2();
    let h = T::lit(0.5);
    let v = ComplexMatrix::from_fn(3, 3, |i, j| {
        let x = match (i, j) {
            (0, 0) => T::zero(),
            (0, _) => -r,
            (_, 0) => r,
            (a, b) if a == b => h,
            _ => -h,
        };
        c(x, T::zero())
    });
    split(
        "famous-example".into(),
        StateStructure::partition(vec![1, 1]).expect("valid dims"),
        &v,
    )
    .expect("shapes are fixed")
}

/// Unitary realization of `(zw − αz − βw)/(1 − β̄z − ᾱw)` for `|α| + |β| = 1`.
pub fn f_alpha_beta<T: Real>(alpha: C<T>, beta: C<T>) -> Result<Colligation<T>> {
    if alpha.norm() == T::zero() || beta.norm() == T::zero() {
        return Err(Error::Domain("alpha and beta must be nonzero".into()));
    }
    let excess = (alpha.norm() + beta.norm() - T::one()).abs();
    if !(excess <= T::lit(1e-12)) {
        return Err(Error::Domain(format!(
            "|alpha| + |beta| = {} differs from 1",
            (alpha.norm() + beta.norm()).to_f64().unwrap_or(f64::NAN)
        )));
    }
    let sa_bar = alpha.conj().sqrt();
    let sb_bar = beta.conj().sqrt();
    let sa = sa_bar.conj();
    let sb = sb_bar.conj();
    let cross = -(sa_bar * sb_bar);
    let v = ComplexMatrix::from_rows(&[
        vec![czero(), sa, sb],
        vec![-sa, beta.conj(), cross],
        vec![-sb, cross, alpha.conj()],
    ])?;
    split(
        format!(
            "f-alpha-beta({},{})",
            fmt_complex(alpha),
            fmt_complex(beta)
        ),
        StateStructure::partition(vec![1, 1])?,
        &v,
    )
}

fn fmt_complex<T: Real>(z: C<T>) -> String {
    let [re, im] = crate::scalar::to_f64_pair(z);
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{im:+}i")
    }
}

/// Isometric ball model of the coordinate function `z_j` (`j` is 1-based).
pub fn ball_coordinate<T: Real>(j: usize, d: usize) -> Result<Colligation<T>> {
    if d == 0 || j == 0 || j > d {
        return Err(Error::Domain(format!("coordinate {j} out of range 1..={d}")));
    }
    let structure = StateStructure::matrix_ball(QPencil::row(d), 1)?;
    let mut cm = ComplexMatrix::zeros(d, 1);
    cm[(j - 1, 0)] = cone();
    Colligation::new(
        format!("ball-coordinate({j},{d})"),
        structure,
        &ComplexMatrix::zeros(1, 1),
        &ComplexMatrix::scalar(cone()),
        &cm,
        &ComplexMatrix::zeros(d, 1),
    )
}

/// Seeded random colligation. Partitions and square matrix balls get a
/// Haar unitary `V`; matrix balls with `r > s` get an isometry made of the
/// first columns of one.
pub fn random<T: Real>(structure: &StateStructure<T>, seed: u64) -> Result<Colligation<T>> {
    let rows = 1 + structure.output_dim();
    let cols = 1 + structure.input_dim();
    let v = if rows == cols {
        random_unitary(rows, seed)
    } else if rows > cols {
        random_isometry(rows, cols, seed)
    } else {
        return Err(Error::Unsupported(format!(
            "no isometry maps C^{cols} into C^{rows}"
        )));
    };
    split(format!("random({seed})"), structure.clone(), &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ToleranceConfig;

    #[test]
    fn half_half_matches_closed_matrix() {
        let v = f_alpha_beta::<f64>(c(0.5, 0.0), c(0.5, 0.0)).unwrap().v();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let want = ComplexMatrix::<f64>::from_real_rows(&[
            &[0.0, r, r],
            &[-r, 0.5, -0.5],
            &[-r, -0.5, 0.5],
        ])
        .unwrap();
        assert!(v.max_abs_diff(&want) <= 1e-15);
    }

    #[test]
    fn inadmissible_parameters() {
        assert!(f_alpha_beta::<f64>(c(0.3, 0.0), c(0.8, 0.0)).is_err());
        assert!(f_alpha_beta::<f64>(c(0.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn ball_coordinate_is_isometry_only() {
        let rep = ball_coordinate::<f64>(1, 2)
            .unwrap()
            .validate(&ToleranceConfig::default());
        assert!(rep.is_isometry && !rep.is_coisometry);
        assert!(ball_coordinate::<f64>(3, 2).is_err());
    }

    #[test]
    fn random_shapes() {
        let p = StateStructure::<f64>::partition(vec![2, 3]).unwrap();
        let v = random(&p, 7).unwrap();
        assert_eq!(v.v().shape(), (6, 6));
        let rep = v.validate(&ToleranceConfig::default());
        assert!(rep.is_unitary && rep.isometry_defect <= 1e-12);

        let ball = StateStructure::<f64>::matrix_ball(QPencil::row(2), 2).unwrap();
        let v = random(&ball, 1).unwrap();
        assert_eq!(v.v().shape(), (5, 3));
        let rep = v.validate(&ToleranceConfig::default());
        assert!(rep.is_isometry && rep.isometry_defect <= 1e-12);
        assert_eq!(random(&ball, 1).unwrap(), v);

        let col = StateStructure::<f64>::matrix_ball(QPencil::col(2), 1).unwrap();
        assert!(matches!(random(&col, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn single_precision_builds() {
        let rep = famous_example::<f32>().validate(&ToleranceConfig::new(1e-5, 1e-4, 1e-3).unwrap());
        assert!(rep.is_unitary);
    }
}
