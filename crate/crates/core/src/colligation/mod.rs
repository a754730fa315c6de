//! Structured colligations `V = [[A, B], [C, D]]`.

mod io;
mod structure;

pub use io::{load, save};
pub use structure::{PartitionStructure, QPencil, StateStructure};
pub(crate) use structure::check_blocks;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, ToleranceConfig};
use crate::scalar::{Real, C};

/// A colligation together with the state-space layout that gives it meaning.
#[derive(Clone, Debug, PartialEq)]
pub struct Colligation<T> {
    name: String,
    structure: StateStructure<T>,
    a: C<T>,
    b: ComplexMatrix<T>,
    c: ComplexMatrix<T>,
    d: ComplexMatrix<T>,
}

/// Isometry and coisometry defects of the assembled block matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub isometry_defect: f64,
    pub coisometry_defect: f64,
    pub d_norm: f64,
    pub is_isometry: bool,
    pub is_coisometry: bool,
    pub is_unitary: bool,
}

impl ValidationReport {
    pub fn class(&self) -> &'static str {
        if self.is_unitary {
            "unitary"
        } else if self.is_isometry {
            "isometry"
        } else if self.is_coisometry {
            "coisometry"
        } else {
            "general"
        }
    }
}

/// Checks block shapes against `structure` and builds the colligation.
pub fn assemble<T: Real>(
    structure: StateStructure<T>,
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    c: &ComplexMatrix<T>,
    d: &ComplexMatrix<T>,
) -> Result<Colligation<T>> {
    Colligation::new("", structure, a, b, c, d)
}

fn expect_shape<T: Real>(block: &str, m: &ComplexMatrix<T>, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Shape {
            block: block.into(),
            expected: format!("{rows}x{cols}"),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite(format!("block {block}")));
    }
    Ok(())
}

impl<T: Real> Colligation<T> {
    pub fn new(
        name: impl Into<String>,
        structure: StateStructure<T>,
        a: &ComplexMatrix<T>,
        b: &ComplexMatrix<T>,
        c: &ComplexMatrix<T>,
        d: &ComplexMatrix<T>,
    ) -> Result<Self> {
        let (n_in, n_out) = (structure.input_dim(), structure.output_dim());
        expect_shape("A", a, 1, 1)?;
        expect_shape("B", b, 1, n_in)?;
        expect_shape("C", c, n_out, 1)?;
        expect_shape("D", d, n_out, n_in)?;
        Ok(Self {
            name: name.into(),
            structure,
            a: a[(0, 0)],
            b: b.clone(),
            c: c.clone(),
            d: d.clone(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn structure(&self) -> &StateStructure<T> {
        &self.structure
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.structure.d()
    }

    pub fn a(&self) -> C<T> {
        self.a
    }

    pub fn b(&self) -> &ComplexMatrix<T> {
        &self.b
    }

    pub fn c(&self) -> &ComplexMatrix<T> {
        &self.c
    }

    pub fn d(&self) -> &ComplexMatrix<T> {
        &self.d
    }

    /// The full block matrix `[[A, B], [C, D]]`.
    pub fn v(&self) -> ComplexMatrix<T> {
        ComplexMatrix::block2x2(&ComplexMatrix::scalar(self.a), &self.b, &self.c, &self.d)
            .expect("shapes checked at assembly")
    }

    /// Defects `‖V*V − I‖` and `‖VV* − I‖`; a class holds when its defect is
    /// at most `residual_tol`.
    pub fn validate(&self, tol: &ToleranceConfig<T>) -> ValidationReport {
        let v = self.v();
        let vs = v.adjoint();
        let iso = (&(&vs * &v) - &ComplexMatrix::identity(v.cols())).op_norm();
        let coiso = (&(&v * &vs) - &ComplexMatrix::identity(v.rows())).op_norm();
        let is_isometry = iso <= tol.residual_tol;
        let is_coisometry = coiso <= tol.residual_tol;
        ValidationReport {
            isometry_defect: iso.to_f64().unwrap_or(f64::NAN),
            coisometry_defect: coiso.to_f64().unwrap_or(f64::NAN),
            d_norm: self.d.op_norm().to_f64().unwrap_or(f64::NAN),
            is_isometry,
            is_coisometry,
            is_unitary: is_isometry && is_coisometry,
        }
    }

    /// Same colligation over the `Q_diag` matrix-ball layout. Only partitions
    /// with equal blocks convert.
    pub fn to_matrix_ball(&self) -> Result<Self> {
        let structure = self.structure.to_matrix_ball()?;
        let mut out = self.clone();
        out.structure = structure;
        Ok(out)
    }

    /// Converts the scalar type through `f64`.
    pub fn cast<U: Real>(&self) -> Colligation<U> {
        let conv = |m: &ComplexMatrix<T>| m.map_to::<U>();
        let structure = match &self.structure {
            StateStructure::Partition(p) => StateStructure::Partition(p.clone()),
            StateStructure::MatrixBall { pencil, dim_h } => StateStructure::MatrixBall {
                pencil: QPencil::new(pencil.coeffs().iter().map(conv).collect())
                    .expect("independence survives conversion"),
                dim_h: *dim_h,
            },
        };
        Colligation {
            name: self.name.clone(),
            structure,
            a: crate::scalar::from_f64_pair(crate::scalar::to_f64_pair(self.a)),
            b: conv(&self.b),
            c: conv(&self.c),
            d: conv(&self.d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn famous() -> Colligation<f64> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assemble(
            StateStructure::partition(vec![1, 1]).unwrap(),
            &ComplexMatrix::scalar(c(0.0, 0.0)),
            &ComplexMatrix::from_real_rows(&[&[-r, -r]]).unwrap(),
            &ComplexMatrix::from_real_rows(&[&[r], &[r]]).unwrap(),
            &ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn famous_blocks_are_unitary() {
        let rep = famous().validate(&ToleranceConfig::default());
        assert!(rep.is_unitary);
        assert!(rep.isometry_defect <= 1e-14 && rep.coisometry_defect <= 1e-14);
    }

    #[test]
    fn shape_error_names_block() {
        let err = assemble(
            StateStructure::<f64>::partition(vec![1, 2]).unwrap(),
            &ComplexMatrix::zeros(1, 1),
            &ComplexMatrix::zeros(1, 3),
            &ComplexMatrix::zeros(3, 1),
            &ComplexMatrix::zeros(2, 2),
        )
        .unwrap_err();
        match err {
            Error::Shape { block, .. } => assert_eq!(block, "D"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn row_ball_bookkeeping() {
        let s = StateStructure::matrix_ball(QPencil::<f64>::row(2), 1).unwrap();
        let col = assemble(
            s,
            &ComplexMatrix::zeros(1, 1),
            &ComplexMatrix::zeros(1, 1),
            &ComplexMatrix::zeros(2, 1),
            &ComplexMatrix::zeros(2, 1),
        );
        assert!(col.is_ok());
    }

    #[test]
    fn identity_is_unitary() {
        let s = StateStructure::<f64>::partition(vec![2]).unwrap();
        let col = assemble(
            s,
            &ComplexMatrix::scalar(c(1.0, 0.0)),
            &ComplexMatrix::zeros(1, 2),
            &ComplexMatrix::zeros(2, 1),
            &ComplexMatrix::identity(2),
        )
        .unwrap();
        let rep = col.validate(&ToleranceConfig::default());
        assert!(rep.is_unitary);
        assert_eq!(rep.isometry_defect, 0.0);
        assert_eq!(rep.coisometry_defect, 0.0);
    }

    #[test]
    fn non_finite_block_rejected() {
        let s = StateStructure::<f64>::partition(vec![1]).unwrap();
        let mut d = ComplexMatrix::zeros(1, 1);
        d[(0, 0)] = c(f64::NAN, 0.0);
        assert!(matches!(
            assemble(s, &ComplexMatrix::zeros(1, 1), &ComplexMatrix::zeros(1, 1), &ComplexMatrix::zeros(1, 1), &d),
            Err(Error::NonFinite(_))
        ));
    }
}
