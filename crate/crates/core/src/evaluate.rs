//! Evaluation of realized functions at scalar points and level-`n` tuples.
//!
//! A level-`n` point acts on `C^m ⊗ C^n` with the level index fastest, so the
//! lift of a block is `T^{(n)} = T ⊗ I_n` and the structured operator is
//! `Z(Λ) = Σ Q_j ⊗ I_H ⊗ Λ_j` (or `Σ P_j ⊗ Λ_j`). The function value is
//! `A·I_n + B^{(n)} (I − Z D^{(n)})^{-1} Z C^{(n)}`.

use rayon::prelude::*;

use crate::colligation::{check_blocks, Colligation, PartitionStructure, QPencil, StateStructure};
use crate::error::{Error, Result};
use crate::numerics::{condition_1, ComplexMatrix, Lu, ToleranceConfig};
use crate::scalar::{is_finite, Real, C};

/// A `d`-tuple of `n×n` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct NcPoint<T> {
    blocks: Vec<ComplexMatrix<T>>,
}

impl<T: Real> NcPoint<T> {
    pub fn new(blocks: Vec<ComplexMatrix<T>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Structure("a point needs at least one coordinate".into()));
        }
        check_blocks(blocks.len(), &blocks)?;
        if blocks.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite("point coordinates".into()));
        }
        Ok(Self { blocks })
    }

    /// Level-1 embedding of a scalar point.
    pub fn from_scalar(z: &[C<T>]) -> Result<Self> {
        Self::new(z.iter().map(|&x| ComplexMatrix::scalar(x)).collect())
    }

    /// `Λ_j = diag(points[0][j], points[1][j], …)`.
    pub fn diagonal(points: &[Vec<C<T>>]) -> Result<Self> {
        let d = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::Structure("diagonal points of unequal arity".into()));
        }
        Self::new(
            (0..d)
                .map(|j| ComplexMatrix::diagonal(&points.iter().map(|p| p[j]).collect::<Vec<_>>()))
                .collect(),
        )
    }

    pub fn level(&self) -> usize {
        self.blocks[0].rows()
    }

    pub fn nvars(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[ComplexMatrix<T>] {
        &self.blocks
    }

    /// Scalar coordinates of a level-1 point.
    pub fn scalar_coords(&self) -> Option<Vec<C<T>>> {
        (self.level() == 1).then(|| self.blocks.iter().map(|b| b[(0, 0)]).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if other.nvars() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Self::new(
            self.blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        )
    }

    /// `S^{-1} Λ S` coordinatewise.
    pub fn similarity(&self, s: &ComplexMatrix<T>) -> Result<Self> {
        let lu = Lu::factor(s)?;
        if lu.is_singular() {
            return Err(Error::Numerical("similarity matrix is singular".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| lu.solve(&(b * s)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    pub fn scaled(&self, r: T) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b.scale_real(r)).collect(),
        }
    }
}

/// `Δ(z) = Σ z_j P_j`.
pub fn delta_matrix<T: Real>(p: &PartitionStructure, z: &[C<T>]) -> Result<ComplexMatrix<T>> {
    if z.len() != p.d() {
        return Err(Error::Arity {
            expected: p.d(),
            found: z.len(),
        });
    }
    let diag: Vec<C<T>> = (0..p.total()).map(|i| z[p.block_of(i)]).collect();
    Ok(ComplexMatrix::diagonal(&diag))
}

/// `Q(z) = Σ z_j Q_j` at a scalar point.
pub fn q_matrix<T: Real>(q: &QPencil<T>, z: &[C<T>]) -> Result<ComplexMatrix<T>> {
    q.evaluate(&NcPoint::from_scalar(z)?.blocks)
}

/// `Q(Λ) = Σ Q_j ⊗ Λ_j`.
pub fn q_matrix_nc<T: Real>(q: &QPencil<T>, at: &NcPoint<T>) -> Result<ComplexMatrix<T>> {
    q.evaluate(at.blocks())
}

/// `T^{(n)} = T ⊗ I_n`.
pub fn lift<T: Real>(t: &ComplexMatrix<T>, n: usize) -> ComplexMatrix<T> {
    if n == 1 {
        return t.clone();
    }
    t.kron(&ComplexMatrix::identity(n)).expect("lift dimensions are small")
}

/// A scalar function value with the resolvent's 1-norm condition number.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation<T> {
    pub value: C<T>,
    pub condition: T,
    pub warnings: Vec<String>,
}

/// A matrix function value at a level-`n` point.
#[derive(Clone, Debug, PartialEq)]
pub struct NcEvaluation<T> {
    pub value: ComplexMatrix<T>,
    pub condition: T,
    pub warnings: Vec<String>,
}

/// Resolvent data shared by evaluation and witness construction.
#[derive(Clone, Debug)]
pub struct Witness<T> {
    /// Direction `y ∈ C^n`.
    pub y: Vec<C<T>>,
    /// `L = (I − Z D^{(n)})^{-1} Z C^{(n)} y`.
    pub l: Vec<C<T>>,
    /// `v = C^{(n)} y + D^{(n)} L`.
    pub v: Vec<C<T>>,
    /// `C^{(n)*} v`, which equals `y` at a zero along `y`.
    pub c_star_v: Vec<C<T>>,
}

pub(crate) fn check_domain<T: Real>(
    s: &StateStructure<T>,
    at: &NcPoint<T>,
    tol: &ToleranceConfig<T>,
) -> Result<T> {
    let norm = s.domain_norm(at.blocks())?;
    if !(norm <= T::one() - tol.domain_margin) {
        return Err(Error::Domain(format!(
            "‖Q(point)‖ = {} exceeds 1 − margin = {}",
            norm.to_f64().unwrap_or(f64::NAN),
            (T::one() - tol.domain_margin).to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(norm)
}

fn condition_warnings<T: Real>(cond: T, tol: &ToleranceConfig<T>) -> Vec<String> {
    if cond > T::one() / tol.rank_tol {
        vec![format!(
            "ill-conditioned resolvent: condition number {:e}",
            cond.to_f64().unwrap_or(f64::INFINITY)
        )]
    } else {
        vec![]
    }
}

struct Resolvent<T> {
    z: ComplexMatrix<T>,
    d_n: ComplexMatrix<T>,
    lu: Lu<T>,
    condition: T,
}

fn resolvent<T: Real>(v: &Colligation<T>, at: &NcPoint<T>) -> Result<Resolvent<T>> {
    if at.nvars() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: at.nvars(),
        });
    }
    let n = at.level();
    let z = v.structure().state_operator(at.blocks())?;
    let d_n = lift(v.d(), n);
    let m = &ComplexMatrix::identity(z.rows()) - &(&z * &d_n);
    let lu = Lu::factor(&m)?;
    if lu.is_singular() {
        return Err(Error::Numerical("resolvent I − Z·D is singular".into()));
    }
    let condition = condition_1(&m)?;
    Ok(Resolvent { z, d_n, lu, condition })
}

/// Level-`n` value without the interior check; callers guarantee the
/// resolvent exists.
pub(crate) fn eval_nc_unchecked<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    tol: &ToleranceConfig<T>,
) -> Result<NcEvaluation<T>> {
    let n = at.level();
    let r = resolvent(v, at)?;
    let zc = &r.z * &lift(v.c(), n);
    let x = r.lu.solve(&zc)?;
    let value = &ComplexMatrix::identity(n).scale(v.a()) + &(&lift(v.b(), n) * &x);
    Ok(NcEvaluation {
        value,
        condition: r.condition,
        warnings: condition_warnings(r.condition, tol),
    })
}

/// `f(Λ)` for `Λ` strictly inside the domain.
pub fn eval_nc<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    tol: &ToleranceConfig<T>,
) -> Result<NcEvaluation<T>> {
    if at.nvars() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: at.nvars(),
        });
    }
    check_domain(v.structure(), at, tol)?;
    eval_nc_unchecked(v, at, tol)
}

/// Scalar value without the interior check.
pub(crate) fn eval_point_unchecked<T: Real>(
    v: &Colligation<T>,
    z: &[C<T>],
    tol: &ToleranceConfig<T>,
) -> Result<Evaluation<T>> {
    match v.structure() {
        StateStructure::Partition(p) => {
            // A + BΔ(I − DΔ)^{-1}C
            let delta = delta_matrix(p, z)?;
            let dd = v.d() * &delta;
            let m = &ComplexMatrix::identity(dd.rows()) - &dd;
            let lu = Lu::factor(&m)?;
            if lu.is_singular() {
                return Err(Error::Numerical("resolvent I − DΔ is singular".into()));
            }
            let x = lu.solve(v.c())?;
            let value = v.a() + (&(v.b() * &delta) * &x)[(0, 0)];
            let condition = condition_1(&m)?;
            Ok(Evaluation {
                value,
                condition,
                warnings: condition_warnings(condition, tol),
            })
        }
        StateStructure::MatrixBall { .. } => {
            let e = eval_nc_unchecked(v, &NcPoint::from_scalar(z)?, tol)?;
            Ok(Evaluation {
                value: e.value[(0, 0)],
                condition: e.condition,
                warnings: e.warnings,
            })
        }
    }
}

/// `f(z)` for `z` strictly inside the domain.
pub fn eval_point<T: Real>(v: &Colligation<T>, z: &[C<T>], tol: &ToleranceConfig<T>) -> Result<Evaluation<T>> {
    if z.len() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: z.len(),
        });
    }
    if !z.iter().all(is_finite) {
        return Err(Error::NonFinite("point".into()));
    }
    check_domain(v.structure(), &NcPoint::from_scalar(z)?, tol)?;
    eval_point_unchecked(v, z, tol)
}

/// Evaluates a batch in parallel; results keep the input order.
pub fn eval_points<T: Real>(
    v: &Colligation<T>,
    points: &[Vec<C<T>>],
    tol: &ToleranceConfig<T>,
) -> Vec<Result<Evaluation<T>>> {
    points.par_iter().map(|z| eval_point(v, z, tol)).collect()
}

pub(crate) fn witness_unchecked<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    y: &[C<T>],
) -> Result<Witness<T>> {
    let n = at.level();
    if y.len() != n {
        return Err(Error::Size(format!("direction has length {}, level is {n}", y.len())));
    }
    if y.iter().all(|x| x.norm() == T::zero()) {
        return Err(Error::Domain("direction must be nonzero".into()));
    }
    let r = resolvent(v, at)?;
    let c_n = lift(v.c(), n);
    let cy = c_n.mul_vec(y);
    let l = r.lu.solve_vec(&r.z.mul_vec(&cy))?;
    let dl = r.d_n.mul_vec(&l);
    let vv: Vec<C<T>> = cy.iter().zip(&dl).map(|(a, b)| a + b).collect();
    let c_star_v = c_n.adjoint().mul_vec(&vv);
    Ok(Witness {
        y: y.to_vec(),
        l,
        v: vv,
        c_star_v,
    })
}

/// Witness vectors `L`, `v` and `C^{(n)*} v` at an interior point.
pub fn witness<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    y: &[C<T>],
    tol: &ToleranceConfig<T>,
) -> Result<Witness<T>> {
    if at.nvars() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: at.nvars(),
        });
    }
    check_domain(v.structure(), at, tol)?;
    witness_unchecked(v, at, y)
}
