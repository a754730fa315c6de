//! Zeros along complex lines from determinant pencils.
//!
//! A one-variable determinant is sampled at equispaced points of the unit
//! circle, its coefficients are recovered with a discrete Fourier transform,
//! and the roots are the eigenvalues of the companion matrix.

use rayon::prelude::*;

use crate::colligation::{Colligation, PartitionStructure, StateStructure};
use crate::error::{Error, Result};
use crate::evaluate::{delta_matrix, eval_point, NcPoint};
use crate::numerics::{det, eigenvalues, ComplexMatrix, ToleranceConfig};
use crate::scalar::{c, czero, Real, C};

use super::residual::diag_residual;

/// Roots of a one-variable determinant along a line.
#[derive(Clone, Debug, PartialEq)]
pub enum PencilRoots<T> {
    Roots(Vec<C<T>>),
    /// The determinant vanishes identically, so every point is a root.
    Degenerate,
}

impl<T: Real> PencilRoots<T> {
    pub fn roots(&self) -> &[C<T>] {
        match self {
            Self::Roots(r) => r,
            Self::Degenerate => &[],
        }
    }
}

fn unit_root<T: Real>(k: usize, m: usize) -> C<T> {
    let theta = T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(m);
    c(theta.cos(), theta.sin())
}

/// Coefficients (ascending) of the degree-`≤ degree` polynomial through
/// `p` sampled at the `degree + 1` roots of unity.
pub fn interpolate_on_circle<T: Real>(degree: usize, p: impl Fn(C<T>) -> Result<C<T>>) -> Result<Vec<C<T>>> {
    let m = degree + 1;
    let values = (0..m).map(|k| p(unit_root(k, m))).collect::<Result<Vec<_>>>()?;
    let scale = T::one() / T::from_usize_lossy(m);
    Ok((0..m)
        .map(|j| {
            values
                .iter()
                .enumerate()
                .fold(czero(), |acc, (k, v)| acc + v * unit_root::<T>((j * k) % m, m).conj())
                * scale
        })
        .collect())
}

fn trim_tolerance<T: Real>(coeffs: &[C<T>]) -> T {
    let scale = coeffs.iter().map(|z| z.norm()).fold(T::one(), T::max);
    T::lit(1e3) * T::epsilon() * scale
}

/// Roots of `Σ coeffs[k] t^k` after trimming negligible leading terms.
pub fn poly_roots<T: Real>(coeffs: &[C<T>]) -> Result<PencilRoots<T>> {
    let tiny = trim_tolerance(coeffs);
    let Some(top) = coeffs.iter().rposition(|z| z.norm() > tiny) else {
        return Ok(PencilRoots::Degenerate);
    };
    if top == 0 {
        return Ok(PencilRoots::Roots(vec![]));
    }
    let lead = coeffs[top];
    let mut comp = ComplexMatrix::zeros(top, top);
    for i in 1..top {
        comp[(i, i - 1)] = c(T::one(), T::zero());
    }
    for i in 0..top {
        comp[(i, top - 1)] = -coeffs[i] / lead;
    }
    let mut roots = eigenvalues(&comp)?;
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(PencilRoots::Roots(roots))
}

fn partition_of<T: Real>(v: &Colligation<T>) -> Result<&PartitionStructure> {
    match v.structure() {
        StateStructure::Partition(p) => Ok(p),
        other => Err(Error::Structure(format!(
            "determinant pencil needs a partition colligation, found {}",
            other.kind()
        ))),
    }
}

/// Roots of `t ↦ det(D* − Δ(λ))` with coordinate `varied` replaced by `t`;
/// the other coordinates come from `fixed`.
pub fn det_pencil_roots<T: Real>(v: &Colligation<T>, fixed: &[C<T>], varied: usize) -> Result<PencilRoots<T>> {
    let p = partition_of(v)?;
    if fixed.len() != p.d() {
        return Err(Error::Arity {
            expected: p.d(),
            found: fixed.len(),
        });
    }
    if varied >= p.d() {
        return Err(Error::Domain(format!("varied index {varied} out of range")));
    }
    let ds = v.d().adjoint();
    let coeffs = interpolate_on_circle(p.dims()[varied], |t| {
        let mut z = fixed.to_vec();
        z[varied] = t;
        det(&(&ds - &delta_matrix(p, &z)?))
    })?;
    poly_roots(&coeffs)
}

/// Dense coefficients of `det(D* − Δ(λ))`, degree `N_j` in `λ_j`.
#[derive(Clone, Debug)]
pub struct DetPolynomial<T> {
    pub degrees: Vec<usize>,
    /// Row-major over exponent multi-indices, last variable fastest.
    pub coeffs: Vec<C<T>>,
}

impl<T: Real> DetPolynomial<T> {
    fn index(&self, exps: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for (e, d) in exps.iter().zip(&self.degrees) {
            if e > d {
                return None;
            }
            idx = idx * (d + 1) + e;
        }
        Some(idx)
    }

    /// Coefficient of `Π λ_j^{exps_j}` (zero beyond the degree bounds).
    pub fn coeff(&self, exps: &[usize]) -> C<T> {
        self.index(exps).map_or(czero(), |i| self.coeffs[i])
    }

    pub fn eval(&self, z: &[C<T>]) -> C<T> {
        let mut exps = vec![0; self.degrees.len()];
        let mut acc = czero();
        for &cf in &self.coeffs {
            let mono = exps
                .iter()
                .zip(z)
                .fold(c(T::one(), T::zero()), |m, (&e, &x)| m * x.powu(e as u32));
            acc = acc + cf * mono;
            for j in (0..exps.len()).rev() {
                if exps[j] < self.degrees[j] {
                    exps[j] += 1;
                    break;
                }
                exps[j] = 0;
            }
        }
        acc
    }
}

/// Recovers `det(D* − Δ(λ))` from samples on the torus grid of roots of
/// unity with a multi-dimensional DFT.
pub fn det_polynomial<T: Real>(v: &Colligation<T>) -> Result<DetPolynomial<T>> {
    let p = partition_of(v)?;
    let degrees = p.dims().to_vec();
    let sizes: Vec<usize> = degrees.iter().map(|n| n + 1).collect();
    let total: usize = sizes.iter().product();
    let unravel = |mut i: usize| {
        let mut out = vec![0; sizes.len()];
        for j in (0..sizes.len()).rev() {
            out[j] = i % sizes[j];
            i /= sizes[j];
        }
        out
    };
    let ds = v.d().adjoint();
    let samples = (0..total)
        .map(|i| {
            let k = unravel(i);
            let z: Vec<C<T>> = k.iter().zip(&sizes).map(|(&kj, &m)| unit_root(kj, m)).collect();
            det(&(&ds - &delta_matrix(p, &z)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let scale = T::one() / T::from_usize_lossy(total);
    let coeffs = (0..total)
        .map(|a| {
            let alpha = unravel(a);
            samples.iter().enumerate().fold(czero(), |acc, (i, s)| {
                let k = unravel(i);
                let w = alpha
                    .iter()
                    .zip(&k)
                    .zip(&sizes)
                    .fold(c(T::one(), T::zero()), |w, ((&aj, &kj), &m)| w * unit_root::<T>((aj * kj) % m, m).conj());
                acc + s * w
            }) * scale
        })
        .collect();
    Ok(DetPolynomial { degrees, coeffs })
}

/// Roots of `t ↦ det [[A, B], [Z C, Z D − I]]` with `Z = Z(base + t·dir)`.
/// Inside the domain these are exactly the zeros of `f` on the line; roots
/// outside the domain carry no meaning and are returned as found.
pub fn realization_pencil_roots<T: Real>(
    v: &Colligation<T>,
    base: &[C<T>],
    dir: &[C<T>],
) -> Result<PencilRoots<T>> {
    if base.len() != v.nvars() || dir.len() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: base.len().min(dir.len()),
        });
    }
    let s = v.structure();
    let degree = s.input_dim();
    let coeffs = interpolate_on_circle(degree, |t| {
        let z: Vec<C<T>> = base.iter().zip(dir).map(|(b, d)| b + d * t).collect();
        let zm = s.state_operator(NcPoint::from_scalar(&z)?.blocks())?;
        let lower = &(&zm * v.d()) - &ComplexMatrix::identity(degree);
        let m = ComplexMatrix::block2x2(&ComplexMatrix::scalar(v.a()), v.b(), &(&zm * v.c()), &lower)?;
        det(&m)
    })?;
    poly_roots(&coeffs)
}

/// One zero found by a scan.
#[derive(Clone, Debug)]
pub struct ScanRow<T> {
    pub grid_index: usize,
    pub point: Vec<C<T>>,
    pub abs_f: T,
    pub sigma_min: T,
}

/// Result of scanning lines for zeros.
#[derive(Clone, Debug)]
pub struct ZeroScan<T> {
    pub rows: Vec<ScanRow<T>>,
    /// Grid indices whose line is contained in the determinantal variety.
    pub degenerate_lines: Vec<usize>,
}

/// For each grid value placed at coordinate `axis`, finds the pencil roots
/// in coordinate `vary` and keeps those strictly inside the domain. The
/// remaining coordinates come from `base`.
pub fn zeros_scan<T: Real>(
    v: &Colligation<T>,
    axis: usize,
    vary: usize,
    grid: &[C<T>],
    base: &[C<T>],
    tol: &ToleranceConfig<T>,
) -> Result<ZeroScan<T>> {
    partition_of(v)?;
    if axis == vary {
        return Err(Error::Domain("scan axis and varied coordinate coincide".into()));
    }
    if axis >= v.nvars() || vary >= v.nvars() {
        return Err(Error::Domain("scan coordinate out of range".into()));
    }
    if base.len() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: base.len(),
        });
    }
    let limit = T::one() - tol.domain_margin;
    let per_line = grid
        .par_iter()
        .enumerate()
        .map(|(gi, &g)| -> Result<(Vec<ScanRow<T>>, bool)> {
            let mut fixed = base.to_vec();
            fixed[axis] = g;
            if fixed.iter().any(|z| !(z.norm() <= limit)) {
                return Ok((vec![], false));
            }
            match det_pencil_roots(v, &fixed, vary)? {
                PencilRoots::Degenerate => Ok((vec![], true)),
                PencilRoots::Roots(roots) => {
                    let mut rows = vec![];
                    for t in roots {
                        if !(t.norm() <= limit) {
                            continue;
                        }
                        let mut z = fixed.clone();
                        z[vary] = t;
                        let f = eval_point(v, &z, tol)?;
                        let s = diag_residual(v, &z, tol)?;
                        rows.push(ScanRow {
                            grid_index: gi,
                            point: z,
                            abs_f: f.value.norm(),
                            sigma_min: s.sigma_min,
                        });
                    }
                    Ok((rows, false))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = ZeroScan {
        rows: vec![],
        degenerate_lines: vec![],
    };
    for (gi, (rows, degenerate)) in per_line.into_iter().enumerate() {
        out.rows.extend(rows);
        if degenerate {
            out.degenerate_lines.push(gi);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{ball_coordinate, famous_example};

    #[test]
    fn famous_line_roots() {
        let v = famous_example::<f64>();
        let r = det_pencil_roots(&v, &[c(0.25, 0.0), czero()], 1).unwrap();
        assert_eq!(r.roots().len(), 1);
        assert!((r.roots()[0] - c(-0.5, 0.0)).norm() <= 1e-14);
        let r = det_pencil_roots(&v, &[czero(), czero()], 1).unwrap();
        assert!(r.roots()[0].norm() <= 1e-15);
        let r = det_pencil_roots(&v, &[c(0.5, 0.0), czero()], 1).unwrap();
        assert_eq!(r, PencilRoots::Roots(vec![]));
    }

    #[test]
    fn famous_det_polynomial() {
        let p = det_polynomial(&famous_example::<f64>()).unwrap();
        let want = [([0, 0], 0.0), ([1, 0], -0.5), ([0, 1], -0.5), ([1, 1], 1.0)];
        for (e, w) in want {
            assert!((p.coeff(&e) - c(w, 0.0)).norm() <= 1e-12);
        }
    }

    #[test]
    fn zero_polynomial_is_degenerate() {
        assert_eq!(poly_roots::<f64>(&[czero(), czero()]).unwrap(), PencilRoots::Degenerate);
    }

    #[test]
    fn quadratic_roots() {
        // (t − 2)(t + i) = t² + (i − 2)t − 2i
        let r = poly_roots(&[c(0.0, -2.0), c(-2.0, 1.0), c(1.0, 0.0)]).unwrap();
        let r = r.roots();
        assert!((r[0] - c(0.0, -1.0)).norm() <= 1e-14);
        assert!((r[1] - c(2.0, 0.0)).norm() <= 1e-14);
    }

    #[test]
    fn ball_coordinate_line_zero() {
        let v = ball_coordinate::<f64>(1, 2).unwrap();
        // f(z) = z_1 on z = (0.3, 0.1) + t(1, 0.5): root t = −0.3
        let r = realization_pencil_roots(&v, &[c(0.3, 0.0), c(0.1, 0.0)], &[c(1.0, 0.0), c(0.5, 0.0)])
            .unwrap();
        assert_eq!(r.roots().len(), 1);
        assert!((r.roots()[0] - c(-0.3, 0.0)).norm() <= 1e-14);
    }

    #[test]
    fn scan_contains_golden_zero() {
        let v = famous_example::<f64>();
        let grid = [c(0.0, 0.0), c(0.25, 0.0), c(0.5, 0.0)];
        let scan = zeros_scan(&v, 0, 1, &grid, &[czero(), czero()], &ToleranceConfig::default()).unwrap();
        let row = scan.rows.iter().find(|r| r.grid_index == 1).unwrap();
        assert!((row.point[1] - c(-0.5, 0.0)).norm() <= 1e-14);
        assert!(row.abs_f <= 1e-14 && row.sigma_min <= 1e-14);
        assert!(scan.rows.iter().all(|r| r.grid_index != 2));
    }
}
