//! Radial boundary values, boundary zeros and boundary-portion tests.
//!
//! Radial samples `f(r_k Λ)` are combined by polynomial extrapolation in
//! `h = 1 − r` before the convergence test, since the raw samples of a
//! function analytic across `r = 1` approach their limit only like `1 − r_k`.

use rayon::prelude::*;
use serde::Serialize;

use crate::colligation::{Colligation, QPencil, StateStructure};
use crate::error::{Error, Result};
use crate::evaluate::{eval_nc_unchecked, NcPoint};
use crate::numerics::{svd, vec_norm, ComplexMatrix, ToleranceConfig};
use crate::scalar::{c, Real, C};
use crate::spectra::{relative_residual, test_matrix, SpectralResidual};

/// Boundary membership tolerance on `‖Q(Λ)‖ = 1`.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Points this close to the boundary are rescaled onto it.
pub const RENORMALIZE_BAND: f64 = 1e-6;
/// Spectral cutoff for approximate-spectrum membership.
pub const CONTAINMENT_TOL: f64 = 1e-6;
/// `f†` counts as non-isometric when `σ_min(f†) < 1 − BP_MARGIN`.
pub const BP_MARGIN: f64 = 1e-6;

/// Increasing radii in `(0, 1)` and the convergence cutoffs.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialSchedule<T> {
    radii: Vec<T>,
    pub convergence_tol: T,
    pub tail_tol: T,
    /// Degree of the extrapolating polynomial in `1 − r`.
    pub order: usize,
}

impl<T: Real> Default for RadialSchedule<T> {
    /// `r_k = 1 − 2^{−k}`, `k = 1..=20`.
    fn default() -> Self {
        Self {
            radii: (1..=20).map(|k| T::one() - T::lit(2f64.powi(-k))).collect(),
            convergence_tol: T::lit(1e-7),
            tail_tol: T::lit(1e-6),
            order: 4,
        }
    }
}

impl<T: Real> RadialSchedule<T> {
    pub fn new(radii: Vec<T>, convergence_tol: T, tail_tol: T, order: usize) -> Result<Self> {
        if radii.len() < order + 4 {
            return Err(Error::Domain(format!(
                "order-{order} extrapolation needs at least {} radii",
                order + 4
            )));
        }
        if radii.iter().any(|&r| !(r > T::zero() && r < T::one())) {
            return Err(Error::Domain("radii must lie in (0, 1)".into()));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("radii must be strictly increasing".into()));
        }
        if !(convergence_tol > T::zero()) || !(tail_tol > T::zero()) {
            return Err(Error::Tolerance("radial tolerances must be positive".into()));
        }
        Ok(Self {
            radii,
            convergence_tol,
            tail_tol,
            order,
        })
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }
}

/// Where `f†(Λ)` sits relative to `BP(f, 1)`. A scalar function has square
/// values, so isometric and coisometric values coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BpClass {
    NotConverged,
    IsometricValue,
    NonIsometricValue,
}

/// Boundary portion of a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryClass {
    Uni,
    Iso,
    Coiso,
    None,
}

impl BoundaryClass {
    pub fn is_iso(self) -> bool {
        matches!(self, Self::Uni | Self::Iso)
    }

    pub fn is_coiso(self) -> bool {
        matches!(self, Self::Uni | Self::Coiso)
    }
}

#[derive(Clone, Debug)]
pub struct RadialReport<T> {
    /// The analysed point, after any rescaling onto the boundary.
    pub point: NcPoint<T>,
    pub renormalized: bool,
    pub values: Vec<ComplexMatrix<T>>,
    pub extrapolated: Vec<ComplexMatrix<T>>,
    /// Successive differences of the extrapolated sequence.
    pub differences: Vec<T>,
    pub tail_estimate: T,
    pub limit: Option<ComplexMatrix<T>>,
    /// Singular values of the limit, descending.
    pub limit_singular_values: Vec<T>,
    pub bp_class: BpClass,
    /// `‖f†*f† − I‖`.
    pub isometry_defect: Option<T>,
    /// `‖f†f†* − I‖`.
    pub coisometry_defect: Option<T>,
}

fn to_boundary<T: Real>(s: &StateStructure<T>, at: &NcPoint<T>) -> Result<(NcPoint<T>, bool)> {
    let norm = s.domain_norm(at.blocks())?;
    let gap = (norm - T::one()).abs();
    if gap <= T::lit(BOUNDARY_TOL) {
        Ok((at.clone(), false))
    } else if gap <= T::lit(RENORMALIZE_BAND) {
        Ok((at.scaled(T::one() / norm), true))
    } else {
        Err(Error::Domain(format!(
            "‖Q(point)‖ = {} is not on the boundary",
            norm.to_f64().unwrap_or(f64::NAN)
        )))
    }
}

/// Lagrange weights evaluating the interpolant through `(h_i, ·)` at zero.
fn weights_at_zero<T: Real>(h: &[T]) -> Vec<T> {
    (0..h.len())
        .map(|i| {
            (0..h.len())
                .filter(|&j| j != i)
                .fold(T::one(), |w, j| w * h[j] / (h[j] - h[i]))
        })
        .collect()
}

fn defect<T: Real>(m: &ComplexMatrix<T>) -> T {
    (m - &ComplexMatrix::identity(m.rows())).op_norm()
}

/// Samples `f(r_k Λ)` and estimates `f†(Λ)`.
pub fn radial_values<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    sched: &RadialSchedule<T>,
    tol: &ToleranceConfig<T>,
) -> Result<RadialReport<T>> {
    if at.nvars() != v.nvars() {
        return Err(Error::Arity {
            expected: v.nvars(),
            found: at.nvars(),
        });
    }
    let (point, renormalized) = to_boundary(v.structure(), at)?;
    let mut values = Vec::with_capacity(sched.radii.len());
    let mut noise = T::zero();
    for &r in &sched.radii {
        let e = eval_nc_unchecked(v, &point.scaled(r), tol)?;
        noise = noise.max(T::epsilon() * e.condition * e.value.max_abs().max(T::one()));
        values.push(e.value);
    }
    let h: Vec<T> = sched.radii.iter().map(|&r| T::one() - r).collect();
    let window = sched.order + 1;
    let mut gain = T::one();
    let extrapolated: Vec<ComplexMatrix<T>> = (window..=values.len())
        .map(|end| {
            let w = weights_at_zero(&h[end - window..end]);
            gain = gain.max(w.iter().fold(T::zero(), |a, x| a + x.abs()));
            w.iter()
                .zip(&values[end - window..end])
                .fold(ComplexMatrix::zeros(values[0].rows(), values[0].cols()), |acc, (&wi, f)| {
                    &acc + &f.scale_real(wi)
                })
        })
        .collect();
    let differences: Vec<T> = extrapolated
        .windows(2)
        .map(|w| (&w[1] - &w[0]).max_abs())
        .collect();
    let floor = T::lit(10.0) * gain * noise;
    let m = differences.len();
    let (last, prev) = (differences[m - 1], differences[m - 2]);
    let tail_estimate = if last <= floor {
        last
    } else if last < prev {
        let q = last / prev;
        last * q / (T::one() - q)
    } else {
        T::infinity()
    };
    let converged = differences[m - 3..].iter().all(|&d| d < sched.convergence_tol) && tail_estimate < sched.tail_tol;
    let limit = converged.then(|| extrapolated[extrapolated.len() - 1].clone());
    let (bp_class, limit_singular_values, isometry_defect, coisometry_defect) = match &limit {
        None => (BpClass::NotConverged, vec![], None, None),
        Some(l) => {
            let sv = svd(l)?.singular_values;
            let smin = *sv.last().expect("nonempty");
            let class = if smin < T::one() - T::lit(BP_MARGIN) {
                BpClass::NonIsometricValue
            } else {
                BpClass::IsometricValue
            };
            let ls = l.adjoint();
            (class, sv, Some(defect(&(&ls * l))), Some(defect(&(l * &ls))))
        }
    };
    Ok(RadialReport {
        point,
        renormalized,
        values,
        extrapolated,
        differences,
        tail_estimate,
        limit,
        limit_singular_values,
        bp_class,
        isometry_defect,
        coisometry_defect,
    })
}

#[derive(Clone, Debug)]
pub struct BoundaryZeroReport<T> {
    pub radial: RadialReport<T>,
    pub is_zero: bool,
    /// Unit direction annihilated by `f†`, when one was found.
    pub direction: Option<Vec<C<T>>>,
    /// `‖f† y‖` for the chosen unit `y`.
    pub residual: Option<T>,
}

/// Whether `f†(Λ) y = 0` for the given `y`, or for the least singular
/// direction of `f†` when no `y` is given. A divergent radial sequence is
/// never reported as a zero.
pub fn is_boundary_zero<T: Real>(
    v: &Colligation<T>,
    at: &NcPoint<T>,
    y: Option<&[C<T>]>,
    sched: &RadialSchedule<T>,
    tol: &ToleranceConfig<T>,
) -> Result<BoundaryZeroReport<T>> {
    let radial = radial_values(v, at, sched, tol)?;
    let Some(limit) = &radial.limit else {
        return Ok(BoundaryZeroReport {
            radial,
            is_zero: false,
            direction: None,
            residual: None,
        });
    };
    let (dir, res) = match y {
        Some(y) => {
            if y.len() != limit.cols() || vec_norm(y) == T::zero() {
                return Err(Error::Domain("direction must be a nonzero vector of the point's level".into()));
            }
            let n = vec_norm(y);
            let u: Vec<C<T>> = y.iter().map(|z| z / n).collect();
            let r = vec_norm(&limit.mul_vec(&u));
            (u, r)
        }
        None => {
            let s = svd(limit)?;
            let k = s.singular_values.len() - 1;
            (s.v.column(k), s.singular_values[k])
        }
    };
    let is_zero = res <= sched.convergence_tol;
    Ok(BoundaryZeroReport {
        radial,
        is_zero,
        direction: Some(dir),
        residual: Some(res),
    })
}

/// Classifies `Q(Λ)` as isometric and/or coisometric within `rank_tol`.
pub fn classify_boundary_point<T: Real>(
    q: &QPencil<T>,
    at: &NcPoint<T>,
    tol: &ToleranceConfig<T>,
) -> Result<BoundaryClass> {
    let m = q.evaluate(at.blocks())?;
    let ms = m.adjoint();
    let iso = defect(&(&ms * &m)) <= tol.rank_tol;
    let coiso = defect(&(&m * &ms)) <= tol.rank_tol;
    Ok(match (iso, coiso) {
        (true, true) => BoundaryClass::Uni,
        (true, false) => BoundaryClass::Iso,
        (false, true) => BoundaryClass::Coiso,
        (false, false) => BoundaryClass::None,
    })
}

/// The pencil describing the domain of a structure (`Q_diag` for partitions).
pub fn domain_pencil<T: Real>(s: &StateStructure<T>) -> QPencil<T> {
    match s {
        StateStructure::Partition(p) => QPencil::diag(p.d()),
        StateStructure::MatrixBall { pencil, .. } => pencil.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObligationKind {
    BoundaryZero,
    NonIsometricOnIsoPortion,
    NonCoisometricOnCoisoPortion,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub sample: usize,
    pub kind: ObligationKind,
    pub sigma_min: f64,
}

/// Outcome of the containment checks over a sample set.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ContainmentReport {
    pub samples: usize,
    pub not_converged: usize,
    pub boundary_zeros: usize,
    pub bp_iso_points: usize,
    pub bp_coiso_points: usize,
    /// Coisometric-portion obligations skipped because `V` is not a coisometry.
    pub bp_coiso_not_applicable: usize,
    /// Samples whose test matrix is singular but which are not boundary
    /// zeros; reported only, since equality is not claimed.
    pub spectrum_not_zero: usize,
    /// Largest `σ_min` among checked obligations.
    pub worst_sigma_min: f64,
    /// Largest `‖(D^{(n)*} − Z(Λ)) v_K‖ / ‖v_K‖` along the radial witnesses
    /// at boundary zeros.
    pub worst_witness_bound: f64,
    pub counterexamples: Vec<Counterexample>,
    pub note: String,
}

struct SampleOutcome {
    not_converged: bool,
    zero: bool,
    bp_iso: bool,
    bp_coiso: bool,
    coiso_na: bool,
    spectrum_not_zero: bool,
    sigma: f64,
    witness_bound: f64,
    counterexamples: Vec<Counterexample>,
}

fn check_sample<T: Real>(
    v: &Colligation<T>,
    idx: usize,
    at: &NcPoint<T>,
    sched: &RadialSchedule<T>,
    tol: &ToleranceConfig<T>,
    coisometric_v: bool,
) -> Result<SampleOutcome> {
    let zr = is_boundary_zero(v, at, None, sched, tol)?;
    let point = &zr.radial.point;
    let m = test_matrix(v, point)?;
    let spec = SpectralResidual::from_matrix(&m, tol)?;
    let sigma = spec.sigma_min;
    let sigma64 = sigma.to_f64().unwrap_or(f64::NAN);
    let within = sigma <= T::lit(CONTAINMENT_TOL);
    let class = classify_boundary_point(&domain_pencil(v.structure()), point, tol)?;
    let converged = zr.radial.limit.is_some();
    let nonisometric = zr.radial.bp_class == BpClass::NonIsometricValue;
    let bp_iso = nonisometric && class.is_iso();
    let bp_coiso_candidate = nonisometric && class.is_coiso();
    let bp_coiso = bp_coiso_candidate && coisometric_v;
    let mut out = SampleOutcome {
        not_converged: !converged,
        zero: zr.is_zero,
        bp_iso,
        bp_coiso,
        coiso_na: bp_coiso_candidate && !coisometric_v,
        spectrum_not_zero: within && !zr.is_zero,
        sigma: f64::NAN,
        witness_bound: f64::NAN,
        counterexamples: vec![],
    };
    if zr.is_zero || bp_iso || bp_coiso {
        out.sigma = sigma64;
    }
    if zr.is_zero {
        let y = zr.direction.as_ref().expect("zero has a direction");
        let r = *sched.radii().last().expect("nonempty schedule");
        let w = crate::evaluate::witness_unchecked(v, &point.scaled(r), y)?;
        out.witness_bound = relative_residual(&m, &w.v).to_f64().unwrap_or(f64::NAN);
    }
    let mut push = |kind| {
        out.counterexamples.push(Counterexample {
            sample: idx,
            kind,
            sigma_min: sigma64,
        })
    };
    if !within {
        if zr.is_zero {
            push(ObligationKind::BoundaryZero);
        }
        if bp_iso {
            push(ObligationKind::NonIsometricOnIsoPortion);
        }
        if bp_coiso {
            push(ObligationKind::NonCoisometricOnCoisoPortion);
        }
    }
    Ok(out)
}

/// Checks that every boundary zero, and every non-isometric boundary value
/// on the isometric (resp. coisometric) portion, lies in the approximate
/// spectrum of `D*`. In finite dimensions approximate-spectrum membership is
/// tested as `σ_min(D^{(n)*} − Z(Λ)) ≤ CONTAINMENT_TOL`.
pub fn check_containments<T: Real>(
    v: &Colligation<T>,
    samples: &[NcPoint<T>],
    sched: &RadialSchedule<T>,
    tol: &ToleranceConfig<T>,
) -> Result<ContainmentReport> {
    let rep = v.validate(tol);
    if !rep.is_isometry {
        return Err(Error::Unsupported(format!(
            "containment checks need an isometric colligation (isometry defect {:e})",
            rep.isometry_defect
        )));
    }
    let outcomes = samples
        .par_iter()
        .enumerate()
        .map(|(i, at)| check_sample(v, i, at, sched, tol, rep.is_coisometry))
        .collect::<Result<Vec<_>>>()?;
    let mut out = ContainmentReport {
        samples: samples.len(),
        note: "approximate spectrum tested as point spectrum via the smallest singular value (finite dimensions)"
            .into(),
        ..Default::default()
    };
    for o in outcomes {
        out.not_converged += o.not_converged as usize;
        out.boundary_zeros += o.zero as usize;
        out.bp_iso_points += o.bp_iso as usize;
        out.bp_coiso_points += o.bp_coiso as usize;
        out.bp_coiso_not_applicable += o.coiso_na as usize;
        out.spectrum_not_zero += o.spectrum_not_zero as usize;
        if o.sigma.is_finite() {
            out.worst_sigma_min = out.worst_sigma_min.max(o.sigma);
        }
        if o.witness_bound.is_finite() {
            out.worst_witness_bound = out.worst_witness_bound.max(o.witness_bound);
        }
        out.counterexamples.extend(o.counterexamples);
    }
    Ok(out)
}

/// One boundary point of a scan.
#[derive(Clone, Debug)]
pub struct BoundaryScanRow<T> {
    pub index: usize,
    pub point: NcPoint<T>,
    /// `‖f†(Λ)‖` when the radial limit exists.
    pub limit_norm: Option<T>,
    /// `σ_min(f†(Λ))` when the radial limit exists.
    pub limit_sigma_min: Option<T>,
    /// `σ_min(D^{(n)*} − Z(Λ))`.
    pub sigma_min: T,
    pub class: BoundaryClass,
    pub bp_class: BpClass,
    pub boundary_zero: bool,
}

/// Radial limits, boundary zeros, spectral residuals and portions at each
/// point, in input order.
pub fn boundary_scan<T: Real>(
    v: &Colligation<T>,
    points: &[NcPoint<T>],
    sched: &RadialSchedule<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Vec<BoundaryScanRow<T>>> {
    let q = domain_pencil(v.structure());
    points
        .par_iter()
        .enumerate()
        .map(|(index, at)| {
            let z = is_boundary_zero(v, at, None, sched, tol)?;
            let point = z.radial.point.clone();
            let m = test_matrix(v, &point)?;
            Ok(BoundaryScanRow {
                index,
                limit_norm: z.radial.limit.as_ref().map(|l| l.op_norm()),
                limit_sigma_min: z.radial.limit_singular_values.last().copied(),
                sigma_min: SpectralResidual::from_matrix(&m, tol)?.sigma_min,
                class: classify_boundary_point(&q, &point, tol)?,
                bp_class: z.radial.bp_class,
                boundary_zero: z.is_zero,
                point,
            })
        })
        .collect()
}

/// Points of `T^d` on an `m`-per-axis grid of angles `2πk/m`, projected
/// radially onto the boundary of the structure's domain.
pub fn boundary_grid<T: Real>(s: &StateStructure<T>, m: usize) -> Result<Vec<Vec<C<T>>>> {
    let d = s.d();
    let total = m
        .checked_pow(d as u32)
        .ok_or_else(|| Error::Size(format!("{m}^{d} grid points overflow")))?;
    (0..total)
        .map(|mut i| {
            let mut z = vec![c(T::zero(), T::zero()); d];
            for zj in z.iter_mut().rev() {
                let theta = T::TAU() * T::from_usize_lossy(i % m) / T::from_usize_lossy(m);
                *zj = c(theta.cos(), theta.sin());
                i /= m;
            }
            let norm = s.domain_norm(NcPoint::from_scalar(&z)?.blocks())?;
            Ok(z.into_iter().map(|x| x / norm).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{ball_coordinate, f_alpha_beta, famous_example};
    use crate::spectra::diag_residual;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn scalar(z: &[C<f64>]) -> NcPoint<f64> {
        NcPoint::from_scalar(z).unwrap()
    }

    #[test]
    fn default_schedule_shape() {
        let s = RadialSchedule::<f64>::default();
        assert_eq!(s.radii().len(), 20);
        assert_eq!(s.radii()[0], 0.5);
        assert!(RadialSchedule::new(vec![0.5, 0.4, 0.6, 0.7, 0.8, 0.9, 0.95, 0.97], 1e-7, 1e-6, 4).is_err());
        assert!(RadialSchedule::new(vec![0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.97], 1e-7, 1e-6, 4).is_err());
        assert!(RadialSchedule::new(vec![0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.97, 0.99], 1e-7, 1e-6, 4).is_ok());
    }

    #[test]
    fn famous_limit_at_singular_point() {
        let v = famous_example::<f64>();
        let one = c(1.0, 0.0);
        let r = radial_values(&v, &scalar(&[one, one]), &RadialSchedule::default(), &tol()).unwrap();
        let l = r.limit.expect("converges");
        assert!((l[(0, 0)] - c(-1.0, 0.0)).norm() <= 1e-6);
        assert_eq!(r.bp_class, BpClass::IsometricValue);
        assert!(diag_residual(&v, &[one, one], &tol()).unwrap().sigma_min <= 1e-12);
    }

    #[test]
    fn f_half_half_limit() {
        let v = f_alpha_beta::<f64>(c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        let one = c(1.0, 0.0);
        let r = radial_values(&v, &scalar(&[one, one]), &RadialSchedule::default(), &tol()).unwrap();
        assert!((r.limit.unwrap()[(0, 0)] - c(-1.0, 0.0)).norm() <= 1e-6);
    }

    #[test]
    fn famous_unimodular_elsewhere() {
        let v = famous_example::<f64>();
        let r = radial_values(
            &v,
            &scalar(&[c(1.0, 0.0), c(-1.0, 0.0)]),
            &RadialSchedule::default(),
            &tol(),
        )
        .unwrap();
        assert!((r.limit.unwrap()[(0, 0)].norm() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn interior_point_rejected() {
        let v = famous_example::<f64>();
        let e = radial_values(&v, &scalar(&[c(0.5, 0.0), c(0.0, 0.0)]), &RadialSchedule::default(), &tol());
        assert!(matches!(e, Err(Error::Domain(_))));
    }

    #[test]
    fn near_boundary_is_renormalized() {
        let v = famous_example::<f64>();
        let r = radial_values(
            &v,
            &scalar(&[c(1.0 - 1e-7, 0.0), c(0.0, 0.0)]),
            &RadialSchedule::default(),
            &tol(),
        )
        .unwrap();
        assert!(r.renormalized);
    }

    #[test]
    fn ball_coordinate_boundary_zero() {
        let v = ball_coordinate::<f64>(1, 2).unwrap();
        let z = is_boundary_zero(
            &v,
            &scalar(&[c(0.0, 0.0), c(1.0, 0.0)]),
            None,
            &RadialSchedule::default(),
            &tol(),
        )
        .unwrap();
        assert!(z.is_zero);
        let level2 = NcPoint::new(vec![ComplexMatrix::zeros(2, 2), ComplexMatrix::identity(2)]).unwrap();
        let z = is_boundary_zero(&v, &level2, None, &RadialSchedule::default(), &tol()).unwrap();
        assert!(z.is_zero);
    }

    #[test]
    fn famous_not_zero_at_singular_point() {
        let v = famous_example::<f64>();
        let one = c(1.0, 0.0);
        let z = is_boundary_zero(&v, &scalar(&[one, one]), None, &RadialSchedule::default(), &tol()).unwrap();
        assert!(!z.is_zero);
    }

    #[test]
    fn classification_examples() {
        let one = c(1.0, 0.0);
        let t = tol();
        assert_eq!(
            classify_boundary_point(&QPencil::diag(2), &scalar(&[one, one]), &t).unwrap(),
            BoundaryClass::Uni
        );
        assert_eq!(
            classify_boundary_point(&QPencil::diag(2), &scalar(&[one, c(0.5, 0.0)]), &t).unwrap(),
            BoundaryClass::None
        );
        assert_eq!(
            classify_boundary_point(&QPencil::row(2), &scalar(&[one, c(0.0, 0.0)]), &t).unwrap(),
            BoundaryClass::Coiso
        );
    }

    #[test]
    fn famous_boundary_zero_is_in_spectrum() {
        // 2λμ − λ − μ = 0 at (−1, 1/3)
        let v = famous_example::<f64>();
        let at = scalar(&[c(-1.0, 0.0), c(1.0 / 3.0, 0.0)]);
        let rep = check_containments(&v, &[at], &RadialSchedule::default(), &tol()).unwrap();
        assert_eq!(rep.boundary_zeros, 1);
        assert!(rep.counterexamples.is_empty());
        assert!(rep.worst_sigma_min <= 1e-12);
    }

    #[test]
    fn scan_rows_follow_input_order() {
        let v = famous_example::<f64>();
        let pts: Vec<NcPoint<f64>> = boundary_grid(v.structure(), 4)
            .unwrap()
            .iter()
            .map(|z| scalar(z))
            .collect();
        let rows = boundary_scan(&v, &pts, &RadialSchedule::default(), &tol()).unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows.iter().enumerate().all(|(i, r)| r.index == i));
        // (1, 1) is the singular point: in the spectrum, unimodular limit
        assert!(rows[0].sigma_min <= 1e-12);
        assert_eq!(rows[0].class, BoundaryClass::Uni);
        assert!(rows.iter().all(|r| !r.boundary_zero && r.bp_class == BpClass::IsometricValue));
    }

    #[test]
    fn grid_lies_on_boundary() {
        let s = ball_coordinate::<f64>(1, 2).unwrap();
        for z in boundary_grid(s.structure(), 5).unwrap() {
            let n = s.structure().domain_norm(scalar(&z).blocks()).unwrap();
            assert!((n - 1.0).abs() <= 1e-14);
        }
    }
}
