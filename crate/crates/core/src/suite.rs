//! The acceptance battery: ten criteria, each run on seeded random data and
//! reported as pass/fail with a one-line summary.

use std::f64::consts::TAU;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::{
    check_containments, is_boundary_zero, radial_values, BpClass, RadialSchedule,
};
use crate::colligation::{Colligation, QPencil, StateStructure};
use crate::error::{Error, Result};
use crate::evaluate::{eval_nc, eval_point, witness, NcPoint};
use crate::numerics::random::{complex_gaussian, gaussian_matrix, haar_unitary, rng_from_seed};
use crate::numerics::{
    eigenvalues, nullspace, subspace_angle_sin, ComplexMatrix, Lu, ToleranceConfig,
};
use crate::realizations::{ball_coordinate, f_alpha_beta, famous_example, random};
use crate::spectra::{
    certify, det_pencil_roots, det_polynomial, diag_eigen_residual, diag_residual, ncq_residual,
    realization_pencil_roots, relative_residual, row_eigen_residual, test_matrix, zeros_scan,
    PencilRoots, Thresholds, Verdict,
};

type Cx = num_complex::Complex64;
type Mat = ComplexMatrix<f64>;
type Coll = Colligation<f64>;

/// Identifier and title of every criterion, in run order.
pub const CRITERIA: [(u8, &str); 10] = [
    (1, "determinant identity"),
    (2, "zero/eigenvalue equivalence sweep"),
    (3, "zero-scan cross-check"),
    (4, "eigenvector witness"),
    (5, "level-2 certificates"),
    (6, "ball forward direction"),
    (7, "boundary golden values"),
    (8, "inner boundary modulus"),
    (9, "boundary containment"),
    (10, "structural properties"),
];

/// Wall-clock budget for the whole battery.
pub const SUITE_BUDGET_SECONDS: f64 = 300.0;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub total_seconds: f64,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

fn tol() -> ToleranceConfig<f64> {
    ToleranceConfig::default()
}

/// Uniform point of the disk of the given radius.
pub fn disk_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Cx {
    Cx::from_polar(radius * rng.random::<f64>().sqrt(), TAU * rng.random::<f64>())
}

pub fn unimodular<R: Rng + ?Sized>(rng: &mut R) -> Cx {
    Cx::from_polar(1.0, TAU * rng.random::<f64>())
}

/// Uniform point of the polydisk of the given radius.
pub fn polydisk_point<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> Vec<Cx> {
    (0..d).map(|_| disk_point(rng, radius)).collect()
}

/// Uniform point of the unit sphere in `C^d`.
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Cx> {
    let g: Vec<Cx> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let n = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    g.into_iter().map(|z| z / n).collect()
}

/// Uniform point of the Euclidean ball of the given radius in `C^d`.
pub fn ball_point<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> Vec<Cx> {
    let r = radius * rng.random::<f64>().powf(1.0 / (2 * d) as f64);
    sphere_point(rng, d).into_iter().map(|z| z * r).collect()
}

/// Random `n × n` matrix with operator norm `norm`.
pub fn contraction<R: Rng + ?Sized>(rng: &mut R, n: usize, norm: f64) -> Mat {
    let g = gaussian_matrix::<f64, R>(n, n, rng);
    let s = g.op_norm();
    g.scale_real(norm / s)
}

/// `I + eps·G/‖G‖` for Gaussian `G`; invertible whenever `eps < 1`.
pub fn near_identity<R: Rng + ?Sized>(rng: &mut R, n: usize, eps: f64) -> Mat {
    &Mat::identity(n) + &contraction(rng, n, eps)
}

/// Random point inside the domain of `s` at level `n`, with `‖Q(Λ)‖ ≤ radius`.
pub fn interior_point<R: Rng + ?Sized>(
    rng: &mut R,
    s: &StateStructure<f64>,
    n: usize,
    radius: f64,
) -> Result<NcPoint<f64>> {
    let d = s.d();
    let raw = if n == 1 {
        match s {
            StateStructure::Partition(_) => NcPoint::from_scalar(&polydisk_point(rng, d, radius))?,
            _ => NcPoint::from_scalar(&ball_point(rng, d, 1.0))?,
        }
    } else {
        NcPoint::new((0..d).map(|_| gaussian_matrix::<f64, R>(n, n, rng)).collect())?
    };
    let norm = s.domain_norm(raw.blocks())?;
    let target = radius * rng.random::<f64>().powf(0.25);
    Ok(if norm > target { raw.scaled(target / norm) } else { raw })
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

fn random_partition(rng: &mut ChaCha8Rng, seed: u64) -> Result<Coll> {
    let d = rng.random_range(1..=3usize);
    let dims = (0..d).map(|_| rng.random_range(1..=3usize)).collect();
    random(&StateStructure::partition(dims)?, seed)
}

fn random_ball(rng: &mut ChaCha8Rng, seed: u64) -> Result<Coll> {
    let d = rng.random_range(2..=3usize);
    let h = rng.random_range(1..=4usize);
    random(&StateStructure::matrix_ball(QPencil::row(d), h)?, seed)
}

fn complex_alpha_beta() -> Result<Coll> {
    f_alpha_beta(Cx::from_polar(0.4, TAU / 6.0), Cx::from_polar(0.6, -TAU / 8.0))
}

/// `f_{α,β}` colligations paired with their singular point on `T²`.
fn inner_family() -> Result<Vec<(Coll, [Cx; 2])>> {
    let one = cx(1.0, 0.0);
    let mut out = vec![(famous_example(), [one, one])];
    for (a, b) in [
        (cx(0.5, 0.0), cx(0.5, 0.0)),
        (cx(0.3, 0.0), cx(0.7, 0.0)),
        (Cx::from_polar(0.4, TAU / 6.0), Cx::from_polar(0.6, -TAU / 8.0)),
    ] {
        out.push((f_alpha_beta(a, b)?, [b / b.norm(), a / a.norm()]));
    }
    Ok(out)
}

/// Points `(z, μ)` with `μ` a root of the determinantal pencil in the second
/// coordinate and `|μ| ≤ bound`.
fn pencil_zeros(v: &Coll, z: Cx, bound: f64) -> Result<Vec<[Cx; 2]>> {
    Ok(match det_pencil_roots(v, &[z, cx(0.0, 0.0)], 1)? {
        PencilRoots::Degenerate => vec![],
        PencilRoots::Roots(r) => r.into_iter().filter(|m| m.norm() <= bound).map(|m| [z, m]).collect(),
    })
}

fn c1_det_identity() -> Result<Outcome> {
    let start = Instant::now();
    let p = det_polynomial(&famous_example::<f64>())?;
    let mut err: f64 = 0.0;
    for i in 0..=p.degrees[0] {
        for j in 0..=p.degrees[1] {
            let want = match (i, j) {
                (1, 1) => 1.0,
                (1, 0) | (0, 1) => -0.5,
                _ => 0.0,
            };
            err = err.max((p.coeff(&[i, j]) - cx(want, 0.0)).norm());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(Outcome {
        pass: err <= 1e-12 && secs < 1.0,
        detail: format!("max coefficient error {err:.2e}, {secs:.3} s"),
    })
}

fn c2_equivalence(seed: u64) -> Result<Outcome> {
    let start = Instant::now();
    let mut rng = rng_from_seed(seed ^ 0x02);
    let mut colls = vec![
        famous_example(),
        f_alpha_beta(cx(0.5, 0.0), cx(0.5, 0.0))?,
        f_alpha_beta(cx(0.3, 0.0), cx(0.7, 0.0))?,
    ];
    for k in 0..10 {
        colls.push(random_partition(&mut rng, seed.wrapping_add(1000 + k))?);
    }
    let (t, th) = (tol(), Thresholds::from_tolerances(&tol()));
    let mut mismatches = 0;
    let mut zeros = 0;
    let mut dead = 0;
    for (k, v) in colls.iter().enumerate() {
        let mut prng = rng_from_seed(seed.wrapping_mul(31).wrapping_add(k as u64));
        let pts: Vec<Vec<Cx>> = (0..10_000).map(|_| polydisk_point(&mut prng, v.nvars(), 0.999)).collect();
        let verdicts = pts
            .par_iter()
            .map(|z| {
                let c = certify(v, &NcPoint::from_scalar(z)?, None, &t, &th)?;
                Ok((c.verdict, c.dead_band))
            })
            .collect::<Result<Vec<_>>>()?;
        for (vd, db) in verdicts {
            mismatches += (vd == Verdict::Mismatch) as usize;
            zeros += (vd == Verdict::ZeroAndEigenvalue) as usize;
            dead += db as usize;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(Outcome {
        pass: mismatches == 0 && secs < 60.0,
        detail: format!(
            "{} colligations x 10^4 points: {mismatches} mismatches, {zeros} zeros, {dead} dead-band, {secs:.1} s",
            colls.len()
        ),
    })
}

fn scan_grid() -> Vec<Cx> {
    let mut g: Vec<Cx> = linspace(-0.9, 0.9, 101).into_iter().map(|x| cx(x, 0.0)).collect();
    g.extend([cx(0.0, 0.0), cx(0.25, 0.0)]);
    g
}

fn c3_scan() -> Result<Outcome> {
    let t = tol();
    let grid = scan_grid();
    let zero = [cx(0.0, 0.0); 2];
    let mut rows = 0;
    let mut worst: f64 = 0.0;
    let mut golden = true;
    for v in [famous_example(), f_alpha_beta(cx(0.5, 0.0), cx(0.5, 0.0))?] {
        let scan = zeros_scan(&v, 0, 1, &grid, &zero, &t)?;
        rows += scan.rows.len();
        worst = scan.rows.iter().fold(worst, |w, r| w.max(r.abs_f));
        for g in [[0.0, 0.0], [0.25, -0.5]] {
            golden &= scan
                .rows
                .iter()
                .any(|r| (r.point[0] - cx(g[0], 0.0)).norm() <= 1e-12 && (r.point[1] - cx(g[1], 0.0)).norm() <= 1e-10);
        }
    }
    Ok(Outcome {
        pass: worst <= 1e-9 && golden && rows > 0,
        detail: format!("{rows} roots, max |f| {worst:.2e}, golden zeros found: {golden}"),
    })
}

fn c4_eigenvectors() -> Result<Outcome> {
    let t = tol();
    let grid = scan_grid();
    let zero = [cx(0.0, 0.0); 2];
    let mut count = 0;
    let mut bad = 0;
    let mut worst: f64 = 0.0;
    for v in [
        famous_example(),
        f_alpha_beta(cx(0.5, 0.0), cx(0.5, 0.0))?,
        f_alpha_beta(cx(0.3, 0.0), cx(0.7, 0.0))?,
    ] {
        let StateStructure::Partition(p) = v.structure() else {
            unreachable!()
        };
        for row in zeros_scan(&v, 0, 1, &grid, &zero, &t)?.rows {
            let res = diag_residual(&v, &row.point, &t)?;
            // v^λ = (I − DΔ(λ))^{-1} C
            let delta = crate::evaluate::delta_matrix(p, &row.point)?;
            let m = &Mat::identity(v.d().rows()) - &(v.d() * &delta);
            let vl = Lu::factor(&m)?.solve_vec(&v.c().column(0))?;
            let angle = if res.kernel_dim > 0 {
                subspace_angle_sin(&vl, &res.kernel_basis)
            } else {
                f64::INFINITY
            };
            worst = worst.max(angle);
            count += 1;
            bad += (res.kernel_dim != 1 || angle > 1e-8) as usize;
        }
    }
    Ok(Outcome {
        pass: count >= 100 && bad == 0,
        detail: format!("{count} zeros, {bad} failures, max angle {worst:.2e}"),
    })
}

fn c5_level_two(seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed ^ 0x05);
    let (t, th) = (tol(), Thresholds::from_tolerances(&tol()));
    let colls = [
        famous_example::<f64>(),
        f_alpha_beta(cx(0.5, 0.0), cx(0.5, 0.0))?,
        f_alpha_beta(cx(0.3, 0.0), cx(0.7, 0.0))?,
    ];
    let balls: Vec<Coll> = colls.iter().map(|v| v.to_matrix_ball()).collect::<Result<_>>()?;
    let mut zero_ok = 0;
    let mut worst: f64 = 0.0;
    let mut attempts = 0;
    while zero_ok < 100 && attempts < 10_000 {
        attempts += 1;
        let k = attempts % colls.len();
        let mut zs = vec![];
        while zs.len() < 2 {
            let z = disk_point(&mut rng, 0.9);
            if let Some(p) = pencil_zeros(&colls[k], z, 0.9)?.first() {
                zs.push(p.to_vec());
            }
        }
        let s = near_identity(&mut rng, 2, 0.3);
        let at = NcPoint::diagonal(&zs)?.similarity(&s)?;
        if balls[k].structure().domain_norm(at.blocks())? > 0.99 {
            continue;
        }
        let c = certify(&balls[k], &at, None, &t, &th)?;
        worst = worst.max(c.f_residual).max(c.spectral_residual);
        if c.verdict != Verdict::ZeroAndEigenvalue || c.f_residual > 1e-8 || c.spectral_residual > 1e-8 {
            return Ok(Outcome {
                pass: false,
                detail: format!(
                    "zero case failed: verdict {:?}, |f| {:.2e}, sigma_min {:.2e}",
                    c.verdict, c.f_residual, c.spectral_residual
                ),
            });
        }
        zero_ok += 1;
    }
    let mut neither = 0;
    for k in 0..100 {
        let v = &balls[k % balls.len()];
        let at = interior_point(&mut rng, v.structure(), 2, 0.95)?;
        neither += (certify(v, &at, None, &t, &th)?.verdict == Verdict::Neither) as usize;
    }
    Ok(Outcome {
        pass: zero_ok == 100 && neither == 100,
        detail: format!("{zero_ok}/100 conjugated zeros certified (max residual {worst:.2e}), {neither}/100 random points neither"),
    })
}

fn c6_ball(seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed ^ 0x06);
    let (t, th) = (tol(), Thresholds::from_tolerances(&tol()));
    let mut colls = vec![ball_coordinate::<f64>(1, 2)?];
    for k in 0..10 {
        colls.push(random_ball(&mut rng, seed.wrapping_add(6000 + k))?);
    }
    let mut zeros = 0;
    let mut zero_free = vec![];
    let mut worst_w: f64 = 0.0;
    let mut worst_c: f64 = 0.0;
    for v in &colls {
        let d = v.nvars();
        let mut found = 0;
        for _ in 0..40 {
            let base = ball_point(&mut rng, d, 0.3);
            let dir = sphere_point(&mut rng, d);
            for r in realization_pencil_roots(v, &base, &dir)?.roots() {
                let z: Vec<Cx> = base.iter().zip(&dir).map(|(b, u)| b + u * r).collect();
                let at = NcPoint::from_scalar(&z)?;
                if v.structure().domain_norm(at.blocks())? > 0.999 {
                    continue;
                }
                let c = certify(v, &at, Some(&[cx(1.0, 0.0)]), &t, &th)?;
                worst_w = worst_w.max(c.witness_residual);
                worst_c = worst_c.max(c.c_star_v_defect);
                found += 1;
            }
        }
        zeros += found;
        if found == 0 {
            // a zero-free function: record how far |f| stays from zero
            let pts: Vec<Vec<Cx>> = (0..10_000).map(|_| ball_point(&mut rng, d, 0.999)).collect();
            let min = pts
                .iter()
                .map(|z| eval_point(v, z, &t).map(|e| e.value.norm()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            zero_free.push(format!("{} min|f| {min:.2e}", v.name()));
        }
    }
    Ok(Outcome {
        pass: worst_w <= 1e-9 && worst_c <= 1e-9 && zeros > 0,
        detail: format!(
            "{} colligations, {zeros} zeros, max witness residual {worst_w:.2e}, max |C*v - 1| {worst_c:.2e}, zero-free: [{}]; converse not asserted (finite ball models are isometric only)",
            colls.len(),
            zero_free.join(", ")
        ),
    })
}

fn c7_golden() -> Result<Outcome> {
    let one = cx(1.0, 0.0);
    let at = NcPoint::from_scalar(&[one, one])?;
    let sched = RadialSchedule::default();
    let mut detail = vec![];
    let mut pass = true;
    for v in [famous_example(), f_alpha_beta(cx(0.5, 0.0), cx(0.5, 0.0))?] {
        let r = radial_values(&v, &at, &sched, &tol())?;
        let err = r.limit.as_ref().map_or(f64::INFINITY, |l| (l[(0, 0)] + one).norm());
        let s = diag_residual(&v, &[one, one], &tol())?.sigma_min;
        pass &= err <= 1e-6 && s <= 1e-12;
        detail.push(format!("{}: |limit + 1| {err:.2e}, sigma_min {s:.2e}", v.name()));
    }
    Ok(Outcome {
        pass,
        detail: detail.join("; "),
    })
}

fn c8_modulus() -> Result<Outcome> {
    let sched = RadialSchedule::default();
    let t = tol();
    let grid: Vec<Cx> = (0..100).map(|k| Cx::from_polar(1.0, TAU * k as f64 / 100.0)).collect();
    let mut worst: f64 = 0.0;
    let mut bp = 0;
    let mut diverged = 0;
    let mut checked = 0;
    for (v, sing) in inner_family()? {
        let pts: Vec<[Cx; 2]> = grid
            .iter()
            .flat_map(|&a| grid.iter().map(move |&b| [a, b]))
            .filter(|p| ((p[0] - sing[0]).norm_sqr() + (p[1] - sing[1]).norm_sqr()).sqrt() > 1e-3)
            .collect();
        checked += pts.len();
        let res = pts
            .par_iter()
            .map(|p| radial_values(&v, &NcPoint::from_scalar(p)?, &sched, &t))
            .collect::<Result<Vec<_>>>()?;
        for r in res {
            match &r.limit {
                None => diverged += 1,
                Some(l) => worst = worst.max((l[(0, 0)].norm() - 1.0).abs()),
            }
            bp += (r.bp_class == BpClass::NonIsometricValue) as usize;
        }
    }
    Ok(Outcome {
        pass: worst <= 1e-6 && bp == 0 && diverged == 0,
        detail: format!("{checked} torus points: max ||f†| - 1| {worst:.2e}, {bp} BP points, {diverged} not converged"),
    })
}

fn c9_containment(seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed ^ 0x09);
    let sched = RadialSchedule::default();
    let t = tol();
    let mut jobs: Vec<(Coll, Vec<NcPoint<f64>>, usize)> = vec![];
    let mut random_samples = 0;
    let mut constructed = 0;

    for (v, sing) in inner_family()? {
        let mut pts = vec![];
        for k in 0..175 {
            let z = if k % 2 == 0 {
                vec![unimodular(&mut rng), unimodular(&mut rng)]
            } else {
                let mut z = polydisk_point(&mut rng, 2, 1.0);
                z[k % 4 / 2] = unimodular(&mut rng);
                z
            };
            pts.push(NcPoint::from_scalar(&z)?);
        }
        random_samples += pts.len();
        let mut zeros = 0;
        while zeros < 25 {
            let z = unimodular(&mut rng);
            if (z - sing[0]).norm() < 1e-2 {
                continue;
            }
            for p in pencil_zeros(&v, z, 1.0 - 1e-3)? {
                pts.push(NcPoint::from_scalar(&p)?);
                zeros += 1;
            }
        }
        constructed += zeros;
        jobs.push((v, pts, zeros));
    }
    for k in 0..2 {
        let v = random(&StateStructure::partition(vec![2, 1])?, seed.wrapping_add(9000 + k))?;
        let pts = (0..50)
            .map(|_| NcPoint::from_scalar(&[unimodular(&mut rng), disk_point(&mut rng, 1.0)]))
            .collect::<Result<Vec<_>>>()?;
        random_samples += pts.len();
        jobs.push((v, pts, 0));
    }
    for (j, d) in [(1, 2), (2, 3)] {
        let v = ball_coordinate::<f64>(j, d)?;
        let mut pts = (0..100)
            .map(|_| NcPoint::from_scalar(&sphere_point(&mut rng, d)))
            .collect::<Result<Vec<_>>>()?;
        random_samples += pts.len();
        for _ in 0..10 {
            let mut z = sphere_point(&mut rng, d - 1);
            z.insert(j - 1, cx(0.0, 0.0));
            pts.push(NcPoint::from_scalar(&z)?);
        }
        constructed += 10;
        jobs.push((v, pts, 10));
    }
    // level 2: unitary conjugates of direct sums of boundary zeros
    let famous = famous_example::<f64>();
    let ball = famous.to_matrix_ball()?;
    let mut pts = vec![];
    while pts.len() < 25 {
        let mut zs = vec![];
        while zs.len() < 2 {
            let z = unimodular(&mut rng);
            if (z - cx(1.0, 0.0)).norm() < 1e-2 {
                continue;
            }
            if let Some(p) = pencil_zeros(&famous, z, 1.0 - 1e-3)?.first() {
                zs.push(p.to_vec());
            }
        }
        let u = haar_unitary::<f64, _>(2, &mut rng);
        pts.push(NcPoint::diagonal(&zs)?.similarity(&u)?);
    }
    constructed += 25;
    jobs.push((ball, pts, 25));

    let mut counterexamples = 0;
    let mut missed = 0;
    let mut zeros = 0;
    let mut diverged = 0;
    let mut worst: f64 = 0.0;
    for (v, pts, expected) in &jobs {
        let rep = check_containments(v, pts, &sched, &t)?;
        counterexamples += rep.counterexamples.len();
        zeros += rep.boundary_zeros;
        missed += expected.saturating_sub(rep.boundary_zeros);
        diverged += rep.not_converged;
        worst = worst.max(rep.worst_sigma_min);
    }
    Ok(Outcome {
        pass: counterexamples == 0 && missed == 0,
        detail: format!(
            "{} colligations, {random_samples} random + {constructed} constructed samples: {counterexamples} counterexamples, {zeros} boundary zeros ({missed} constructed zeros missed), {diverged} not converged, worst sigma_min {worst:.2e}",
            jobs.len()
        ),
    })
}

/// A named structural check with its worst observed residual.
struct Check {
    name: &'static str,
    worst: f64,
    limit: f64,
}

fn c10_structural(seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed ^ 0x10);
    let t = tol();
    let mut partitions = vec![
        famous_example::<f64>(),
        f_alpha_beta(cx(0.5, 0.0), cx(0.5, 0.0))?,
        f_alpha_beta(cx(0.3, 0.0), cx(0.7, 0.0))?,
        complex_alpha_beta()?,
    ];
    for k in 0..3 {
        partitions.push(random_partition(&mut rng, seed.wrapping_add(10_000 + k))?);
    }
    let mut nc = vec![ball_coordinate::<f64>(1, 2)?];
    for k in 0..2 {
        nc.push(random_ball(&mut rng, seed.wrapping_add(10_100 + k))?);
    }
    for v in partitions.iter().filter(|v| matches!(v.structure(), StateStructure::Partition(p) if p.dims().iter().all(|&x| x == p.dims()[0]))) {
        nc.push(v.to_matrix_ball()?);
    }
    let mut checks = vec![];

    // builders validate at their declared class
    let mut worst: f64 = 0.0;
    for v in partitions.iter().chain(&nc) {
        let r = v.validate(&t);
        worst = worst.max(if v.v().rows() == v.v().cols() {
            r.isometry_defect.max(r.coisometry_defect)
        } else {
            r.isometry_defect
        });
    }
    checks.push(Check { name: "validation", worst, limit: 1e-12 });

    // von Neumann bound and push-through at level 1
    let (mut vn, mut push): (f64, f64) = (0.0, 0.0);
    for v in partitions.iter().chain(&nc) {
        let mut prng = rng_from_seed(rng.random());
        let pts: Vec<NcPoint<f64>> = (0..1000)
            .map(|_| interior_point(&mut prng, v.structure(), 1, 0.999))
            .collect::<Result<_>>()?;
        let r = pts
            .par_iter()
            .map(|at| -> Result<(f64, f64)> {
                let a = eval_nc(v, at, &t)?.value;
                let b = if let StateStructure::Partition(_) = v.structure() {
                    (eval_point(v, &at.scalar_coords().expect("level 1"), &t)?.value - a[(0, 0)]).norm()
                } else {
                    0.0
                };
                Ok((a.op_norm(), b))
            })
            .collect::<Result<Vec<_>>>()?;
        for (n, p) in r {
            vn = vn.max(n);
            push = push.max(p);
        }
    }
    checks.push(Check { name: "von Neumann (level 1)", worst: vn - 1.0, limit: 1e-10 });
    checks.push(Check { name: "push-through", worst: push, limit: 1e-12 });

    // level-2 and level-3 axioms for NC evaluation
    let (mut vn2, mut dsum, mut sim): (f64, f64, f64) = (f64::NEG_INFINITY, 0.0, 0.0);
    for v in &nc {
        for _ in 0..200 {
            let x = interior_point(&mut rng, v.structure(), 2, 0.95)?;
            let y = interior_point(&mut rng, v.structure(), 1, 0.95)?;
            let fx = eval_nc(v, &x, &t)?.value;
            let fy = eval_nc(v, &y, &t)?.value;
            vn2 = vn2.max(fx.op_norm() - 1.0);
            let fs = eval_nc(v, &x.direct_sum(&y)?, &t)?.value;
            dsum = dsum.max(fs.max_abs_diff(&fx.direct_sum(&fy)));
            let s = near_identity(&mut rng, 2, 0.2);
            let xs = x.similarity(&s)?;
            if v.structure().domain_norm(xs.blocks())? < 0.999 {
                let lhs = eval_nc(v, &xs, &t)?.value;
                let rhs = &Lu::factor(&s)?.solve(&fx)? * &s;
                sim = sim.max(lhs.max_abs_diff(&rhs));
            }
        }
    }
    checks.push(Check { name: "von Neumann (level 2)", worst: vn2, limit: 1e-10 });
    checks.push(Check { name: "direct sums", worst: dsum, limit: 1e-9 });
    checks.push(Check { name: "similarity", worst: sim, limit: 1e-9 });

    // joint eigenvalues of a commuting tuple are row eigenvalues
    let mut joint: f64 = 0.0;
    for _ in 0..50 {
        let h = 3;
        let p = near_identity(&mut rng, h, 0.5);
        let pinv = Lu::factor(&p)?.inverse()?;
        let mus: Vec<Vec<Cx>> = (0..2).map(|_| (0..h).map(|_| disk_point(&mut rng, 1.0)).collect()).collect();
        let tuple: Vec<Mat> = mus.iter().map(|m| &(&p * &Mat::diagonal(m)) * &pinv).collect();
        for k in 0..h {
            let x = p.column(k);
            let stacked: Vec<Cx> = x.iter().chain(&x).copied().collect();
            let lam = [mus[0][k], mus[1][k]];
            joint = joint.max(row_eigen_residual(&tuple, &lam, &stacked)?);
        }
    }
    checks.push(Check { name: "joint in row spectrum", worst: joint, limit: 1e-12 });

    // row witnesses transported by a similarity
    let mut transported: f64 = 0.0;
    for v in nc.iter().filter(|v| matches!(v.structure(), StateStructure::MatrixBall { pencil, .. } if *pencil == QPencil::row(pencil.d()))) {
        let StateStructure::MatrixBall { dim_h: h, .. } = *v.structure() else {
            unreachable!()
        };
        let d = v.nvars();
        let ds = v.d().adjoint();
        let tuple: Vec<Mat> = (0..d).map(|j| ds.submatrix(0, j * h, h, h)).collect();
        let mut n = 0;
        while n < 10 {
            let base = ball_point(&mut rng, d, 0.3);
            let dir = sphere_point(&mut rng, d);
            for r in realization_pencil_roots(v, &base, &dir)?.roots() {
                let z: Vec<Cx> = base.iter().zip(&dir).map(|(b, u)| b + u * r).collect();
                let at = NcPoint::from_scalar(&z)?;
                if v.structure().domain_norm(at.blocks())? > 0.99 {
                    continue;
                }
                let w = witness(v, &at, &[cx(1.0, 0.0)], &t)?.v;
                let p = near_identity(&mut rng, h, 0.5);
                let lu = Lu::factor(&p)?;
                let pinv = lu.inverse()?;
                let conj: Vec<Mat> = tuple.iter().map(|tj| &(&pinv * tj) * &p).collect();
                let moved: Vec<Cx> = (0..d).flat_map(|j| lu.solve_vec(&w[j * h..(j + 1) * h]).expect("invertible")).collect();
                transported = transported.max(row_eigen_residual(&conj, &z, &moved)?);
                n += 1;
            }
        }
    }
    checks.push(Check { name: "similarity invariance", worst: transported, limit: 1e-9 });

    // block upper triangular operators: padded top-block eigenvectors
    let mut tri: f64 = 0.0;
    let part = crate::colligation::PartitionStructure::new(vec![2, 2])?;
    for _ in 0..50 {
        let mut m = gaussian_matrix::<f64, _>(4, 4, &mut rng);
        m.set_block(2, 0, &Mat::zeros(2, 2));
        let top = m.submatrix(0, 0, 2, 2);
        for lam in eigenvalues(&top)? {
            let ns = nullspace(&(&top - &Mat::identity(2).scale(lam)), &t)?;
            let mut x = ns.smallest_vector.clone();
            x.extend([cx(0.0, 0.0); 2]);
            let other = disk_point(&mut rng, 2.0);
            tri = tri.max(diag_eigen_residual(&m, &part, &[lam, other], &x)?);
        }
    }
    checks.push(Check { name: "block-triangular embedding", worst: tri, limit: 1e-12 });

    // NC-set closure of Q-eigenvalues and boundary classes
    let famous = famous_example::<f64>();
    let ball = famous.to_matrix_ball()?;
    let sched = RadialSchedule::default();
    let mut closure: f64 = 0.0;
    let mut boundary_fail = 0;
    for _ in 0..20 {
        let mut zs = vec![];
        while zs.len() < 3 {
            if let Some(p) = pencil_zeros(&famous, disk_point(&mut rng, 0.8), 0.8)?.first() {
                zs.push(p.to_vec());
            }
        }
        let a = NcPoint::from_scalar(&zs[0])?;
        let b = NcPoint::diagonal(&zs[1..])?.similarity(&near_identity(&mut rng, 2, 0.2))?;
        if ball.structure().domain_norm(b.blocks())? > 0.99 {
            continue;
        }
        let wa = kernel_witness(&ball, &a, &t)?;
        let wb = kernel_witness(&ball, &b, &t)?;
        let sum = a.direct_sum(&b)?;
        let w = interleave(&wa, 1, &wb, 2);
        closure = closure.max(relative_residual(&test_matrix(&ball, &sum)?, &w));

        // direct sums of boundary zeros stay boundary zeros
        let mut bz = vec![];
        while bz.len() < 2 {
            let z = unimodular(&mut rng);
            if (z - cx(1.0, 0.0)).norm() < 1e-2 {
                continue;
            }
            if let Some(p) = pencil_zeros(&famous, z, 1.0 - 1e-3)?.first() {
                bz.push(NcPoint::from_scalar(p)?);
            }
        }
        let sum = bz[0].direct_sum(&bz[1])?;
        boundary_fail += !is_boundary_zero(&ball, &sum, None, &sched, &t)?.is_zero as usize;
    }
    checks.push(Check { name: "NC-set closure", worst: closure, limit: 1e-9 });
    let coord = ball_coordinate::<f64>(1, 2)?;
    let mut bp_fail = 0;
    for _ in 0..20 {
        let p = NcPoint::from_scalar(&sphere_point(&mut rng, 2))?;
        let q = NcPoint::from_scalar(&sphere_point(&mut rng, 2))?;
        let cls = |x: &NcPoint<f64>| radial_values(&coord, x, &sched, &t).map(|r| r.bp_class);
        let (cp, cq, cs) = (cls(&p)?, cls(&q)?, cls(&p.direct_sum(&q)?)?);
        let both = cp == BpClass::NonIsometricValue && cq == BpClass::NonIsometricValue;
        bp_fail += (both && cs != BpClass::NonIsometricValue) as usize;
    }
    checks.push(Check {
        name: "boundary classes under direct sums",
        worst: (boundary_fail + bp_fail) as f64,
        limit: 0.0,
    });

    // approximate membership agrees with exact kernel membership
    let mut disagree = 0;
    for v in &partitions {
        for k in 0..200 {
            let z = if k % 2 == 0 || v.nvars() != 2 {
                polydisk_point(&mut rng, v.nvars(), 0.99)
            } else {
                match pencil_zeros(v, disk_point(&mut rng, 0.9), 0.9)?.first() {
                    Some(p) => p.to_vec(),
                    None => continue,
                }
            };
            let r = diag_residual(v, &z, &t)?;
            disagree += ((r.sigma_min <= 1e-6) != (r.kernel_dim > 0)) as usize;
        }
    }
    checks.push(Check { name: "approximate = point spectrum", worst: disagree as f64, limit: 0.0 });

    let failed: Vec<&str> = checks.iter().filter(|c| !(c.worst <= c.limit)).map(|c| c.name).collect();
    Ok(Outcome {
        pass: failed.is_empty(),
        detail: checks
            .iter()
            .map(|c| format!("{} {:.1e}", c.name, c.worst))
            .collect::<Vec<_>>()
            .join(", "),
    })
}

/// Kernel vector of the test matrix at a certified zero.
fn kernel_witness(v: &Coll, at: &NcPoint<f64>, t: &ToleranceConfig<f64>) -> Result<Vec<Cx>> {
    let r = ncq_residual(v, at, t)?;
    r.kernel_basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::Numerical("expected a nontrivial kernel at a zero".into()))
}

/// Direct-sum witness in the lifted layout (level index fastest).
fn interleave(a: &[Cx], n: usize, b: &[Cx], m: usize) -> Vec<Cx> {
    let states = a.len() / n;
    (0..states)
        .flat_map(|i| a[i * n..(i + 1) * n].iter().chain(&b[i * m..(i + 1) * m]).copied())
        .collect()
}

/// Runs one criterion; errors count as failures.
pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let out = match id {
        1 => c1_det_identity(),
        2 => c2_equivalence(seed),
        3 => c3_scan(),
        4 => c4_eigenvectors(),
        5 => c5_level_two(seed),
        6 => c6_ball(seed),
        7 => c7_golden(),
        8 => c8_modulus(),
        9 => c9_containment(seed),
        10 => c10_structural(seed),
        _ => Err(Error::Domain(format!("no criterion {id}"))),
    };
    let (pass, detail) = match out {
        Ok(o) => (o.pass, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name: CRITERIA
            .iter()
            .find(|c| c.0 == id)
            .map_or("unknown", |c| c.1)
            .to_string(),
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs every criterion in order. The last one also fails if the battery
/// exceeded its time budget.
pub fn run_suite(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut criteria: Vec<CriterionResult> = CRITERIA.iter().map(|&(id, _)| run_criterion(id, seed)).collect();
    let total_seconds = start.elapsed().as_secs_f64();
    if let Some(last) = criteria.last_mut() {
        last.detail.push_str(&format!(", battery {total_seconds:.1} s"));
        if total_seconds >= SUITE_BUDGET_SECONDS {
            last.pass = false;
        }
    }
    SuiteReport {
        seed,
        criteria,
        total_seconds,
    }
}
