//! Worked examples: each constructs a small input by hand and checks the
//! documented output.

use std::f64::consts::FRAC_1_SQRT_2;

use schur_realize::boundary::{
    check_containments, classify_boundary_point, is_boundary_zero, radial_values, BoundaryClass, RadialSchedule,
};
use schur_realize::colligation::{load, save, PartitionStructure};
use schur_realize::evaluate::{delta_matrix, eval_nc, eval_point, q_matrix, q_matrix_nc, witness, NcPoint};
use schur_realize::numerics::{kron, nullspace, random_unitary, vec_norm};
use schur_realize::realizations::{ball_coordinate, f_alpha_beta, famous_example, random};
use schur_realize::spectra::{
    certify, det_pencil_roots, diag_residual, ncq_residual, row_residual, PencilRoots, Thresholds, Verdict,
};
use schur_realize::{Colligation, Complex64, Error, Matrix, QPencil, StateStructure, Tolerances};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(x: f64) -> Complex64 {
    c(x, 0.0)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn th() -> Thresholds<f64> {
    Thresholds::from_tolerances(&tol())
}

fn scalar(z: &[Complex64]) -> NcPoint<f64> {
    NcPoint::from_scalar(z).unwrap()
}

fn m(rows: &[&[f64]]) -> Matrix {
    Matrix::from_real_rows(rows).unwrap()
}

fn diag(z: &[Complex64]) -> Matrix {
    Matrix::diagonal(z)
}

fn famous() -> Colligation {
    famous_example()
}

fn half_half() -> Colligation {
    f_alpha_beta(r(0.5), r(0.5)).unwrap()
}

#[test]
fn kron_with_identity_is_block_diagonal() {
    let x = Matrix::from_rows(&[vec![c(1.0, 2.0), r(3.0)], vec![r(-1.0), c(0.0, 1.0)]]).unwrap();
    let k = kron(&Matrix::identity(2), &x).unwrap();
    assert_eq!(k, x.direct_sum(&x));
}

#[test]
fn kron_with_scalar_scales() {
    let x = Matrix::from_rows(&[vec![c(1.0, 2.0), r(3.0)], vec![r(-1.0), c(0.0, 1.0)]]).unwrap();
    assert_eq!(kron(&m(&[&[2.0]]), &x).unwrap(), x.scale_real(2.0));
}

#[test]
fn nullspace_of_zero_and_identity() {
    let z = nullspace(&Matrix::zeros(2, 2), &tol()).unwrap();
    assert_eq!(z.smallest_sv, 0.0);
    assert_eq!(z.dim(), 2);
    let i = nullspace(&Matrix::identity(3), &tol()).unwrap();
    assert!((i.smallest_sv - 1.0).abs() <= 1e-15);
    assert_eq!(i.dim(), 0);
}

#[test]
fn nullspace_of_rank_one_projector() {
    let ns = nullspace(&m(&[&[0.5, -0.5], &[-0.5, 0.5]]), &tol()).unwrap();
    assert!(ns.smallest_sv <= 1e-15);
    assert_eq!(ns.dim(), 1);
    let b = &ns.basis[0];
    assert!((b[0] - b[1]).norm() <= 1e-15);
    assert!((vec_norm(b) - 1.0).abs() <= 1e-15);
}

#[test]
fn random_unitary_examples() {
    let u = random_unitary::<f64>(1, 3);
    assert!((u[(0, 0)].norm() - 1.0).abs() <= 1e-15);
    assert_eq!(random_unitary::<f64>(4, 11), random_unitary::<f64>(4, 11));
    for seed in 0..20 {
        let u = random_unitary::<f64>(4, seed);
        assert!((&u.adjoint() * &u).max_abs_diff(&Matrix::identity(4)) <= 1e-13);
    }
}

#[test]
fn famous_blocks_validate() {
    let v = famous();
    let rep = v.validate(&tol());
    assert!(rep.is_unitary);
    assert!(rep.isometry_defect <= 1e-14 && rep.coisometry_defect <= 1e-14);
    assert_eq!(v.a(), r(0.0));
    assert_eq!(v.d(), &m(&[&[0.5, -0.5], &[-0.5, 0.5]]));
}

#[test]
fn partition_shape_mismatch() {
    let s = StateStructure::partition(vec![1, 2]).unwrap();
    let e = Colligation::new(
        "bad",
        s,
        &Matrix::zeros(1, 1),
        &Matrix::zeros(1, 2),
        &Matrix::zeros(2, 1),
        &Matrix::zeros(2, 2),
    );
    assert!(matches!(e, Err(Error::Shape { .. })));
}

#[test]
fn row_pencil_bookkeeping() {
    let s = StateStructure::matrix_ball(QPencil::row(2), 1).unwrap();
    let v = Colligation::new(
        "row",
        s,
        &Matrix::zeros(1, 1),
        &Matrix::zeros(1, 1),
        &Matrix::zeros(2, 1),
        &Matrix::zeros(2, 1),
    );
    assert!(v.is_ok());
}

#[test]
fn validate_classes() {
    let rep = ball_coordinate::<f64>(1, 2).unwrap().validate(&tol());
    assert!(rep.is_isometry && !rep.is_coisometry);
    let s = StateStructure::partition(vec![1, 1]).unwrap();
    let id = Colligation::new(
        "identity",
        s,
        &Matrix::identity(1),
        &Matrix::zeros(1, 2),
        &Matrix::zeros(2, 1),
        &Matrix::identity(2),
    )
    .unwrap();
    let rep = id.validate(&tol());
    assert!(rep.is_unitary);
    assert_eq!(rep.isometry_defect, 0.0);
    assert_eq!(rep.coisometry_defect, 0.0);
}

#[test]
fn json_round_trip_is_bitwise() {
    let v = famous();
    let w: Colligation = load(&save(&v)).unwrap();
    assert_eq!(w.v(), v.v());
    assert_eq!(w.name(), v.name());
}

#[test]
fn json_wrong_row_length() {
    let text = r#"{"name":"x","structure":{"kind":"partition","dims":[1]},
        "A":[[[0,0]]],"B":[[[1,0]]],"C":[[[1,0]]],"D":[[[0,0],[1,0]]]}"#;
    assert!(matches!(load::<f64>(text), Err(Error::Parse { .. })));
}

#[test]
fn json_matrix_ball_dimensions() {
    let zero = |rows: usize, cols: usize| format!("[{}]", vec![format!("[{}]", vec!["[0,0]"; cols].join(",")); rows].join(","));
    let text = format!(
        r#"{{"name":"ball","structure":{{"kind":"matrix_ball","s":1,"r":2,"dim_h":3,
            "q":[[[[1,0],[0,0]]],[[[0,0],[1,0]]]]}},
            "A":[[[0,0]]],"B":{},"C":{},"D":{}}}"#,
        zero(1, 3),
        zero(6, 1),
        zero(6, 3)
    );
    let v: Colligation = load(&text).unwrap();
    assert_eq!(v.structure().input_dim(), 3);
    assert_eq!(v.structure().output_dim(), 6);
}

#[test]
fn famous_origin_value() {
    assert_eq!(eval_point(&famous(), &[r(0.0), r(0.0)], &tol()).unwrap().value, r(0.0));
}

#[test]
fn f_alpha_beta_examples() {
    let s = FRAC_1_SQRT_2;
    let want = m(&[&[0.0, s, s], &[-s, 0.5, -0.5], &[-s, -0.5, 0.5]]);
    assert!(half_half().v().max_abs_diff(&want) <= 1e-15);
    for (a, b) in [(r(0.2), r(0.8)), (c(0.0, 0.5), r(0.5)), (c(0.3, 0.3), Complex64::from_polar(1.0 - 0.18f64.sqrt(), 2.0))] {
        assert!(f_alpha_beta(a, b).unwrap().validate(&tol()).is_unitary);
    }
    assert!(matches!(f_alpha_beta::<f64>(r(0.3), r(0.8)), Err(Error::Domain(_))));
}

#[test]
fn ball_coordinate_examples() {
    let v = ball_coordinate::<f64>(1, 2).unwrap();
    for z in [[c(0.1, 0.2), r(0.3)], [r(-0.5), c(0.0, 0.6)], [r(0.0), r(0.9)]] {
        assert!((eval_point(&v, &z, &tol()).unwrap().value - z[0]).norm() <= 1e-15);
    }
    assert!(ball_coordinate::<f64>(3, 2).is_err());
}

#[test]
fn random_builders() {
    let v = random::<f64>(&StateStructure::partition(vec![2, 3]).unwrap(), 7).unwrap();
    assert_eq!(v.v().shape(), (6, 6));
    let rep = v.validate(&tol());
    assert!(rep.is_unitary && rep.isometry_defect <= 1e-12);

    let s = StateStructure::matrix_ball(QPencil::row(2), 2).unwrap();
    let v = random::<f64>(&s, 1).unwrap();
    assert_eq!(v.v().shape(), (5, 3));
    assert!(v.validate(&tol()).is_isometry);
    assert_eq!(random::<f64>(&s, 1).unwrap().v(), v.v());
}

#[test]
fn delta_examples() {
    let p = PartitionStructure::new(vec![1, 1]).unwrap();
    let (l, mu) = (c(0.3, 0.1), r(-0.2));
    assert_eq!(delta_matrix(&p, &[l, mu]).unwrap(), diag(&[l, mu]));
    let p = PartitionStructure::new(vec![2, 1]).unwrap();
    assert_eq!(delta_matrix(&p, &[r(0.0), r(0.0)]).unwrap(), Matrix::zeros(3, 3));
    assert_eq!(
        delta_matrix(&p, &[c(0.0, 1.0), r(2.0)]).unwrap(),
        diag(&[c(0.0, 1.0), c(0.0, 1.0), r(2.0)])
    );
}

#[test]
fn q_examples() {
    let z = [c(0.1, 0.2), r(-0.3)];
    assert_eq!(q_matrix(&QPencil::row(2), &z).unwrap(), Matrix::row_vector(&z));
    assert_eq!(q_matrix(&QPencil::diag(2), &z).unwrap(), diag(&z));
    let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
    let b = m(&[&[5.0, 6.0], &[7.0, 8.0]]);
    let q = q_matrix_nc(&QPencil::row(2), &NcPoint::new(vec![a.clone(), b.clone()]).unwrap()).unwrap();
    let mut want = Matrix::zeros(2, 4);
    want.set_block(0, 0, &a);
    want.set_block(0, 2, &b);
    assert_eq!(q, want);
}

#[test]
fn scalar_evaluations() {
    let f = |v: &Colligation, z: [f64; 2]| eval_point(v, &[r(z[0]), r(z[1])], &tol()).unwrap().value;
    assert!((f(&famous(), [0.5, 0.5]) - r(-0.5)).norm() <= 1e-15);
    assert!(f(&famous(), [0.25, -0.5]).norm() <= 1e-15);
    assert!(f(&half_half(), [0.25, -0.5]).norm() <= 1e-15);
}

#[test]
fn level_two_evaluations() {
    let ball = famous().to_matrix_ball().unwrap();
    let (z, w) = ([r(0.1), c(0.2, -0.3)], [r(-0.4), r(0.5)]);
    let at = NcPoint::new(vec![diag(&[z[0], w[0]]), diag(&[z[1], w[1]])]).unwrap();
    let got = eval_nc(&ball, &at, &tol()).unwrap().value;
    let fz = eval_point(&famous(), &z, &tol()).unwrap().value;
    let fw = eval_point(&famous(), &w, &tol()).unwrap().value;
    assert!(got.max_abs_diff(&diag(&[fz, fw])) <= 1e-15);

    let at = NcPoint::new(vec![diag(&[r(0.0), r(0.25)]), diag(&[r(0.0), r(-0.5)])]).unwrap();
    assert!(eval_nc(&ball, &at, &tol()).unwrap().value.max_abs() <= 1e-15);
}

#[test]
fn similarity_example() {
    let ball = famous().to_matrix_ball().unwrap();
    let at = NcPoint::new(vec![
        Matrix::from_rows(&[vec![r(0.2), c(0.1, 0.1)], vec![r(0.0), r(-0.3)]]).unwrap(),
        Matrix::from_rows(&[vec![c(0.0, 0.3), r(0.0)], vec![r(0.2), r(0.1)]]).unwrap(),
    ])
    .unwrap();
    let s = Matrix::from_rows(&[vec![r(1.0), r(0.3)], vec![c(0.0, -0.2), r(1.2)]]).unwrap();
    let lhs = eval_nc(&ball, &at.similarity(&s).unwrap(), &tol()).unwrap().value;
    let f = eval_nc(&ball, &at, &tol()).unwrap().value;
    let sinv = schur_realize::numerics::Lu::factor(&s).unwrap().inverse().unwrap();
    assert!(lhs.max_abs_diff(&(&(&sinv * &f) * &s)) <= 1e-10);
}

#[test]
fn witness_examples() {
    let w = witness(&famous(), &scalar(&[r(0.0), r(0.0)]), &[r(1.0)], &tol()).unwrap();
    assert!(w.l.iter().all(|x| x.norm() == 0.0));
    assert!((w.v[0] - r(FRAC_1_SQRT_2)).norm() <= 1e-15 && (w.v[1] - r(FRAC_1_SQRT_2)).norm() <= 1e-15);
    assert!((w.c_star_v[0] - r(1.0)).norm() <= 1e-15);

    let v = ball_coordinate::<f64>(1, 2).unwrap();
    let lam = [r(0.0), c(0.3, 0.4)];
    let w = witness(&v, &scalar(&lam), &[r(1.0)], &tol()).unwrap();
    assert_eq!(w.v, v.c().column(0));
    assert_eq!(row_residual(&v, &lam, Some(&w.v), &tol()).unwrap().witness_residual, Some(0.0));

    let lam = [r(0.25), r(-0.5)];
    let w = witness(&famous(), &scalar(&lam), &[r(1.0)], &tol()).unwrap();
    let p = PartitionStructure::new(vec![1, 1]).unwrap();
    let lhs = famous().d().adjoint().mul_vec(&w.v);
    let rhs = delta_matrix(&p, &lam).unwrap().mul_vec(&w.v);
    assert!(lhs.iter().zip(&rhs).all(|(a, b)| (a - b).norm() <= 1e-12));
}

#[test]
fn diag_residual_examples() {
    let o = diag_residual(&famous(), &[r(0.0), r(0.0)], &tol()).unwrap();
    assert!(o.sigma_min <= 1e-15);
    assert_eq!(o.kernel_dim, 1);
    assert!((o.kernel_basis[0][0] - o.kernel_basis[0][1]).norm() <= 1e-15);
    assert!(diag_residual(&famous(), &[r(0.5), r(0.5)], &tol()).unwrap().sigma_min > 0.1);
}

#[test]
fn row_residual_examples() {
    // d = 1: the ordinary eigenvalue residual of D*
    let s = StateStructure::matrix_ball(QPencil::row(1), 2).unwrap();
    let v = random::<f64>(&s, 5).unwrap();
    let eig = schur_realize::numerics::eigenvalues(&v.d().adjoint()).unwrap();
    for l in eig {
        let o = row_residual(&v, &[l], None, &tol()).unwrap();
        assert!(o.sigma_min <= 1e-12);
        assert_eq!(o.forced_kernel_dim, 0);
    }

    let v = ball_coordinate::<f64>(1, 2).unwrap();
    for lam in [[c(0.1, 0.2), r(0.3)], [r(0.0), r(0.7)], [r(0.5), c(0.0, -0.5)]] {
        let o = row_residual(&v, &lam, Some(&v.c().column(0)), &tol()).unwrap();
        assert_eq!(o.kernel_dim, 1);
        assert!((o.witness_residual.unwrap() - lam[0].norm()).abs() <= 1e-15);
    }
    // at the origin the test matrix vanishes and the whole space is kernel
    assert_eq!(row_residual(&v, &[r(0.0), r(0.0)], None, &tol()).unwrap().kernel_dim, 2);
}

#[test]
fn ncq_residual_examples() {
    let lam = [c(0.2, 0.1), r(-0.4)];
    let ball = famous().to_matrix_ball().unwrap();
    let a = ncq_residual(&ball, &scalar(&lam), &tol()).unwrap();
    let b = diag_residual(&famous(), &lam, &tol()).unwrap();
    assert!((a.sigma_min - b.sigma_min).abs() <= 1e-15);

    let at = NcPoint::new(vec![diag(&[r(0.0), r(0.25)]), diag(&[r(0.0), r(-0.5)])]).unwrap();
    let o = ncq_residual(&ball, &at, &tol()).unwrap();
    assert!(o.sigma_min <= 1e-15);
    assert!(o.kernel_dim >= 2);

    let at = NcPoint::new(vec![m(&[&[0.3, 0.1], &[0.0, -0.2]]), m(&[&[0.1, 0.0], &[0.4, 0.2]])]).unwrap();
    let o = ncq_residual(&ball, &at, &tol()).unwrap();
    assert!(o.sigma_min > 1e-6);
    let f = eval_nc(&ball, &at, &tol()).unwrap().value;
    assert!(schur_realize::numerics::det(&f).unwrap().norm() > 1e-6);
}

#[test]
fn pencil_root_examples() {
    let roots = |l: f64| det_pencil_roots(&famous(), &[r(l), r(0.0)], 1).unwrap();
    assert!((roots(0.25).roots()[0] - r(-0.5)).norm() <= 1e-14);
    assert!(roots(0.0).roots()[0].norm() <= 1e-14);
    assert_eq!(roots(0.5), PencilRoots::Roots(vec![]));
}

#[test]
fn certificate_examples() {
    let cert = certify(&famous(), &scalar(&[r(0.25), r(-0.5)]), None, &tol(), &th()).unwrap();
    assert_eq!(cert.verdict, Verdict::ZeroAndEigenvalue);
    assert!(cert.f_residual <= 1e-10 && cert.spectral_residual <= 1e-10);
    assert_eq!(cert.kernel_dim, 1);
    assert!(cert.kernel_angle.unwrap() <= 1e-8);

    let cert = certify(&famous(), &scalar(&[r(0.5), r(0.5)]), None, &tol(), &th()).unwrap();
    assert_eq!(cert.verdict, Verdict::Neither);

    let ball = famous().to_matrix_ball().unwrap();
    let at = NcPoint::new(vec![diag(&[r(0.0), r(0.25)]), diag(&[r(0.0), r(-0.5)])]).unwrap();
    let s = Matrix::from_rows(&[vec![r(1.0), c(0.2, 0.1)], vec![r(-0.1), r(0.9)]]).unwrap();
    let cert = certify(&ball, &at.similarity(&s).unwrap(), None, &tol(), &th()).unwrap();
    assert_eq!(cert.verdict, Verdict::ZeroAndEigenvalue);
}

#[test]
fn radial_limit_examples() {
    let sched = RadialSchedule::default();
    for v in [famous(), half_half()] {
        let l = radial_values(&v, &scalar(&[r(1.0), r(1.0)]), &sched, &tol()).unwrap().limit.unwrap();
        assert!((l[(0, 0)] + 1.0).norm() <= 1e-6);
    }
    let rep = radial_values(&famous(), &scalar(&[r(1.0), r(-1.0)]), &sched, &tol()).unwrap();
    // oracle: (2zw − z − w)/(2 − z − w) at (1, −1) is −2/2
    assert!((rep.limit.unwrap()[(0, 0)] - r(-1.0)).norm() <= 1e-9);
    assert!(matches!(
        radial_values(&famous(), &scalar(&[r(0.5), r(0.5)]), &sched, &tol()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn boundary_zero_examples() {
    let sched = RadialSchedule::default();
    assert!(!is_boundary_zero(&famous(), &scalar(&[r(1.0), r(1.0)]), None, &sched, &tol()).unwrap().is_zero);

    let v = ball_coordinate::<f64>(1, 2).unwrap();
    let at = NcPoint::new(vec![Matrix::zeros(2, 2), Matrix::identity(2)]).unwrap();
    let z = is_boundary_zero(&v, &at, None, &sched, &tol()).unwrap();
    assert!(z.is_zero);
    assert!(z.residual.unwrap() <= 1e-12);
}

#[test]
fn famous_has_no_torus_zeros() {
    let sched = RadialSchedule::default();
    let n = 100;
    let t = std::f64::consts::TAU;
    let mut zeros = 0;
    for i in 0..n {
        for j in 0..n {
            if i == 0 && j == 0 {
                continue;
            }
            let z = [
                Complex64::from_polar(1.0, t * i as f64 / n as f64),
                Complex64::from_polar(1.0, t * j as f64 / n as f64),
            ];
            zeros += is_boundary_zero(&famous(), &scalar(&z), None, &sched, &tol()).unwrap().is_zero as usize;
        }
    }
    assert_eq!(zeros, 0);
}

#[test]
fn classification_examples() {
    let t = tol();
    assert_eq!(
        classify_boundary_point(&QPencil::diag(2), &scalar(&[r(1.0), r(1.0)]), &t).unwrap(),
        BoundaryClass::Uni
    );
    assert_eq!(
        classify_boundary_point(&QPencil::diag(2), &scalar(&[r(1.0), r(0.5)]), &t).unwrap(),
        BoundaryClass::None
    );
    assert_eq!(
        classify_boundary_point(&QPencil::row(2), &scalar(&[r(1.0), r(0.0)]), &t).unwrap(),
        BoundaryClass::Coiso
    );
}

#[test]
fn containment_examples() {
    let sched = RadialSchedule::default();
    assert!(diag_residual(&famous(), &[r(1.0), r(1.0)], &tol()).unwrap().sigma_min <= 1e-15);
    assert!(
        diag_residual(&f_alpha_beta(r(0.3), r(0.7)).unwrap(), &[r(1.0), r(1.0)], &tol())
            .unwrap()
            .sigma_min
            <= 1e-15
    );
    let rep = check_containments(&famous(), &[scalar(&[r(1.0), r(-1.0)])], &sched, &tol()).unwrap();
    assert_eq!(rep.bp_iso_points, 0);
    assert_eq!(rep.boundary_zeros, 0);
    assert!(rep.counterexamples.is_empty());
}
