//! JSON rendering of core results. Complex numbers are `[re, im]` pairs and
//! matrices are row-major nested arrays, as in the colligation file format.

use num_complex::Complex64;
use serde_json::{json, Value};

use schur_realize::boundary::{BoundaryZeroReport, ContainmentReport, RadialSchedule};
use schur_realize::evaluate::{NcPoint, Witness};
use schur_realize::spectra::{SpectralResidual, ZeroCertificate};
use schur_realize::{Matrix, Tolerances};

pub fn cpx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn vector(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|&z| cpx(z)).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector(r)).collect())
}

pub fn point(p: &NcPoint<f64>) -> Value {
    match p.scalar_coords() {
        Some(z) => json!({ "level": 1, "coords": vector(&z) }),
        None => json!({
            "level": p.level(),
            "blocks": p.blocks().iter().map(matrix).collect::<Vec<_>>(),
        }),
    }
}

pub fn tolerances(t: &Tolerances) -> Value {
    json!({
        "rank_tol": t.rank_tol,
        "residual_tol": t.residual_tol,
        "domain_margin": t.domain_margin,
    })
}

pub fn residual(r: &SpectralResidual<f64>) -> Value {
    json!({
        "sigma_min": r.sigma_min,
        "kernel_dim": r.kernel_dim,
        "forced_kernel_dim": r.forced_kernel_dim,
        "threshold": r.threshold,
        "kernel_basis": r.kernel_basis.iter().map(|b| vector(b)).collect::<Vec<_>>(),
        "witness_residual": r.witness_residual,
    })
}

pub fn witness(w: &Witness<f64>) -> Value {
    json!({
        "y": vector(&w.y),
        "L": vector(&w.l),
        "v": vector(&w.v),
        "c_star_v": vector(&w.c_star_v),
    })
}

pub fn certificate(c: &ZeroCertificate<f64>) -> Value {
    json!({
        "point": point(&c.point),
        "direction": vector(&c.direction),
        "f_residual": c.f_residual,
        "spectral_residual": c.spectral_residual,
        "kernel_dim": c.kernel_dim,
        "kernel_angle": c.kernel_angle,
        "witness": witness(&c.witness),
        "witness_residual": c.witness_residual,
        "c_star_v_defect": c.c_star_v_defect,
        "mode": c.mode,
        "verdict": c.verdict,
        "dead_band": c.dead_band,
        "notes": c.notes,
    })
}

pub fn schedule(s: &RadialSchedule<f64>) -> Value {
    json!({
        "radii": s.radii(),
        "convergence_tol": s.convergence_tol,
        "tail_tol": s.tail_tol,
        "order": s.order,
    })
}

pub fn boundary_zero(z: &BoundaryZeroReport<f64>) -> Value {
    let r = &z.radial;
    json!({
        "point": point(&r.point),
        "renormalized": r.renormalized,
        "values": r.values.iter().map(matrix).collect::<Vec<_>>(),
        "extrapolated_differences": r.differences,
        "tail_estimate": if r.tail_estimate.is_finite() { json!(r.tail_estimate) } else { Value::Null },
        "limit": r.limit.as_ref().map(matrix),
        "limit_singular_values": r.limit_singular_values,
        "isometry_defect": r.isometry_defect,
        "coisometry_defect": r.coisometry_defect,
        "bp_class": r.bp_class,
        "boundary_zero": z.is_zero,
        "direction": z.direction.as_deref().map(vector),
        "direction_residual": z.residual,
    })
}

pub fn containment(c: &ContainmentReport) -> Value {
    serde_json::to_value(c).expect("plain data serializes")
}
