//! `schur-realize`: command-line front end for colligation realizations.

mod literal;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use schur_realize::boundary::{
    boundary_grid, boundary_scan, check_containments, classify_boundary_point, domain_pencil, is_boundary_zero,
    RadialSchedule,
};
use schur_realize::colligation::{load, save};
use schur_realize::evaluate::{eval_nc, eval_points, NcPoint};
use schur_realize::realizations::{ball_coordinate, f_alpha_beta, famous_example, random};
use schur_realize::spectra::{certify, det_polynomial, ncq_residual, zeros_scan, Thresholds, Verdict};
use schur_realize::suite::{run_criterion, CriterionResult, CRITERIA, SUITE_BUDGET_SECONDS};
use schur_realize::{Colligation, Matrix, QPencil, StateStructure, Tolerances};

const TOOL: &str = "schur-realize";
const DEFAULT_SEED: u64 = 20240611;

#[derive(Parser)]
#[command(name = TOOL, version, about = "Realize, evaluate and certify Schur-Agler class functions given by colligations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Relative singular-value cutoff for kernel detection [default: 1e-10]
    #[arg(long, global = true, value_name = "TOL")]
    tol_rank: Option<f64>,
    /// Certificate threshold for residuals [default: 1e-8]
    #[arg(long, global = true, value_name = "TOL")]
    tol_residual: Option<f64>,
    /// Interior margin of the domain [default: 1e-6]
    #[arg(long, global = true, value_name = "TOL")]
    margin: Option<f64>,
    /// Seed for random generation and the suite
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of standard output
    #[arg(short = 'o', long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format (each command has its own default)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write a colligation in the JSON file format
    #[command(subcommand)]
    Generate(Generate),
    /// Report isometry and coisometry defects of a colligation file
    Validate { file: PathBuf },
    /// Evaluate f at scalar points
    ///
    /// CSV columns: index, z_j_re, z_j_im for each coordinate, value_re,
    /// value_im, abs_f, condition.
    Eval {
        file: PathBuf,
        /// Comma-separated complex coordinates, e.g. `0.25,-0.5` or `0.1+0.2i,(0,0.3)`
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
        /// Points file: JSON array of coordinate arrays, or CSV with one point per row
        #[arg(long, value_name = "PATH")]
        points: Option<PathBuf>,
    },
    /// Evaluate f at a tuple of square matrices
    EvalNc {
        file: PathBuf,
        /// One matrix per variable, rows separated by `;`, e.g. `0.1,0;0,0.2i`
        #[arg(long = "nc-point", required = true, allow_hyphen_values = true)]
        nc_point: Vec<String>,
    },
    /// Zero-set tools
    #[command(subcommand)]
    Zeros(Zeros),
    /// Smallest singular value and kernel of D* - Z at a point
    Spectrum {
        file: PathBuf,
        #[command(flatten)]
        at: PointArgs,
        /// Also print the coefficients of det(D* - Delta) (partitions only)
        #[arg(long)]
        det: bool,
    },
    /// Certify a zero of f against an eigenvalue of D*
    Certify {
        file: PathBuf,
        #[command(flatten)]
        at: PointArgs,
        /// Direction y for f(point) y = 0 [default: least singular direction]
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
    },
    /// Boundary values, portions and containments
    #[command(subcommand)]
    Boundary(Boundary),
    /// Run the acceptance battery and print a pass/fail table
    ///
    /// CSV columns: id, name, pass, seconds, detail.
    Suite {
        /// Run only these criteria (repeatable)
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// (2zw - z - w)/(2 - z - w) on the bidisk
    FamousExample,
    /// (zw - az - bw)/(1 - conj(b)z - conj(a)w) with |a| + |b| = 1
    FAlphaBeta {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Coordinate function z_j on the unit ball of C^d
    BallCoordinate {
        /// 1-based coordinate index
        #[arg(long)]
        j: usize,
        #[arg(long)]
        d: usize,
    },
    /// Seeded random colligation (unitary when square, isometric otherwise)
    Random {
        /// Partition block sizes, e.g. `2,3`
        #[arg(long, conflicts_with_all = ["row", "dim_h"])]
        dims: Option<String>,
        /// Row-ball pencil with this many variables
        #[arg(long, requires = "dim_h")]
        row: Option<usize>,
        /// Auxiliary space dimension for the row ball
        #[arg(long, requires = "row")]
        dim_h: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Zeros {
    /// Scan lines for zeros of a partition colligation
    ///
    /// For each of GRID values in RANGE placed at coordinate AXIS, finds the
    /// roots in coordinate VARY of the determinant pencil that lie inside the
    /// polydisk. Coordinates are 0-based; the rest come from BASE.
    ///
    /// CSV columns: grid_index, lambda_j_re, lambda_j_im for each coordinate,
    /// abs_f, sigma_min.
    Scan {
        file: PathBuf,
        #[arg(long)]
        axis: usize,
        /// Coordinate solved for [default: the other one when d = 2]
        #[arg(long)]
        vary: Option<usize>,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value = "-0.9:0.9", allow_hyphen_values = true)]
        range: String,
        /// Values of the remaining coordinates [default: all zero]
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
}

#[derive(Subcommand)]
enum Boundary {
    /// Radial boundary value f(point) as a limit along r * point
    Radial {
        file: PathBuf,
        #[command(flatten)]
        at: PointArgs,
        /// Direction y tested for f(point) y = 0 [default: least singular direction]
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
    },
    /// Scan a torus grid projected onto the domain boundary
    ///
    /// Also checks, for isometric colligations, that boundary zeros and
    /// non-isometric boundary values lie in the spectrum of D*.
    ///
    /// CSV columns: index, z_j_re, z_j_im for each coordinate, limit_norm,
    /// limit_sigma_min, sigma_min, class, bp_class, boundary_zero.
    Scan {
        file: PathBuf,
        /// Angles per coordinate
        #[arg(long, default_value_t = 12)]
        grid: usize,
    },
    /// Isometric and coisometric portions of the domain boundary at a point
    Classify {
        file: PathBuf,
        #[command(flatten)]
        at: PointArgs,
    },
}

#[derive(Args)]
struct PointArgs {
    /// Scalar point, comma-separated complex coordinates
    #[arg(long, allow_hyphen_values = true, conflicts_with = "nc_point", required_unless_present = "nc_point")]
    point: Option<String>,
    /// Matrix coordinate, rows separated by `;` (one per variable)
    #[arg(long = "nc-point", allow_hyphen_values = true)]
    nc_point: Vec<String>,
}

impl PointArgs {
    fn parse(&self) -> Res<NcPoint<f64>> {
        match &self.point {
            Some(p) => Ok(NcPoint::from_scalar(&literal::tuple(p)?)?),
            None => nc_point(&self.nc_point),
        }
    }
}

/// A usage, input or numerical error, reported on standard error.
struct Fail(String);

impl From<String> for Fail {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl From<&str> for Fail {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

impl From<schur_realize::Error> for Fail {
    fn from(e: schur_realize::Error) -> Self {
        Self(e.to_string())
    }
}

type Res<T> = Result<T, Fail>;

trait Context<T> {
    fn ctx(self, what: &str) -> Res<T>;
}

impl<T, E: std::fmt::Display> Context<T> for Result<T, E> {
    fn ctx(self, what: &str) -> Res<T> {
        self.map_err(|e| Fail(format!("{what}: {e}")))
    }
}

fn nc_point(mats: &[String]) -> Res<NcPoint<f64>> {
    let blocks = mats
        .iter()
        .map(|m| Ok(Matrix::from_rows(&literal::matrix(m)?)?))
        .collect::<Res<Vec<_>>>()?;
    Ok(NcPoint::new(blocks)?)
}

struct Input {
    path: String,
    sha256: String,
    colligation: Colligation,
}

fn read_input(path: &Path) -> Res<Input> {
    let bytes = fs::read(path).ctx(&format!("cannot read {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).ctx(&format!("{} is not UTF-8", path.display()))?;
    let colligation = load(text).ctx(&format!("malformed colligation {}", path.display()))?;
    Ok(Input {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
        colligation,
    })
}

struct Run {
    global: Global,
    tol: Tolerances,
}

/// Exit status of a command that ran to completion.
#[derive(PartialEq, Eq)]
enum Status {
    Ok,
    Flagged,
}

impl Run {
    fn new(global: Global) -> Res<Self> {
        let d = Tolerances::default();
        let tol = Tolerances::new(
            global.tol_rank.unwrap_or(d.rank_tol),
            global.tol_residual.unwrap_or(d.residual_tol),
            global.margin.unwrap_or(d.domain_margin),
        )?;
        Ok(Self { global, tol })
    }

    fn format(&self, default: Format, csv_ok: bool, command: &str) -> Res<Format> {
        let f = self.global.format.unwrap_or(default);
        if f == Format::Csv && !csv_ok {
            return Err(format!("`{command}` has no CSV output").into());
        }
        Ok(f)
    }

    fn emit(&self, text: &str) -> Res<()> {
        match &self.global.out {
            Some(p) => fs::write(p, text).ctx(&format!("cannot write {}", p.display())),
            None => std::io::stdout().write_all(text.as_bytes()).ctx("cannot write output"),
        }
    }

    fn emit_json(&self, command: &str, input: Option<&Input>, result: Value) -> Res<()> {
        let doc = json!({
            "tool": TOOL,
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "input": input.map(|i| json!({ "path": i.path, "sha256": i.sha256 })),
            "tolerances": report::tolerances(&self.tol),
            "seed": self.global.seed,
            "result": result,
        });
        let mut text = serde_json::to_string_pretty(&doc).ctx("cannot serialize report")?;
        text.push('\n');
        self.emit(&text)
    }

    fn emit_csv(&self, header: Vec<String>, rows: Vec<Vec<String>>) -> Res<()> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(&header).ctx("csv")?;
        for r in rows {
            w.write_record(&r).ctx("csv")?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        self.emit(&String::from_utf8(bytes).ctx("csv")?)
    }
}

/// Shortest round-trip decimal, in exponent form for very small or large
/// magnitudes.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn coord_header(prefix: &str, d: usize) -> Vec<String> {
    (1..=d)
        .flat_map(|j| [format!("{prefix}_{j}_re"), format!("{prefix}_{j}_im")])
        .collect()
}

fn coord_cells(z: &[Complex64]) -> Vec<String> {
    z.iter().flat_map(|x| [num(x.re), num(x.im)]).collect()
}

fn opt_cell(x: Option<f64>) -> String {
    x.map_or_else(String::new, num)
}

fn label<S: serde::Serialize>(x: S) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn generate(run: &Run, which: &Generate) -> Res<Status> {
    let v: Colligation = match which {
        Generate::FamousExample => famous_example(),
        Generate::FAlphaBeta { alpha, beta } => f_alpha_beta(literal::complex(alpha)?, literal::complex(beta)?)?,
        Generate::BallCoordinate { j, d } => ball_coordinate(*j, *d)?,
        Generate::Random { dims, row, dim_h } => {
            let structure = match (dims, row, dim_h) {
                (Some(dims), _, _) => StateStructure::partition(literal::dims(dims)?)?,
                (None, Some(d), Some(h)) => StateStructure::matrix_ball(QPencil::row(*d), *h)?,
                _ => return Err("random needs --dims or --row with --dim-h".into()),
            };
            random(&structure, run.global.seed)?
        }
    };
    let mut text = save(&v);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    run.emit(&text)?;
    Ok(Status::Ok)
}

fn validate(run: &Run, file: &Path) -> Res<Status> {
    run.format(Format::Json, false, "validate")?;
    let input = read_input(file)?;
    let v = &input.colligation;
    let rep = v.validate(&run.tol);
    let s = v.structure();
    run.emit_json(
        "validate",
        Some(&input),
        json!({
            "name": v.name(),
            "structure": s.kind(),
            "variables": v.nvars(),
            "state_dim": s.input_dim(),
            "class": rep.class(),
            "isometry_defect": rep.isometry_defect,
            "coisometry_defect": rep.coisometry_defect,
            "d_norm": rep.d_norm,
            "is_isometry": rep.is_isometry,
            "is_coisometry": rep.is_coisometry,
            "is_unitary": rep.is_unitary,
        }),
    )?;
    Ok(Status::Ok)
}

fn entry(x: &Value) -> Result<Complex64, String> {
    match x {
        Value::Number(n) => n.as_f64().map(|r| Complex64::new(r, 0.0)).ok_or_else(|| "bad number".to_string()),
        Value::String(s) => literal::complex(s),
        Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err("pair entries must be numbers".into()),
        },
        _ => Err(format!("cannot read a complex number from {x}")),
    }
}

fn points_file(path: &Path) -> Res<Vec<Vec<Complex64>>> {
    let text = fs::read_to_string(path).ctx(&format!("cannot read {}", path.display()))?;
    let bad = |e: String| Fail(format!("malformed points file {}: {e}", path.display()));
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        r.records()
            .map(|rec| {
                let rec = rec.map_err(|e| bad(e.to_string()))?;
                rec.iter().map(literal::complex).collect::<Result<Vec<_>, _>>().map_err(bad)
            })
            .collect()
    } else {
        let doc: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        let Value::Array(pts) = doc else {
            return Err(bad("expected an array of points".into()));
        };
        pts.iter()
            .map(|p| match p {
                Value::Array(coords) => coords.iter().map(entry).collect::<Result<Vec<_>, _>>().map_err(bad),
                _ => Err(bad(format!("point {p} is not an array"))),
            })
            .collect()
    }
}

fn eval(run: &Run, file: &Path, point: &[String], points: Option<&Path>) -> Res<Status> {
    let format = run.format(Format::Json, true, "eval")?;
    let input = read_input(file)?;
    let v = &input.colligation;
    let mut pts = point.iter().map(|p| literal::tuple(p)).collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = points {
        pts.extend(points_file(p)?);
    }
    if pts.is_empty() {
        return Err("eval needs --point or --points".into());
    }
    let results = eval_points(v, &pts, &run.tol)
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| Fail(format!("point {i}: {e}"))))
        .collect::<Res<Vec<_>>>()?;
    match format {
        Format::Json => run.emit_json(
            "eval",
            Some(&input),
            Value::Array(
                pts.iter()
                    .zip(&results)
                    .map(|(z, e)| {
                        json!({
                            "point": report::vector(z),
                            "value": report::cpx(e.value),
                            "condition": e.condition,
                            "warnings": e.warnings,
                        })
                    })
                    .collect(),
            ),
        )?,
        Format::Csv => {
            let mut header = vec!["index".to_string()];
            header.extend(coord_header("z", v.nvars()));
            header.extend(["value_re", "value_im", "abs_f", "condition"].map(String::from));
            let rows = pts
                .iter()
                .zip(&results)
                .enumerate()
                .map(|(i, (z, e))| {
                    let mut r = vec![i.to_string()];
                    r.extend(coord_cells(z));
                    r.extend([e.value.re, e.value.im, e.value.norm(), e.condition].map(num));
                    r
                })
                .collect();
            run.emit_csv(header, rows)?
        }
    }
    Ok(Status::Ok)
}

fn eval_nc_cmd(run: &Run, file: &Path, mats: &[String]) -> Res<Status> {
    run.format(Format::Json, false, "eval-nc")?;
    let input = read_input(file)?;
    let at = nc_point(mats)?;
    let e = eval_nc(&input.colligation, &at, &run.tol)?;
    run.emit_json(
        "eval-nc",
        Some(&input),
        json!({
            "point": report::point(&at),
            "value": report::matrix(&e.value),
            "condition": e.condition,
            "warnings": e.warnings,
        }),
    )?;
    Ok(Status::Ok)
}

#[allow(clippy::too_many_arguments)]
fn zeros_scan_cmd(
    run: &Run,
    file: &Path,
    axis: usize,
    vary: Option<usize>,
    grid: usize,
    range: &str,
    base: Option<&str>,
) -> Res<Status> {
    let format = run.format(Format::Csv, true, "zeros scan")?;
    let input = read_input(file)?;
    let v = &input.colligation;
    let d = v.nvars();
    let vary = match vary {
        Some(k) => k,
        None if d == 2 && axis < 2 => 1 - axis,
        None => return Err("--vary is required unless the colligation has two variables".into()),
    };
    if grid < 2 {
        return Err("--grid needs at least 2 points".into());
    }
    let (lo, hi) = literal::range(range)?;
    let values: Vec<Complex64> = (0..grid)
        .map(|k| Complex64::new(lo + (hi - lo) * k as f64 / (grid - 1) as f64, 0.0))
        .collect();
    let base = match base {
        Some(b) => literal::tuple(b)?,
        None => vec![Complex64::new(0.0, 0.0); d],
    };
    let scan = zeros_scan(v, axis, vary, &values, &base, &run.tol)?;
    match format {
        Format::Csv => {
            let mut header = vec!["grid_index".to_string()];
            header.extend(coord_header("lambda", d));
            header.extend(["abs_f", "sigma_min"].map(String::from));
            let rows = scan
                .rows
                .iter()
                .map(|r| {
                    let mut cells = vec![r.grid_index.to_string()];
                    cells.extend(coord_cells(&r.point));
                    cells.extend([num(r.abs_f), num(r.sigma_min)]);
                    cells
                })
                .collect();
            run.emit_csv(header, rows)?;
        }
        Format::Json => run.emit_json(
            "zeros scan",
            Some(&input),
            json!({
                "axis": axis,
                "vary": vary,
                "grid": values.iter().map(|z| z.re).collect::<Vec<_>>(),
                "base": report::vector(&base),
                "zeros": scan.rows.iter().map(|r| json!({
                    "grid_index": r.grid_index,
                    "point": report::vector(&r.point),
                    "abs_f": r.abs_f,
                    "sigma_min": r.sigma_min,
                })).collect::<Vec<_>>(),
                "degenerate_lines": scan.degenerate_lines,
            }),
        )?,
    }
    Ok(Status::Ok)
}

fn spectrum(run: &Run, file: &Path, at: &PointArgs, det: bool) -> Res<Status> {
    run.format(Format::Json, false, "spectrum")?;
    let input = read_input(file)?;
    let v = &input.colligation;
    let point = at.parse()?;
    let r = ncq_residual(v, &point, &run.tol)?;
    let th = Thresholds::from_tolerances(&run.tol);
    let mut out = json!({
        "point": report::point(&point),
        "residual": report::residual(&r),
        "spectral_threshold": th.spectral,
        "eigenvalue": r.sigma_min <= th.spectral,
        "note": "approximate spectrum tested as point spectrum via the smallest singular value (finite dimensions)",
    });
    if det {
        if !matches!(v.structure(), StateStructure::Partition(_)) {
            return Err("--det needs a partition colligation".into());
        }
        let p = det_polynomial(v)?;
        let mut terms = vec![];
        let mut exps = vec![0usize; p.degrees.len()];
        for &c in &p.coeffs {
            terms.push(json!({ "exponents": exps.clone(), "coeff": report::cpx(c) }));
            for (e, &deg) in exps.iter_mut().zip(&p.degrees).rev() {
                if *e < deg {
                    *e += 1;
                    break;
                }
                *e = 0;
            }
        }
        out["det"] = json!({ "degrees": p.degrees, "terms": terms });
    }
    run.emit_json("spectrum", Some(&input), out)?;
    Ok(Status::Ok)
}

fn certify_cmd(run: &Run, file: &Path, at: &PointArgs, direction: Option<&str>) -> Res<Status> {
    run.format(Format::Json, false, "certify")?;
    let input = read_input(file)?;
    let point = at.parse()?;
    let y = direction.map(literal::tuple).transpose()?;
    let c = certify(
        &input.colligation,
        &point,
        y.as_deref(),
        &run.tol,
        &Thresholds::from_tolerances(&run.tol),
    )?;
    run.emit_json("certify", Some(&input), report::certificate(&c))?;
    Ok(if c.verdict == Verdict::Mismatch {
        Status::Flagged
    } else {
        Status::Ok
    })
}

fn boundary(run: &Run, which: &Boundary) -> Res<Status> {
    let sched = RadialSchedule::<f64>::default();
    match which {
        Boundary::Radial { file, at, direction } => {
            run.format(Format::Json, false, "boundary radial")?;
            let input = read_input(file)?;
            let y = direction.as_deref().map(literal::tuple).transpose()?;
            let z = is_boundary_zero(&input.colligation, &at.parse()?, y.as_deref(), &sched, &run.tol)?;
            let mut out = report::boundary_zero(&z);
            out["schedule"] = report::schedule(&sched);
            run.emit_json("boundary radial", Some(&input), out)?;
            Ok(Status::Ok)
        }
        Boundary::Classify { file, at } => {
            run.format(Format::Json, false, "boundary classify")?;
            let input = read_input(file)?;
            let s = input.colligation.structure();
            let point = at.parse()?;
            let class = classify_boundary_point(&domain_pencil(s), &point, &run.tol)?;
            run.emit_json(
                "boundary classify",
                Some(&input),
                json!({
                    "point": report::point(&point),
                    "domain_norm": s.domain_norm(point.blocks())?,
                    "class": class,
                    "isometric": class.is_iso(),
                    "coisometric": class.is_coiso(),
                }),
            )?;
            Ok(Status::Ok)
        }
        Boundary::Scan { file, grid } => {
            let format = run.format(Format::Csv, true, "boundary scan")?;
            if *grid == 0 {
                return Err("--grid must be positive".into());
            }
            let input = read_input(file)?;
            let v = &input.colligation;
            let points = boundary_grid(v.structure(), *grid)?
                .iter()
                .map(|z| NcPoint::from_scalar(z))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = boundary_scan(v, &points, &sched, &run.tol)?;
            let containment = if v.validate(&run.tol).is_isometry {
                Some(check_containments(v, &points, &sched, &run.tol)?)
            } else {
                None
            };
            let flagged = containment.as_ref().is_some_and(|c| !c.counterexamples.is_empty());
            match format {
                Format::Csv => {
                    let mut header = vec!["index".to_string()];
                    header.extend(coord_header("z", v.nvars()));
                    header.extend(
                        ["limit_norm", "limit_sigma_min", "sigma_min", "class", "bp_class", "boundary_zero"]
                            .map(String::from),
                    );
                    let body = rows
                        .iter()
                        .map(|r| {
                            let mut cells = vec![r.index.to_string()];
                            cells.extend(coord_cells(&r.point.scalar_coords().unwrap_or_default()));
                            cells.extend([
                                opt_cell(r.limit_norm),
                                opt_cell(r.limit_sigma_min),
                                num(r.sigma_min),
                                label(r.class),
                                label(r.bp_class),
                                r.boundary_zero.to_string(),
                            ]);
                            cells
                        })
                        .collect();
                    run.emit_csv(header, body)?;
                    match &containment {
                        Some(c) => eprintln!(
                            "containment: {} samples, {} boundary zeros, {} not converged, {} counterexamples",
                            c.samples,
                            c.boundary_zeros,
                            c.not_converged,
                            c.counterexamples.len()
                        ),
                        None => eprintln!("containment: skipped (colligation is not isometric)"),
                    }
                }
                Format::Json => run.emit_json(
                    "boundary scan",
                    Some(&input),
                    json!({
                        "grid": grid,
                        "schedule": report::schedule(&sched),
                        "rows": rows.iter().map(|r| json!({
                            "index": r.index,
                            "point": report::point(&r.point),
                            "limit_norm": r.limit_norm,
                            "limit_sigma_min": r.limit_sigma_min,
                            "sigma_min": r.sigma_min,
                            "class": r.class,
                            "bp_class": r.bp_class,
                            "boundary_zero": r.boundary_zero,
                        })).collect::<Vec<_>>(),
                        "containment": containment.as_ref().map(report::containment),
                    }),
                )?,
            }
            Ok(if flagged { Status::Flagged } else { Status::Ok })
        }
    }
}

fn suite(run: &Run, only: &[u8]) -> Res<Status> {
    let ids: Vec<u8> = if only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        let mut ids = only.to_vec();
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    let seed = run.global.seed;
    let results: Vec<CriterionResult> = ids.iter().map(|&id| run_criterion(id, seed)).collect();
    let total: f64 = results.iter().map(|r| r.seconds).sum();
    let within = total < SUITE_BUDGET_SECONDS;
    let all_pass = within && results.iter().all(|r| r.pass);
    match run.global.format {
        None => {
            let mut text = format!("seed {seed}\n");
            for r in &results {
                text.push_str(&format!(
                    "[{}] {:>2} {:<34} {:>8.3} s  {}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.id,
                    r.name,
                    r.seconds,
                    r.detail
                ));
            }
            text.push_str(&format!(
                "[{}]    battery runtime {total:.1} s (budget {SUITE_BUDGET_SECONDS} s)\n",
                if within { "PASS" } else { "FAIL" }
            ));
            run.emit(&text)?;
        }
        Some(Format::Json) => run.emit_json(
            "suite",
            None,
            json!({
                "criteria": results.iter().map(|r| json!({
                    "id": r.id,
                    "name": r.name,
                    "pass": r.pass,
                    "seconds": r.seconds,
                    "detail": r.detail,
                })).collect::<Vec<_>>(),
                "total_seconds": total,
                "within_budget": within,
                "all_pass": all_pass,
            }),
        )?,
        Some(Format::Csv) => run.emit_csv(
            ["id", "name", "pass", "seconds", "detail"].map(String::from).to_vec(),
            results
                .iter()
                .map(|r| vec![r.id.to_string(), r.name.clone(), r.pass.to_string(), num(r.seconds), r.detail.clone()])
                .collect(),
        )?,
    }
    Ok(if all_pass { Status::Ok } else { Status::Flagged })
}

fn dispatch(cli: Cli) -> Res<Status> {
    let run = Run::new(cli.global)?;
    match &cli.command {
        Command::Generate(g) => generate(&run, g),
        Command::Validate { file } => validate(&run, file),
        Command::Eval { file, point, points } => eval(&run, file, point, points.as_deref()),
        Command::EvalNc { file, nc_point } => eval_nc_cmd(&run, file, nc_point),
        Command::Zeros(Zeros::Scan {
            file,
            axis,
            vary,
            grid,
            range,
            base,
        }) => zeros_scan_cmd(&run, file, *axis, *vary, *grid, range, base.as_deref()),
        Command::Spectrum { file, at, det } => spectrum(&run, file, at, *det),
        Command::Certify { file, at, direction } => certify_cmd(&run, file, at, direction.as_deref()),
        Command::Boundary(b) => boundary(&run, b),
        Command::Suite { criterion } => suite(&run, criterion),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Flagged) => ExitCode::from(2),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
