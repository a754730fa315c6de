//! JSON persistence. Matrices are row-major nested arrays of `[re, im]` pairs.

use serde::{Deserialize, Serialize};

use super::{Colligation, QPencil, StateStructure};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::scalar::{from_f64_pair, to_f64_pair, Real};

type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawColligation {
    name: String,
    structure: RawStructure,
    #[serde(rename = "A")]
    a: RawMatrix,
    #[serde(rename = "B")]
    b: RawMatrix,
    #[serde(rename = "C")]
    c: RawMatrix,
    #[serde(rename = "D")]
    d: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawStructure {
    Partition {
        dims: Vec<usize>,
    },
    MatrixBall {
        s: usize,
        r: usize,
        dim_h: usize,
        q: Vec<RawMatrix>,
    },
}

fn parse_err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

fn to_matrix<T: Real>(path: &str, raw: &RawMatrix) -> Result<ComplexMatrix<T>> {
    let rows = raw.len();
    let cols = raw.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != cols {
            return Err(parse_err(
                format!("{path}[{i}]"),
                format!("row has {} entries, expected {cols}", row.len()),
            ));
        }
        for (j, p) in row.iter().enumerate() {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(parse_err(format!("{path}[{i}][{j}]"), "non-finite entry"));
            }
            data.push(from_f64_pair(*p));
        }
    }
    ComplexMatrix::from_vec(rows, cols, data).map_err(|e| parse_err(path, e.to_string()))
}

fn from_matrix<T: Real>(m: &ComplexMatrix<T>) -> RawMatrix {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(to_f64_pair).collect())
        .collect()
}

/// Parses a colligation from JSON text.
pub fn load<T: Real>(text: &str) -> Result<Colligation<T>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawColligation = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        parse_err(path, e.into_inner().to_string())
    })?;
    let structure = match &raw.structure {
        RawStructure::Partition { dims } => StateStructure::partition(dims.clone())
            .map_err(|e| parse_err("structure.dims", e.to_string()))?,
        RawStructure::MatrixBall { s, r, dim_h, q } => {
            let coeffs = q
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    let path = format!("structure.q[{j}]");
                    let m = to_matrix::<T>(&path, m)?;
                    if m.shape() != (*s, *r) {
                        return Err(parse_err(
                            path,
                            format!("coefficient is {}x{}, declared {s}x{r}", m.rows(), m.cols()),
                        ));
                    }
                    Ok(m)
                })
                .collect::<Result<Vec<_>>>()?;
            let pencil = QPencil::new(coeffs).map_err(|e| parse_err("structure.q", e.to_string()))?;
            StateStructure::matrix_ball(pencil, *dim_h)
                .map_err(|e| parse_err("structure.dim_h", e.to_string()))?
        }
    };
    let a = to_matrix("A", &raw.a)?;
    let b = to_matrix("B", &raw.b)?;
    let c = to_matrix("C", &raw.c)?;
    let d = to_matrix("D", &raw.d)?;
    Colligation::new(raw.name.clone(), structure, &a, &b, &c, &d).map_err(|e| match &e {
        Error::Shape { block, .. } => parse_err(block.clone(), e.to_string()),
        _ => parse_err("", e.to_string()),
    })
}

/// Serializes a colligation to pretty-printed JSON.
pub fn save<T: Real>(v: &Colligation<T>) -> String {
    let structure = match v.structure() {
        StateStructure::Partition(p) => RawStructure::Partition {
            dims: p.dims().to_vec(),
        },
        StateStructure::MatrixBall { pencil, dim_h } => RawStructure::MatrixBall {
            s: pencil.s(),
            r: pencil.r(),
            dim_h: *dim_h,
            q: pencil.coeffs().iter().map(from_matrix).collect(),
        },
    };
    let raw = RawColligation {
        name: v.name().to_string(),
        structure,
        a: vec![vec![to_f64_pair(v.a())]],
        b: from_matrix(v.b()),
        c: from_matrix(v.c()),
        d: from_matrix(v.d()),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const BALL: &str = r#"{
        "name": "ball",
        "structure": {"kind": "matrix_ball", "s": 1, "r": 2, "dim_h": 3,
                      "q": [[[[1,0],[0,0]]], [[[0,0],[1,0]]]]},
        "A": [[[0,0]]],
        "B": [[[0,0],[0,0],[0,0]]],
        "C": [[[0,0]],[[0,0]],[[0,0]],[[0,0]],[[0,0]],[[0,0]]],
        "D": [[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],
              [[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]
    }"#;

    #[test]
    fn matrix_ball_dimensions() {
        let v = load::<f64>(BALL).unwrap();
        assert_eq!(v.structure().input_dim(), 3);
        assert_eq!(v.structure().output_dim(), 6);
    }

    #[test]
    fn round_trip_is_exact() {
        let v = load::<f64>(BALL).unwrap();
        let again = load::<f64>(&save(&v)).unwrap();
        assert_eq!(v, again);
    }

    #[test]
    fn ragged_row_reports_path() {
        let bad = BALL.replace(r#""B": [[[0,0],[0,0],[0,0]]]"#, r#""B": [[[0,0],[0,0]]]"#);
        match load::<f64>(&bad).unwrap_err() {
            Error::Parse { path, .. } => assert_eq!(path, "B"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_entry_arity_reports_path() {
        let bad = BALL.replace(r#""A": [[[0,0]]]"#, r#""A": [[[0,0,0]]]"#);
        match load::<f64>(&bad).unwrap_err() {
            Error::Parse { path, .. } => assert!(path.starts_with("A"), "{path}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(load::<f64>("{"), Err(Error::Parse { .. })));
    }
}
