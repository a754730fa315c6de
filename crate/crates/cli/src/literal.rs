//! Parsers for complex literals, points, matrices and ranges given on the
//! command line.

use num_complex::Complex64;

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = vec![];
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn real(s: &str, whole: &str) -> Result<f64, String> {
    let x: f64 = s
        .parse()
        .map_err(|_| format!("invalid complex literal `{whole}`"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("non-finite value in `{whole}`"))
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` or `(a,b)`.
pub fn complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let parts = split_top(inner, ',');
        if parts.len() != 2 {
            return Err(format!("expected a pair `(re,im)`, found `{text}`"));
        }
        return Ok(Complex64::new(real(parts[0], text)?, real(parts[1], text)?));
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(real(&s, text)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let unit = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t, text),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k], text)?, unit(&body[k..])?)),
        None => Ok(Complex64::new(0.0, unit(body)?)),
    }
}

/// Comma-separated tuple of complex literals.
pub fn tuple(text: &str) -> Result<Vec<Complex64>, String> {
    split_top(text, ',').into_iter().map(complex).collect()
}

/// Square matrix with rows separated by `;` and entries by `,`.
pub fn matrix(text: &str) -> Result<Vec<Vec<Complex64>>, String> {
    let rows = split_top(text, ';')
        .into_iter()
        .map(tuple)
        .collect::<Result<Vec<_>, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(format!("matrix `{text}` is not square"));
    }
    Ok(rows)
}

/// `lo:hi` with `lo < hi`.
pub fn range(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("expected `lo:hi`, found `{text}`"))?;
    let (lo, hi) = (real(lo.trim(), text)?, real(hi.trim(), text)?);
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("range `{text}` is empty"))
    }
}

/// Comma-separated positive integers.
pub fn dims(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("invalid dimension list `{text}`")),
        })
        .collect()
}
