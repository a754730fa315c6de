//! Eigenvalues of small dense complex matrices: Householder reduction to
//! upper Hessenberg form followed by explicitly shifted QR sweeps with
//! Wilkinson shifts and deflation.

use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;
use crate::scalar::{c, czero, Real, C};

const MAX_ITER_PER_EIGENVALUE: usize = 60;

pub fn eigenvalues<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<C<T>>> {
    if !a.is_square() {
        return Err(Error::Size(format!("eigenvalues need a square matrix, got {:?}", a.shape())));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("eigenvalue input".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut h = hessenberg(a);
    let mut eig = vec![czero(); n];
    let eps = T::epsilon();
    let mut hi = n - 1;
    let mut iter = 0;
    let mut total = 0;
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // deflation search
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == T::zero() { h.max_abs() } else { s };
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(Error::Numerical(format!(
                "QR iteration failed to converge for eigenvalue {hi} of {n} after {total} sweeps"
            )));
        }
        let shift = if iter % 11 == 0 {
            // exceptional shift
            h[(hi, hi)] + c(h[(hi, hi - 1)].norm() * T::lit(0.75), h[(hi, hi - 1)].norm() * T::lit(0.5))
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    Ok(eig)
}

fn wilkinson_shift<T: Real>(a: C<T>, b: C<T>, cc: C<T>, d: C<T>) -> C<T> {
    let half = T::lit(0.5);
    let tr_half = (a + d) * half;
    let det = a * d - b * cc;
    let disc = (tr_half * tr_half - det).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit QR step on the active block `lo..=hi`.
fn qr_sweep<T: Real>(h: &mut ComplexMatrix<T>, lo: usize, hi: usize, shift: C<T>) {
    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] - shift;
    }
    let mut rots: Vec<(T, C<T>)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (cs, sn) = givens(h[(k, k)], h[(k + 1, k)]);
        // rows k, k+1 <- G rows
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * cs + y * sn;
            h[(k + 1, j)] = -sn.conj() * x + y * cs;
        }
        rots.push((cs, sn));
    }
    for (idx, k) in (lo..hi).enumerate() {
        let (cs, sn) = rots[idx];
        let top = (k + 2).min(hi);
        // columns k, k+1 <- cols G^H
        for i in lo..=top {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * cs + y * sn.conj();
            h[(i, k + 1)] = -x * sn + y * cs;
        }
    }
    for i in lo..=hi {
        h[(i, i)] = h[(i, i)] + shift;
    }
}

/// Rotation `[[c, s], [-s̄, c]]` with real `c` mapping `(x, y)` to `(r, 0)`.
fn givens<T: Real>(x: C<T>, y: C<T>) -> (T, C<T>) {
    let nx = x.norm();
    let ny = y.norm();
    if ny == T::zero() {
        return (T::one(), czero());
    }
    if nx == T::zero() {
        return (T::zero(), y.conj() / ny);
    }
    let r = nx.hypot(ny);
    let cs = nx / r;
    let sn = (x / nx) * y.conj() / r;
    (cs, sn)
}

fn hessenberg<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C<T>> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let alpha = x.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        if alpha == T::zero() {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == T::zero() {
            c(T::one(), T::zero())
        } else {
            x0 / x0.norm()
        };
        let mut v = x.clone();
        v[0] = x0 + phase * alpha;
        let vnorm2 = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if vnorm2 == T::zero() {
            continue;
        }
        let two = T::lit(2.0);
        // H <- (I - 2vv^H/|v|^2) H
        for j in 0..n {
            let s = v
                .iter()
                .enumerate()
                .fold(czero(), |acc, (t, vt)| acc + vt.conj() * h[(k + 1 + t, j)]);
            let s = s * (two / vnorm2);
            for (t, vt) in v.iter().enumerate() {
                h[(k + 1 + t, j)] = h[(k + 1 + t, j)] - vt * s;
            }
        }
        // H <- H (I - 2vv^H/|v|^2)
        for i in 0..n {
            let s = v
                .iter()
                .enumerate()
                .fold(czero(), |acc, (t, vt)| acc + h[(i, k + 1 + t)] * vt);
            let s = s * (two / vnorm2);
            for (t, vt) in v.iter().enumerate() {
                h[(i, k + 1 + t)] = h[(i, k + 1 + t)] - s * vt.conj();
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = czero();
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::random::random_unitary;

    fn sorted(mut v: Vec<C<f64>>) -> Vec<C<f64>> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn diagonal_eigenvalues() {
        let d = [c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 3.0)];
        let m = ComplexMatrix::diagonal(&d);
        let e = sorted(eigenvalues(&m).unwrap());
        let want = sorted(d.to_vec());
        for (a, b) in e.iter().zip(&want) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn similarity_preserves_spectrum() {
        let d = [c(0.3, 0.1), c(-0.7, 0.0), c(0.2, -0.9), c(1.5, 0.5)];
        let u = random_unitary::<f64>(4, 11);
        let m = &(&u * &ComplexMatrix::diagonal(&d)) * &u.adjoint();
        let e = sorted(eigenvalues(&m).unwrap());
        let want = sorted(d.to_vec());
        for (a, b) in e.iter().zip(&want) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn rotation_has_conjugate_pair() {
        let m = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let e = sorted(eigenvalues(&m).unwrap());
        assert!((e[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - c(0.0, 1.0)).norm() < 1e-14);
    }
}
