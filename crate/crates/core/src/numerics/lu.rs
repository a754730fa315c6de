use crate::error::{Error, Result};
use crate::numerics::matrix::ComplexMatrix;
use crate::scalar::{cone, czero, Real, C};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: ComplexMatrix<T>,
    perm: Vec<usize>,
    sign_flips: usize,
    singular: bool,
}

impl<T: Real> Lu<T> {
    pub fn factor(a: &ComplexMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Size(format!("LU needs a square matrix, got {:?}", a.shape())));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == T::zero() {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign_flips += 1;
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == czero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - factor * u;
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            sign_flips,
            singular,
        })
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> C<T> {
        let n = self.lu.rows();
        let mut d = (0..n).fold(cone::<T>(), |acc, i| acc * self.lu[(i, i)]);
        if self.sign_flips % 2 == 1 {
            d = -d;
        }
        d
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::Size(format!("rhs has {} rows, expected {n}", b.rows())));
        }
        if self.singular {
            return Err(Error::Numerical("singular matrix in linear solve".into()));
        }
        let mut x = ComplexMatrix::from_fn(n, b.cols(), |i, j| b[(self.perm[i], j)]);
        for col in 0..b.cols() {
            for i in 0..n {
                let mut s = x[(i, col)];
                for k in 0..i {
                    s = s - self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, col)];
                for k in (i + 1)..n {
                    s = s - self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s / self.lu[(i, i)];
            }
        }
        if !x.is_finite() {
            return Err(Error::Numerical("non-finite solution in linear solve".into()));
        }
        Ok(x)
    }

    pub fn solve_vec(&self, b: &[C<T>]) -> Result<Vec<C<T>>> {
        Ok(self.solve(&ComplexMatrix::column_vector(b))?.column(0))
    }

    pub fn inverse(&self) -> Result<ComplexMatrix<T>> {
        self.solve(&ComplexMatrix::identity(self.lu.rows()))
    }
}

pub fn det<T: Real>(a: &ComplexMatrix<T>) -> Result<C<T>> {
    Ok(Lu::factor(a)?.det())
}

/// 1-norm condition number `‖A‖₁ ‖A⁻¹‖₁`; infinite for singular input.
pub fn condition_1<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    let lu = Lu::factor(a)?;
    if lu.is_singular() {
        return Ok(T::infinity());
    }
    let inv = lu.inverse()?;
    Ok(norm_1(a) * norm_1(&inv))
}

fn norm_1<T: Real>(a: &ComplexMatrix<T>) -> T {
    (0..a.cols())
        .map(|j| (0..a.rows()).fold(T::zero(), |acc, i| acc + a[(i, j)].norm()))
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn det_of_2x2() {
        let a = ComplexMatrix::<f64>::from_real_rows(&[&[0.0, 1.0], &[2.0, 3.0]]).unwrap();
        assert!((det(&a).unwrap() - c(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn solve_roundtrip() {
        let a = ComplexMatrix::<f64>::from_rows(&[
            vec![c(2.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)],
            vec![c(0.5, 0.0), c(3.0, 0.0), c(0.0, 2.0)],
            vec![c(-1.0, 0.0), c(1.0, 1.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let b = ComplexMatrix::column_vector(&[c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.5)]);
        let x = Lu::factor(&a).unwrap().solve(&b).unwrap();
        assert!((&a * &x).max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn singular_detected() {
        let a = ComplexMatrix::<f64>::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        let lu = Lu::factor(&a).unwrap();
        assert!(lu.solve_vec(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err() || lu.det().norm() < 1e-15);
        assert!(condition_1(&ComplexMatrix::<f64>::zeros(2, 2)).unwrap().is_infinite());
    }
}
