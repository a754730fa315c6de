use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{c, cone, czero, is_finite, Real, C};

/// Dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    /// Builds a matrix from row-major data, rejecting length mismatches and
    /// non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        let expected = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::Size(format!("{rows}x{cols} overflows")))?;
        if data.len() != expected {
            return Err(Error::Size(format!(
                "expected {expected} entries for a {rows}x{cols} matrix, found {}",
                data.len()
            )));
        }
        if !data.iter().all(is_finite) {
            return Err(Error::NonFinite("matrix".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let r = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Size(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(r, cols, data)
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let nested: Vec<Vec<C<T>>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(T::lit(x), T::zero())).collect())
            .collect();
        Self::from_rows(&nested)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn column_vector(v: &[C<T>]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn row_vector(v: &[C<T>]) -> Self {
        Self {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    pub fn diagonal(diag: &[C<T>]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn scalar(z: C<T>) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![z],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C<T>]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<C<T>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(is_finite)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Converts entries to another scalar type through `f64`.
    pub fn map_to<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|&z| crate::scalar::from_f64_pair(crate::scalar::to_f64_pair(z)))
                .collect(),
        }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {:?} * {:?}",
            self.shape(),
            rhs.shape()
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Kronecker product `self ⊗ rhs` with the left factor's index slow.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let rows = self
            .rows
            .checked_mul(rhs.rows)
            .ok_or_else(|| Error::Size("kron row count overflows".into()))?;
        let cols = self
            .cols
            .checked_mul(rhs.cols)
            .ok_or_else(|| Error::Size("kron column count overflows".into()))?;
        rows.checked_mul(cols)
            .ok_or_else(|| Error::Size("kron entry count overflows".into()))?;
        Ok(Self::from_fn(rows, cols, |i, j| {
            self[(i / rhs.rows, j / rhs.cols)] * rhs[(i % rhs.rows, j % rhs.cols)]
        }))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn block2x2(a: &Self, b: &Self, cm: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || cm.rows != d.rows || a.cols != cm.cols || b.cols != d.cols {
            return Err(Error::Size("inconsistent 2x2 block partition".into()));
        }
        let mut m = Self::zeros(a.rows + cm.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, cm);
        m.set_block(a.rows, a.cols, d);
        Ok(m)
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn norm_fro(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Spectral norm (largest singular value).
    pub fn op_norm(&self) -> T {
        super::svd::singular_values(self)
            .first()
            .copied()
            .unwrap_or_else(T::zero)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;

    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

// Vector helpers. Vectors are plain slices of complex scalars.

/// Inner product `⟨x, y⟩ = x^H y` (conjugate-linear in the first slot).
pub fn dot<T: Real>(x: &[C<T>], y: &[C<T>]) -> C<T> {
    x.iter()
        .zip(y)
        .fold(czero(), |acc, (a, b)| acc + a.conj() * b)
}

pub fn vec_norm<T: Real>(x: &[C<T>]) -> T {
    x.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

pub fn vec_sub<T: Real>(x: &[C<T>], y: &[C<T>]) -> Vec<C<T>> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vec_add<T: Real>(x: &[C<T>], y: &[C<T>]) -> Vec<C<T>> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vec_scale<T: Real>(x: &[C<T>], s: C<T>) -> Vec<C<T>> {
    x.iter().map(|a| a * s).collect()
}

pub fn normalize<T: Real>(x: &[C<T>]) -> Vec<C<T>> {
    let n = vec_norm(x);
    if n == T::zero() {
        x.to_vec()
    } else {
        x.iter().map(|a| a / n).collect()
    }
}

/// Sine of the angle between the line spanned by `x` and the subspace
/// spanned by the orthonormal vectors in `basis`.
pub fn subspace_angle_sin<T: Real>(x: &[C<T>], basis: &[Vec<C<T>>]) -> T {
    let nx = vec_norm(x);
    if nx == T::zero() {
        return T::one();
    }
    let mut residual = x.to_vec();
    for b in basis {
        let p = dot(b, &residual);
        for (r, bi) in residual.iter_mut().zip(b) {
            *r = *r - bi * p;
        }
    }
    (vec_norm(&residual) / nx).min(T::one())
}

/// Perfect-shuffle permutation `K` of size `ab × ab` with
/// `K (X ⊗ Y) Kᵀ = Y ⊗ X` for `X` of size `a×a` and `Y` of size `b×b`.
pub fn commutation_matrix<T: Real>(a: usize, b: usize) -> ComplexMatrix<T> {
    let n = a * b;
    let mut k = ComplexMatrix::zeros(n, n);
    for i in 0..a {
        for j in 0..b {
            // basis vector e_i ⊗ e_j maps to e_j ⊗ e_i
            k[(j * a + i, i * b + j)] = cone();
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn kron_identity_gives_block_diagonal() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let k = ComplexMatrix::identity(2).kron(&a).unwrap();
        assert_eq!(k, a.direct_sum(&a));
    }

    #[test]
    fn kron_scalar_scales() {
        let a = m(&[&[1.0, -2.0], &[0.5, 4.0]]);
        let two = m(&[&[2.0]]);
        assert_eq!(two.kron(&a).unwrap(), a.scale_real(2.0));
    }

    #[test]
    fn kron_shape() {
        let a = ComplexMatrix::<f64>::zeros(2, 3);
        let b = ComplexMatrix::<f64>::zeros(4, 5);
        assert_eq!(a.kron(&b).unwrap().shape(), (8, 15));
    }

    #[test]
    fn from_vec_rejects_bad_length_and_nan() {
        assert!(ComplexMatrix::<f64>::from_vec(2, 2, vec![czero(); 3]).is_err());
        let bad = vec![c(f64::NAN, 0.0); 1];
        assert!(matches!(
            ComplexMatrix::<f64>::from_vec(1, 1, bad),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn commutation_swaps_kron_factors() {
        let x = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let y = m(&[&[0.0, 1.0, 2.0], &[5.0, -1.0, 0.5], &[2.0, 2.0, 7.0]]);
        let k = commutation_matrix::<f64>(2, 3);
        let lhs = &(&k * &x.kron(&y).unwrap()) * &k.transpose();
        assert!(lhs.max_abs_diff(&y.kron(&x).unwrap()) == 0.0);
    }

    #[test]
    fn angle_of_vector_in_subspace_is_zero() {
        let e1 = vec![c(1.0, 0.0), czero()];
        let x = vec![c(0.0, 3.0), czero()];
        assert!(subspace_angle_sin(&x, &[e1]) < 1e-15);
    }
}
