use crate::error::{Error, Result};
use crate::numerics::{nullspace, ComplexMatrix, ToleranceConfig};
use crate::scalar::{cone, Real};

/// Linear pencil `Q(z) = Σ z_j Q_j` with `s×r` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QPencil<T> {
    s: usize,
    r: usize,
    coeffs: Vec<ComplexMatrix<T>>,
}

impl<T: Real> QPencil<T> {
    /// Validates shapes and linear independence of the coefficients.
    pub fn new(coeffs: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::Structure("pencil needs at least one coefficient".into()))?;
        let (s, r) = first.shape();
        if s == 0 || r == 0 {
            return Err(Error::Structure("pencil coefficients must be nonempty".into()));
        }
        for (j, q) in coeffs.iter().enumerate() {
            if q.shape() != (s, r) {
                return Err(Error::Shape {
                    block: format!("q[{j}]"),
                    expected: format!("{s}x{r}"),
                    found: format!("{}x{}", q.rows(), q.cols()),
                });
            }
        }
        let d = coeffs.len();
        if d > s * r {
            return Err(Error::Structure(format!(
                "{d} coefficients of size {s}x{r} cannot be linearly independent"
            )));
        }
        let stacked = ComplexMatrix::from_fn(s * r, d, |i, j| coeffs[j][(i / r, i % r)]);
        let ns = nullspace(&stacked, &ToleranceConfig::default())?;
        if ns.largest_sv == T::zero() || ns.dim() > 0 {
            return Err(Error::Structure(
                "pencil coefficients are linearly dependent".into(),
            ));
        }
        Ok(Self { s, r, coeffs })
    }

    /// `Q_row(z) = [z_1 … z_d]`, the Euclidean ball.
    pub fn row(d: usize) -> Self {
        let coeffs = (0..d)
            .map(|j| {
                let mut q = ComplexMatrix::zeros(1, d);
                q[(0, j)] = cone();
                q
            })
            .collect();
        Self { s: 1, r: d, coeffs }
    }

    /// `Q_diag(z) = diag(z_1, …, z_d)`, the polydisk.
    pub fn diag(d: usize) -> Self {
        let coeffs = (0..d)
            .map(|j| {
                let mut q = ComplexMatrix::zeros(d, d);
                q[(j, j)] = cone();
                q
            })
            .collect();
        Self { s: d, r: d, coeffs }
    }

    /// `Q_col(z) = [z_1; …; z_d]`, the column ball.
    pub fn col(d: usize) -> Self {
        let coeffs = (0..d)
            .map(|j| {
                let mut q = ComplexMatrix::zeros(d, 1);
                q[(j, 0)] = cone();
                q
            })
            .collect();
        Self { s: d, r: 1, coeffs }
    }

    pub fn d(&self) -> usize {
        self.coeffs.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &[ComplexMatrix<T>] {
        &self.coeffs
    }

    /// `Q(Λ) = Σ Q_j ⊗ Λ_j` of shape `sn × rn`, the pencil index slow.
    /// A scalar point is the `n = 1` case.
    pub fn evaluate(&self, blocks: &[ComplexMatrix<T>]) -> Result<ComplexMatrix<T>> {
        check_blocks(self.d(), blocks)?;
        let n = blocks[0].rows();
        let mut out = ComplexMatrix::zeros(self.s * n, self.r * n);
        for (q, x) in self.coeffs.iter().zip(blocks) {
            out = &out + &q.kron(x)?;
        }
        Ok(out)
    }
}

pub(crate) fn check_blocks<T: Real>(d: usize, blocks: &[ComplexMatrix<T>]) -> Result<()> {
    if blocks.len() != d {
        return Err(Error::Arity {
            expected: d,
            found: blocks.len(),
        });
    }
    let n = blocks[0].rows();
    if blocks.iter().any(|b| b.shape() != (n, n)) || n == 0 {
        return Err(Error::Structure(
            "point blocks must be nonempty square matrices of equal size".into(),
        ));
    }
    Ok(())
}

/// Dimensions `N_1..N_d` of `H = ⊕ H_j` for the polydisk form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStructure {
    dims: Vec<usize>,
}

impl PartitionStructure {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Structure("partition needs at least one block".into()));
        }
        if let Some(j) = dims.iter().position(|&n| n == 0) {
            return Err(Error::Structure(format!("partition block {j} has dimension 0")));
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Starting index of each block inside `H`.
    pub fn offsets(&self) -> Vec<usize> {
        self.dims
            .iter()
            .scan(0, |acc, &n| {
                let start = *acc;
                *acc += n;
                Some(start)
            })
            .collect()
    }

    /// Index of the block containing state coordinate `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (j, &n) in self.dims.iter().enumerate() {
            acc += n;
            if i < acc {
                return j;
            }
        }
        panic!("state index {i} out of range");
    }
}

/// The state-space layout of a colligation.
#[derive(Clone, Debug, PartialEq)]
pub enum StateStructure<T> {
    /// Polydisk form with `Δ(z) = Σ z_j P_j`.
    Partition(PartitionStructure),
    /// Matrix-ball form `Q(z) ⊗ I_H` with `dim H = dim_h`. The input space
    /// `C^s ⊗ H` is laid out with the `C^s` index slow.
    MatrixBall { pencil: QPencil<T>, dim_h: usize },
}

impl<T: Real> StateStructure<T> {
    pub fn partition(dims: Vec<usize>) -> Result<Self> {
        Ok(Self::Partition(PartitionStructure::new(dims)?))
    }

    pub fn matrix_ball(pencil: QPencil<T>, dim_h: usize) -> Result<Self> {
        if dim_h == 0 {
            return Err(Error::Structure("dim_h must be positive".into()));
        }
        Ok(Self::MatrixBall { pencil, dim_h })
    }

    /// Number of variables.
    pub fn d(&self) -> usize {
        match self {
            Self::Partition(p) => p.d(),
            Self::MatrixBall { pencil, .. } => pencil.d(),
        }
    }

    /// Dimension of the space `D` acts on (`N`, or `s·dim_h`).
    pub fn input_dim(&self) -> usize {
        match self {
            Self::Partition(p) => p.total(),
            Self::MatrixBall { pencil, dim_h } => pencil.s() * dim_h,
        }
    }

    /// Dimension of the space `D` maps into (`N`, or `r·dim_h`).
    pub fn output_dim(&self) -> usize {
        match self {
            Self::Partition(p) => p.total(),
            Self::MatrixBall { pencil, dim_h } => pencil.r() * dim_h,
        }
    }

    /// The structured operator at a level-`n` point: `Σ P_j ⊗ Λ_j` for a
    /// partition, `Σ Q_j ⊗ I_H ⊗ Λ_j` for a matrix ball. The level index is
    /// fastest, so `D^{(n)} = D ⊗ I_n` composes with it directly. Shape is
    /// `input_dim·n × output_dim·n`.
    pub fn state_operator(&self, blocks: &[ComplexMatrix<T>]) -> Result<ComplexMatrix<T>> {
        check_blocks(self.d(), blocks)?;
        let n = blocks[0].rows();
        match self {
            Self::Partition(p) => {
                let mut z = ComplexMatrix::zeros(p.total() * n, p.total() * n);
                for i in 0..p.total() {
                    z.set_block(i * n, i * n, &blocks[p.block_of(i)]);
                }
                Ok(z)
            }
            Self::MatrixBall { pencil, dim_h } => {
                let (s, r, h) = (pencil.s(), pencil.r(), *dim_h);
                let mut z = ComplexMatrix::zeros(s * h * n, r * h * n);
                for (q, x) in pencil.coeffs().iter().zip(blocks) {
                    for a in 0..s {
                        for b in 0..r {
                            let coef = q[(a, b)];
                            if coef.norm() == T::zero() {
                                continue;
                            }
                            let blk = x.scale(coef);
                            for k in 0..h {
                                let r0 = (a * h + k) * n;
                                let c0 = (b * h + k) * n;
                                let cur = z.submatrix(r0, c0, n, n);
                                z.set_block(r0, c0, &(&cur + &blk));
                            }
                        }
                    }
                }
                Ok(z)
            }
        }
    }

    /// `‖Q(Λ)‖`, the quantity bounded by 1 on the domain.
    pub fn domain_norm(&self, blocks: &[ComplexMatrix<T>]) -> Result<T> {
        check_blocks(self.d(), blocks)?;
        match self {
            Self::Partition(_) => Ok(blocks.iter().map(|b| b.op_norm()).fold(T::zero(), T::max)),
            Self::MatrixBall { pencil, .. } => Ok(pencil.evaluate(blocks)?.op_norm()),
        }
    }

    /// Matrix-ball form of a partition whose blocks all have the same size.
    pub fn to_matrix_ball(&self) -> Result<Self> {
        match self {
            Self::Partition(p) => {
                let m = p.dims()[0];
                if p.dims().iter().any(|&n| n != m) {
                    return Err(Error::Unsupported(format!(
                        "partition {:?} has unequal blocks and no Q_diag form",
                        p.dims()
                    )));
                }
                Ok(Self::MatrixBall {
                    pencil: QPencil::diag(p.d()),
                    dim_h: m,
                })
            }
            Self::MatrixBall { .. } => Ok(self.clone()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Partition(_) => "partition",
            Self::MatrixBall { .. } => "matrix_ball",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn duplicate_coefficients_rejected() {
        let q = QPencil::<f64>::row(2).coeffs()[0].clone();
        assert!(QPencil::new(vec![q.clone(), q]).is_err());
    }

    #[test]
    fn standard_pencils_are_independent() {
        for d in 1..4 {
            assert!(QPencil::new(QPencil::<f64>::row(d).coeffs().to_vec()).is_ok());
            assert!(QPencil::new(QPencil::<f64>::diag(d).coeffs().to_vec()).is_ok());
        }
    }

    #[test]
    fn row_pencil_at_level_two_is_horizontal_concatenation() {
        let l1 = ComplexMatrix::from_fn(2, 2, |i, j| c((i * 2 + j) as f64, 0.0));
        let l2 = ComplexMatrix::from_fn(2, 2, |i, j| c(0.0, (i + 3 * j) as f64));
        let q = QPencil::row(2).evaluate(&[l1.clone(), l2.clone()]).unwrap();
        let mut want = ComplexMatrix::zeros(2, 4);
        want.set_block(0, 0, &l1);
        want.set_block(0, 2, &l2);
        assert_eq!(q, want);
    }

    #[test]
    fn partition_rejects_zero_block() {
        assert!(PartitionStructure::new(vec![1, 0]).is_err());
        assert!(PartitionStructure::new(vec![]).is_err());
    }

    #[test]
    fn unequal_partition_has_no_diag_form() {
        let s = StateStructure::<f64>::partition(vec![1, 2]).unwrap();
        assert!(s.to_matrix_ball().is_err());
        let s = StateStructure::<f64>::partition(vec![2, 2]).unwrap();
        match s.to_matrix_ball().unwrap() {
            StateStructure::MatrixBall { pencil, dim_h } => {
                assert_eq!((pencil.s(), pencil.r(), dim_h), (2, 2, 2));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn diag_form_state_operator_matches_partition() {
        let blocks = vec![
            ComplexMatrix::from_fn(2, 2, |i, j| c(0.1 * i as f64, 0.2 * j as f64)),
            ComplexMatrix::from_fn(2, 2, |i, j| c(-0.3 * j as f64, 0.05 * (i + j) as f64)),
        ];
        let p = StateStructure::<f64>::partition(vec![3, 3]).unwrap();
        let q = p.to_matrix_ball().unwrap();
        let zp = p.state_operator(&blocks).unwrap();
        let zq = q.state_operator(&blocks).unwrap();
        assert!(zp.max_abs_diff(&zq) == 0.0);
    }
}
