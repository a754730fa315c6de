use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Numerical thresholds shared by every module.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig<T> {
    /// Relative singular-value cutoff for kernel detection.
    pub rank_tol: T,
    /// Certificate threshold for residuals and class membership.
    pub residual_tol: T,
    /// Interior margin: points must satisfy `‖Q(z)‖ ≤ 1 − domain_margin`.
    pub domain_margin: T,
}

impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        Self {
            rank_tol: T::lit(1e-10),
            residual_tol: T::lit(1e-8),
            domain_margin: T::lit(1e-6),
        }
    }
}

impl<T: Real> ToleranceConfig<T> {
    pub fn new(rank_tol: T, residual_tol: T, domain_margin: T) -> Result<Self> {
        let cfg = Self {
            rank_tol,
            residual_tol,
            domain_margin,
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Enforces `0 < rank_tol < residual_tol < 1` and `0 < domain_margin < 1`.
    pub fn check(&self) -> Result<()> {
        let zero = T::zero();
        let one = T::one();
        if !(zero < self.rank_tol && self.rank_tol < self.residual_tol && self.residual_tol < one) {
            return Err(Error::Tolerance(format!(
                "need 0 < rank_tol ({}) < residual_tol ({}) < 1",
                self.rank_tol, self.residual_tol
            )));
        }
        if !(zero < self.domain_margin && self.domain_margin < one) {
            return Err(Error::Tolerance(format!(
                "domain_margin {} must lie in (0, 1)",
                self.domain_margin
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        assert!(ToleranceConfig::<f64>::default().check().is_ok());
    }

    #[test]
    fn rejects_inverted_order() {
        assert!(ToleranceConfig::new(1e-6, 1e-8, 1e-6).is_err());
        assert!(ToleranceConfig::new(1e-10, 1e-8, 1.5).is_err());
        assert!(ToleranceConfig::new(0.0, 1e-8, 1e-6).is_err());
    }
}
