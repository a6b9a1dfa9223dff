use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which formula of the piecewise Hamiltonian family applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `λ ∈ [0, 1]`, `ζ = λ`.
    SphericalToCritical,
    /// `λ > 1`, `ξ = λ − 1`.
    CriticalToDeformed,
}

/// Shape parameter `β₀′` and control parameter `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    beta0p: f64,
    lambda: f64,
}

/// Critical value of the control parameter where the two branches meet.
pub const LAMBDA_C: f64 = 1.0;

impl ModelParams {
    pub fn new(beta0p: f64, lambda: f64) -> Result<Self> {
        if !(beta0p.is_finite() && beta0p > 0.0) {
            return Err(Error::Domain(format!("beta0p must be positive, got {beta0p}")));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::Domain(format!("lambda must be non-negative, got {lambda}")));
        }
        Ok(ModelParams { beta0p, lambda })
    }

    pub fn beta0p(&self) -> f64 {
        self.beta0p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        ModelParams::new(self.beta0p, lambda)
    }

    pub fn branch(&self) -> Branch {
        if self.lambda <= LAMBDA_C {
            Branch::SphericalToCritical
        } else {
            Branch::CriticalToDeformed
        }
    }

    /// `(ζ, ξ)`: `(λ, 0)` below the critical point, `(1, λ − 1)` above.
    pub fn zeta_xi(&self) -> (f64, f64) {
        match self.branch() {
            Branch::SphericalToCritical => (self.lambda, 0.0),
            Branch::CriticalToDeformed => (1.0, self.lambda - LAMBDA_C),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches() {
        let p = ModelParams::new(1.2, 0.4).unwrap();
        assert_eq!(p.zeta_xi(), (0.4, 0.0));
        let p = ModelParams::new(1.2, 1.0).unwrap();
        assert_eq!(p.zeta_xi(), (1.0, 0.0));
        let p = ModelParams::new(1.2, 2.5).unwrap();
        assert_eq!(p.branch(), Branch::CriticalToDeformed);
        assert_eq!(p.zeta_xi(), (1.0, 1.5));
    }

    #[test]
    fn rejects_invalid() {
        assert!(ModelParams::new(0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, -0.1).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0).is_err());
    }
}
