use crate::boson_algebra::{Mode, N_MODES};
use crate::classical_limit::R0;
use crate::error::{Error, Result};

/// Condensate boson `B†(β, γ)` and the β- and γ-vibrational bosons orthogonal to it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntrinsicBosons {
    pub beta: f64,
    pub gamma: f64,
    pub condensate: [f64; N_MODES],
    pub beta_mode: [f64; N_MODES],
    pub gamma_mode: [f64; N_MODES],
}

fn amplitudes(s: f64, d0: f64, d2: f64) -> [f64; N_MODES] {
    let mut a = [0.0; N_MODES];
    a[Mode::S.index()] = s;
    a[Mode::d(0).index()] = d0;
    a[Mode::d(2).index()] = d2;
    a[Mode::d(-2).index()] = d2;
    a
}

impl IntrinsicBosons {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=R0).contains(&beta) {
            return Err(Error::Domain(format!("beta must lie in [0, √2], got {beta}")));
        }
        let s = (1.0 - 0.5 * beta * beta).max(0.0).sqrt();
        let (sg, cg) = gamma.sin_cos();
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        Ok(IntrinsicBosons {
            beta,
            gamma,
            condensate: amplitudes(s, beta * cg * r2, 0.5 * beta * sg),
            beta_mode: amplitudes(-beta * r2, s * cg, s * sg * r2),
            gamma_mode: amplitudes(0.0, -sg, cg * r2),
        })
    }

    /// `√(1 − β²/2)`.
    pub fn s_amplitude(&self) -> f64 {
        self.condensate[Mode::S.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[f64; N_MODES], b: &[f64; N_MODES]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn orthonormal_triple() {
        for &(b, g) in &[(0.0, 0.0), (0.7, 0.3), (1.2, 2.0), (R0, 4.0)] {
            let t = IntrinsicBosons::new(b, g).unwrap();
            let v = [t.condensate, t.beta_mode, t.gamma_mode];
            for i in 0..3 {
                for j in 0..3 {
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((dot(&v[i], &v[j]) - e).abs() < 1e-12);
                }
            }
            assert!((t.s_amplitude() - (1.0 - b * b / 2.0).max(0.0).sqrt()).abs() < 1e-15);
        }
        assert!(IntrinsicBosons::new(1.5, 0.0).is_err());
    }
}
