use super::cg::clebsch_gordan;
use super::expr::{BosonExpr, Mode};
use crate::error::{domain, Result};

/// Spherical tensor operator of integer rank `ℓ`; `components[μ + ℓ]` holds projection `μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOp {
    rank: usize,
    components: Vec<BosonExpr>,
}

fn phase(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

impl TensorOp {
    pub fn new(rank: usize, components: Vec<BosonExpr>) -> Result<Self> {
        if components.len() != 2 * rank + 1 {
            return domain(format!(
                "rank-{rank} tensor needs {} components, got {}",
                2 * rank + 1,
                components.len()
            ));
        }
        Ok(TensorOp { rank, components })
    }

    pub fn scalar(expr: BosonExpr) -> Self {
        TensorOp {
            rank: 0,
            components: vec![expr],
        }
    }

    /// `s†` as a rank-0 tensor.
    pub fn s_dagger() -> Self {
        TensorOp::scalar(BosonExpr::creation(Mode::S))
    }

    /// `s̃ = s`.
    pub fn s_tilde() -> Self {
        TensorOp::scalar(BosonExpr::annihilation(Mode::S))
    }

    /// `d†_μ`.
    pub fn d_dagger() -> Self {
        TensorOp {
            rank: 2,
            components: (-2..=2).map(|mu| BosonExpr::creation(Mode::d(mu))).collect(),
        }
    }

    /// `d̃_μ = (-1)^μ d_{-μ}`.
    pub fn d_tilde() -> Self {
        TensorOp {
            rank: 2,
            components: (-2..=2)
                .map(|mu| BosonExpr::annihilation(Mode::d(-mu)).scale(phase(mu as i64)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[BosonExpr] {
        &self.components
    }

    /// Component with projection `mu`.
    pub fn component(&self, mu: i64) -> &BosonExpr {
        &self.components[(mu + self.rank as i64) as usize]
    }

    pub fn scale(&self, c: f64) -> Self {
        TensorOp {
            rank: self.rank,
            components: self.components.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &TensorOp) -> Result<Self> {
        if self.rank != other.rank {
            return domain(format!("cannot add ranks {} and {}", self.rank, other.rank));
        }
        Ok(TensorOp {
            rank: self.rank,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `x̃_m = (-1)^{ℓ+m} x_{-m}`.
    pub fn tilde(&self) -> Self {
        let l = self.rank as i64;
        TensorOp {
            rank: self.rank,
            components: (-l..=l)
                .map(|m| self.component(-m).scale(phase(l + m)))
                .collect(),
        }
    }

    /// Spherical-tensor conjugate: adjoint of each component followed by the tilde rule.
    /// Maps `d†` to `d̃`.
    pub fn conjugate(&self) -> Self {
        TensorOp {
            rank: self.rank,
            components: self.components.iter().map(BosonExpr::adjoint).collect(),
        }
        .tilde()
    }
}

/// `[A^{(ℓa)} B^{(ℓb)}]^{(ℓ)}_m = Σ ⟨ℓa μa; ℓb μb | ℓ m⟩ A_μa B_μb`.
pub fn couple(a: &TensorOp, b: &TensorOp, rank: usize) -> Result<TensorOp> {
    let (la, lb, l) = (a.rank as i64, b.rank as i64, rank as i64);
    if l < (la - lb).abs() || l > la + lb {
        return domain(format!("cannot couple ranks {la} and {lb} to {l}"));
    }
    let components = (-l..=l)
        .map(|m| {
            let mut acc = BosonExpr::zero();
            for mu_a in -la..=la {
                let mu_b = m - mu_a;
                if mu_b.abs() > lb {
                    continue;
                }
                let c = clebsch_gordan(la, mu_a, lb, mu_b, l, m);
                if c != 0.0 {
                    acc = &acc + &(a.component(mu_a) * b.component(mu_b)).scale(c);
                }
            }
            acc
        })
        .collect();
    Ok(TensorOp { rank, components })
}

/// `(A·B) = (-1)^ℓ √(2ℓ+1) [A B]^{(0)}_0 = Σ_μ (-1)^μ A_μ B_{-μ}`.
pub fn dot(a: &TensorOp, b: &TensorOp) -> Result<BosonExpr> {
    if a.rank != b.rank {
        return domain(format!(
            "scalar product needs equal ranks, got {} and {}",
            a.rank, b.rank
        ));
    }
    let l = a.rank as i64;
    let coupled = couple(a, b, 0)?;
    Ok(coupled.components[0].scale(phase(l) * ((2 * l + 1) as f64).sqrt()))
}
