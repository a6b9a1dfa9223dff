//! Singularity exponent of a boundary stationary direction.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryVerdict {
    Discontinuous,
    Divergent,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryExponent {
    pub i: f64,
    pub verdict: BoundaryVerdict,
    /// Lowest derivative of `ρ̄` that is discontinuous or divergent.
    pub derivative_order: u32,
}

/// A power `K_l` of the boundary energy expansion; `None` stands for `K_l = ∞`.
pub type Power = Option<u32>;

/// `K⁻¹ = Σ K_l⁻¹/(2f − 1)`, `I = (2f − 1)/K + 1/M − 1`. Exact rational arithmetic,
/// so the integer test on `I` is exact. `m_twice` is `2M`, one of 1, 2, 3, 4.
pub fn boundary_exponent(k_list: &[Power], m_twice: u32, f: u32) -> Result<BoundaryExponent> {
    if !(1..=4).contains(&m_twice) {
        return Err(Error::Domain(format!(
            "M must be one of 1/2, 1, 3/2, 2; got {m_twice}/2"
        )));
    }
    if f == 0 || k_list.len() != (2 * f - 1) as usize {
        return Err(Error::Domain(format!(
            "expected 2f − 1 = {} powers, got {}",
            2 * f as i64 - 1,
            k_list.len()
        )));
    }
    let mut inv_sum = Ratio::<i64>::from_integer(0);
    for k in k_list {
        match k {
            Some(k) if *k < 2 => {
                return Err(Error::Domain(format!("powers must be ≥ 2, got {k}")));
            }
            Some(k) => inv_sum += Ratio::new(1, i64::from(*k)),
            None => {}
        }
    }
    // (2f−1)/K = Σ K_l⁻¹
    let i = inv_sum + Ratio::new(2, i64::from(m_twice)) - 1;
    let verdict = if i.is_integer() {
        BoundaryVerdict::Discontinuous
    } else {
        BoundaryVerdict::Divergent
    };
    let order = i.ceil().to_integer().max(0) as u32;
    Ok(BoundaryExponent {
        i: *i.numer() as f64 / *i.denom() as f64,
        verdict,
        derivative_order: order,
    })
}

/// As [`boundary_exponent`] with `M` given as a float.
pub fn boundary_exponent_f64(k_list: &[Power], m: f64, f: u32) -> Result<BoundaryExponent> {
    let twice = 2.0 * m;
    if (twice - twice.round()).abs() > 1e-12 || twice < 0.5 {
        return Err(Error::Domain(format!("M must be one of 1/2, 1, 3/2, 2; got {m}")));
    }
    boundary_exponent(k_list, twice.round() as u32, f)
}
