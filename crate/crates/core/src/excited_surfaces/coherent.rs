//! Exact expectation values in products of orthogonal condensates.
//!
//! For a normalized state `Π_a (B_a†)^{N_a}/√(N_a!) |0⟩` with orthonormal single-boson
//! amplitudes `α^a`, Wick-type counting gives
//!
//! ```text
//! ⟨b†_i b_k⟩         = Σ_a N_a ᾱ^a_i α^a_k
//! ⟨b†_i b†_j b_k b_l⟩ = Σ_a N_a(N_a−1) ᾱ^a_i ᾱ^a_j α^a_k α^a_l
//!                     + Σ_{a<b} N_a N_b (ᾱ^a_i ᾱ^b_j + ᾱ^b_i ᾱ^a_j)(α^a_k α^b_l + α^b_k α^a_l)
//! ```

use num_complex::Complex64;

use crate::boson_algebra::{BosonExpr, N_MODES};
use crate::error::{Error, Result};

/// One condensate: normalized amplitudes over `(s, d_{-2}..d_{+2})` and its occupation.
#[derive(Clone, Debug, PartialEq)]
pub struct Condensate {
    pub amplitudes: [Complex64; N_MODES],
    pub occupation: usize,
}

impl Condensate {
    pub fn real(amplitudes: [f64; N_MODES], occupation: usize) -> Self {
        Condensate {
            amplitudes: amplitudes.map(|a| Complex64::new(a, 0.0)),
            occupation,
        }
    }
}

/// Product of orthogonal condensates.
#[derive(Clone, Debug)]
pub struct CondensateState {
    parts: Vec<Condensate>,
}

fn overlap(a: &[Complex64; N_MODES], b: &[Complex64; N_MODES]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl CondensateState {
    /// Validates normalization and mutual orthogonality to `1e-12`.
    pub fn new(parts: Vec<Condensate>) -> Result<Self> {
        let occupied: Vec<_> = parts.into_iter().filter(|c| c.occupation > 0).collect();
        for i in 0..occupied.len() {
            for j in i..occupied.len() {
                let ov = overlap(&occupied[i].amplitudes, &occupied[j].amplitudes);
                let expect = if i == j { 1.0 } else { 0.0 };
                if (ov - expect).norm() > 1e-12 {
                    return Err(Error::Domain(
                        "condensate amplitudes must be orthonormal".into(),
                    ));
                }
            }
        }
        Ok(CondensateState { parts: occupied })
    }

    pub fn total_bosons(&self) -> usize {
        self.parts.iter().map(|c| c.occupation).sum()
    }

    /// `⟨Ψ|expr|Ψ⟩` for a number-conserving expression of at most two-body order.
    pub fn expectation(&self, expr: &BosonExpr) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in expr.terms() {
            if !m.conserves_number() {
                return Err(Error::Domain(format!(
                    "monomial `{m}` does not conserve boson number"
                )));
            }
            let cr: Vec<usize> = m.creators().iter().map(|k| k.index()).collect();
            let an: Vec<usize> = m.annihilators().iter().map(|k| k.index()).collect();
            let v = match cr.len() {
                0 => Complex64::new(1.0, 0.0),
                1 => self.one_body(cr[0], an[0]),
                2 => self.two_body(cr[0], cr[1], an[0], an[1]),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "monomial `{m}` is beyond two-body order"
                    )))
                }
            };
            total += c * v;
        }
        Ok(total)
    }

    fn one_body(&self, i: usize, k: usize) -> Complex64 {
        self.parts
            .iter()
            .map(|p| p.amplitudes[i].conj() * p.amplitudes[k] * p.occupation as f64)
            .sum()
    }

    fn two_body(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for (ia, a) in self.parts.iter().enumerate() {
            let na = a.occupation as f64;
            let x = &a.amplitudes;
            v += na * (na - 1.0) * x[i].conj() * x[j].conj() * x[k] * x[l];
            for b in &self.parts[ia + 1..] {
                let y = &b.amplitudes;
                let nb = b.occupation as f64;
                let cre = x[i].conj() * y[j].conj() + y[i].conj() * x[j].conj();
                let ann = x[k] * y[l] + y[k] * x[l];
                v += na * nb * cre * ann;
            }
        }
        v
    }
}
