//! Large-N classical limit of number-conserving boson polynomials.
//!
//! The `s` mode is eliminated: every `d_μ` amplitude becomes `α_μ = (q + i p)/√2` and
//! `α_s = √(1 − Σ|α_μ|²)`. A monomial with `k` creators maps to `ᾱ…ᾱ α…α`, i.e. the
//! leading term of `⟨·⟩/N^k` in a condensate. An expression written as
//! `Σ_k h_k` with the `1/N^{k−1}` prefactors stripped therefore maps to the energy per boson.

use num_complex::Complex64;

use super::expr::{BosonExpr, Mode, N_MODES};
use crate::error::{Error, Result};

/// How phase-space coordinates populate the five `d` amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// `f = 5`: one `(q, p)` pair per `d_μ`, ordered `μ = −2..2`.
    Full,
    /// `f = 2`: the L=0 intrinsic plane `(x, y, p_x, p_y)` with
    /// `α_0 = (x + i p_x)/√2`, `α_{±2} = (y + i p_y)/2`, `α_{±1} = 0`.
    Intrinsic,
}

impl Embedding {
    pub fn degrees_of_freedom(self) -> usize {
        match self {
            Embedding::Full => 5,
            Embedding::Intrinsic => 2,
        }
    }
}

/// A classical phase-space function produced by [`classical_map`].
#[derive(Clone, Debug)]
pub struct PhaseFunction {
    embedding: Embedding,
    // (coef, creator mode indices, annihilator mode indices)
    terms: Vec<(Complex64, Vec<usize>, Vec<usize>)>,
}

impl PhaseFunction {
    pub fn degrees_of_freedom(&self) -> usize {
        self.embedding.degrees_of_freedom()
    }

    /// Mode amplitudes `α` at coordinates `(q_1..q_f, p_1..p_f)`.
    pub fn amplitudes(&self, coords: &[f64]) -> Result<[Complex64; N_MODES]> {
        let f = self.degrees_of_freedom();
        if coords.len() != 2 * f {
            return Err(Error::Domain(format!(
                "expected {} phase-space coordinates, got {}",
                2 * f,
                coords.len()
            )));
        }
        let (q, p) = coords.split_at(f);
        let r2: f64 = coords.iter().map(|c| c * c).sum();
        if r2 > 2.0 + 1e-12 {
            return Err(Error::Domain(format!(
                "point with R² = {r2} lies outside the phase-space ball R² ≤ 2"
            )));
        }
        let mut a = [Complex64::new(0.0, 0.0); N_MODES];
        match self.embedding {
            Embedding::Full => {
                for mu in -2..=2 {
                    let k = (mu + 2) as usize;
                    a[Mode::d(mu).index()] = Complex64::new(q[k], p[k]) / 2f64.sqrt();
                }
            }
            Embedding::Intrinsic => {
                a[Mode::d(0).index()] = Complex64::new(q[0], p[0]) / 2f64.sqrt();
                let a2 = Complex64::new(q[1], p[1]) / 2.0;
                a[Mode::d(2).index()] = a2;
                a[Mode::d(-2).index()] = a2;
            }
        }
        a[Mode::S.index()] = Complex64::new((1.0 - 0.5 * r2).max(0.0).sqrt(), 0.0);
        Ok(a)
    }

    pub fn eval_complex(&self, coords: &[f64]) -> Result<Complex64> {
        let a = self.amplitudes(coords)?;
        Ok(self
            .terms
            .iter()
            .map(|(c, cr, an)| {
                let mut v = *c;
                for &k in cr {
                    v *= a[k].conj();
                }
                for &k in an {
                    v *= a[k];
                }
                v
            })
            .sum())
    }

    /// Real part of the classical function (exactly real for Hermitian input).
    pub fn eval(&self, coords: &[f64]) -> Result<f64> {
        Ok(self.eval_complex(coords)?.re)
    }
}

/// Classical limit of `expr` with `f` retained coordinate pairs (5 for the full `d` space,
/// 2 for the L=0 intrinsic plane).
pub fn classical_map(expr: &BosonExpr, f: usize) -> Result<PhaseFunction> {
    let embedding = match f {
        5 => Embedding::Full,
        2 => Embedding::Intrinsic,
        _ => {
            return Err(Error::Unsupported(format!(
                "classical map with f = {f} (supported: 2, 5)"
            )))
        }
    };
    let mut terms = Vec::with_capacity(expr.len());
    for (m, c) in expr.terms() {
        if !m.conserves_number() {
            return Err(Error::Domain(format!(
                "monomial `{m}` does not conserve boson number"
            )));
        }
        if m.order() > 4 {
            return Err(Error::Unsupported(format!(
                "monomial `{m}` is beyond two-body order"
            )));
        }
        terms.push((
            *c,
            m.creators().iter().map(|k| k.index()).collect(),
            m.annihilators().iter().map(|k| k.index()).collect(),
        ));
    }
    Ok(PhaseFunction { embedding, terms })
}
