//! Brute-force occupation-number representation of the six-mode boson space.
//!
//! Operators act exactly on sparse states without any truncation, so matrix elements
//! between low-occupancy states are free of cutoff artifacts. Used as the reference
//! for every algebraic shortcut elsewhere in the crate.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::expr::{BosonExpr, Ladder, Mode, OperatorWord, N_MODES};

pub type Occupation = [u16; N_MODES];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Sparse vector in the Fock space.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockState {
    amps: BTreeMap<Occupation, Complex64>,
}

impl FockState {
    pub fn vacuum() -> Self {
        FockState::basis([0; N_MODES])
    }

    pub fn basis(occ: Occupation) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(occ, Complex64::new(1.0, 0.0));
        FockState { amps }
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.amps.iter()
    }

    pub fn amplitude(&self, occ: &Occupation) -> Complex64 {
        self.amps.get(occ).copied().unwrap_or(ZERO)
    }

    fn accumulate(&mut self, occ: Occupation, c: Complex64) {
        if c != ZERO {
            *self.amps.entry(occ).or_insert(ZERO) += c;
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockState) -> Complex64 {
        self.amps
            .iter()
            .map(|(k, v)| v.conj() * other.amplitude(k))
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|v| v.norm_sqr()).sum()
    }

    pub fn scale(&self, c: Complex64) -> FockState {
        FockState {
            amps: self.amps.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &FockState, c: Complex64) -> FockState {
        let mut out = self.clone();
        for (k, v) in &other.amps {
            out.accumulate(*k, v * c);
        }
        out
    }

    pub fn normalized(&self) -> FockState {
        self.scale(Complex64::new(1.0 / self.norm_sqr().sqrt(), 0.0))
    }

    /// Applies an operator word (rightmost ladder first).
    pub fn apply_word(&self, word: &OperatorWord) -> FockState {
        let mut out = FockState::default();
        for (occ, amp) in &self.amps {
            if let Some((next, factor)) = apply_ladders(&word.ladders, *occ) {
                out.accumulate(next, amp * word.coef * factor);
            }
        }
        out
    }

    pub fn apply(&self, expr: &BosonExpr) -> FockState {
        let mut out = FockState::default();
        for w in expr.to_words() {
            for (occ, amp) in &self.apply_word(&w).amps {
                out.accumulate(*occ, *amp);
            }
        }
        out
    }

    /// `⟨self|expr|self⟩`.
    pub fn expectation(&self, expr: &BosonExpr) -> Complex64 {
        self.inner(&self.apply(expr))
    }
}

/// Image of a single occupation vector under a ladder string, or `None` if annihilated.
pub fn apply_ladders(ladders: &[Ladder], mut occ: Occupation) -> Option<(Occupation, f64)> {
    let mut factor = 1.0;
    for l in ladders.iter().rev() {
        let n = &mut occ[l.mode.index()];
        if l.dagger {
            *n += 1;
            factor *= f64::from(*n).sqrt();
        } else {
            if *n == 0 {
                return None;
            }
            factor *= f64::from(*n).sqrt();
            *n -= 1;
        }
    }
    Some((occ, factor))
}

/// Ordered list of occupation vectors spanning a subspace.
#[derive(Clone, Debug)]
pub struct FockBasis {
    states: Vec<Occupation>,
    index: HashMap<Occupation, usize>,
}

fn compositions(total: u16, modes: usize, prefix: &mut Vec<u16>, out: &mut Vec<Occupation>) {
    if prefix.len() == modes - 1 {
        prefix.push(total);
        let mut occ = [0; N_MODES];
        occ.copy_from_slice(prefix);
        out.push(occ);
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, modes, prefix, out);
        prefix.pop();
    }
}

impl FockBasis {
    pub fn from_states(mut states: Vec<Occupation>) -> Self {
        states.sort_unstable();
        states.dedup();
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        FockBasis { states, index }
    }

    /// All states with exactly `n` bosons.
    pub fn fixed_number(n: u16) -> Self {
        let mut states = Vec::new();
        compositions(n, N_MODES, &mut Vec::new(), &mut states);
        FockBasis::from_states(states)
    }

    /// All states with at most `n_max` bosons.
    pub fn up_to(n_max: u16) -> Self {
        let mut states = Vec::new();
        for n in 0..=n_max {
            compositions(n, N_MODES, &mut Vec::new(), &mut states);
        }
        FockBasis::from_states(states)
    }

    /// States with `n` bosons and total angular-momentum projection `m`.
    pub fn with_projection(n: u16, m: i32) -> Self {
        let states = FockBasis::fixed_number(n)
            .states
            .into_iter()
            .filter(|occ| projection(occ) == m)
            .collect();
        FockBasis::from_states(states)
    }

    pub fn states(&self) -> &[Occupation] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn position(&self, occ: &Occupation) -> Option<usize> {
        self.index.get(occ).copied()
    }

    /// Dense matrix of `expr` projected onto this basis.
    pub fn matrix(&self, expr: &BosonExpr) -> DMatrix<Complex64> {
        let words = expr.to_words();
        let mut m = DMatrix::from_element(self.len(), self.len(), ZERO);
        for (j, occ) in self.states.iter().enumerate() {
            for w in &words {
                if let Some((next, f)) = apply_ladders(&w.ladders, *occ) {
                    if let Some(i) = self.position(&next) {
                        m[(i, j)] += w.coef * f;
                    }
                }
            }
        }
        m
    }

    /// Dense matrix of an arbitrary (not normal-ordered) sum of words.
    pub fn word_matrix(&self, words: &[OperatorWord]) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(self.len(), self.len(), ZERO);
        for (j, occ) in self.states.iter().enumerate() {
            let image = FockState::basis(*occ);
            for w in words {
                for (next, amp) in image.apply_word(w).amplitudes() {
                    if let Some(i) = self.position(next) {
                        m[(i, j)] += amp;
                    }
                }
            }
        }
        m
    }

    pub fn vector(&self, state: &FockState) -> Vec<Complex64> {
        let mut v = vec![ZERO; self.len()];
        for (occ, amp) in state.amplitudes() {
            if let Some(i) = self.position(occ) {
                v[i] = *amp;
            }
        }
        v
    }
}

/// Total angular-momentum projection of an occupation vector.
pub fn projection(occ: &Occupation) -> i32 {
    Mode::all()
        .map(|m| m.projection() * i32::from(occ[m.index()]))
        .sum()
}

/// Word representation of a single ladder sequence, convenient for tests.
pub fn word(coef: f64, ladders: &[Ladder]) -> OperatorWord {
    OperatorWord::new(coef, ladders.to_vec())
}
