use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Number of single-boson modes: `s` plus the five `d_μ`.
pub const N_MODES: usize = 6;

/// A single-boson mode. Index 0 is `s`, indices 1..=5 are `d_{-2}..d_{+2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode(u8);

impl Mode {
    pub const S: Mode = Mode(0);

    /// The `d_μ` mode for projection `mu ∈ [-2, 2]`.
    pub fn d(mu: i32) -> Mode {
        assert!((-2..=2).contains(&mu), "d-boson projection {mu} out of range");
        Mode((mu + 3) as u8)
    }

    pub fn from_index(index: usize) -> Mode {
        assert!(index < N_MODES, "mode index {index} out of range");
        Mode(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_s(self) -> bool {
        self.0 == 0
    }

    /// Angular-momentum projection carried by one quantum of this mode.
    pub fn projection(self) -> i32 {
        if self.is_s() {
            0
        } else {
            self.0 as i32 - 3
        }
    }

    pub fn all() -> impl Iterator<Item = Mode> {
        (0..N_MODES as u8).map(Mode)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_s() {
            write!(f, "s")
        } else {
            write!(f, "d{}", self.projection())
        }
    }
}

/// One creation (`dagger = true`) or annihilation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ladder {
    pub mode: Mode,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(mode: Mode) -> Self {
        Ladder { mode, dagger: true }
    }

    pub fn annihilate(mode: Mode) -> Self {
        Ladder { mode, dagger: false }
    }
}

/// A coefficient times an arbitrary (not necessarily normal-ordered) product of ladder operators.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorWord {
    pub coef: Complex64,
    pub ladders: Vec<Ladder>,
}

impl OperatorWord {
    pub fn new(coef: impl Into<Complex64>, ladders: Vec<Ladder>) -> Self {
        OperatorWord {
            coef: coef.into(),
            ladders,
        }
    }
}

/// Normal-ordered monomial: all creators to the left of all annihilators.
///
/// Operators of the same kind commute, so both lists are kept sorted; this makes
/// the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    creators: Vec<Mode>,
    annihilators: Vec<Mode>,
}

impl Monomial {
    pub fn new(mut creators: Vec<Mode>, mut annihilators: Vec<Mode>) -> Self {
        creators.sort_unstable();
        annihilators.sort_unstable();
        Monomial {
            creators,
            annihilators,
        }
    }

    pub fn identity() -> Self {
        Monomial::default()
    }

    pub fn creators(&self) -> &[Mode] {
        &self.creators
    }

    pub fn annihilators(&self) -> &[Mode] {
        &self.annihilators
    }

    /// Total number of ladder operators.
    pub fn order(&self) -> usize {
        self.creators.len() + self.annihilators.len()
    }

    pub fn conserves_number(&self) -> bool {
        self.creators.len() == self.annihilators.len()
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial {
            creators: self.annihilators.clone(),
            annihilators: self.creators.clone(),
        }
    }

    pub fn ladders(&self) -> Vec<Ladder> {
        self.creators
            .iter()
            .map(|&m| Ladder::create(m))
            .chain(self.annihilators.iter().map(|&m| Ladder::annihilate(m)))
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in &self.creators {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{m}+")?;
            first = false;
        }
        for m in &self.annihilators {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial in boson ladder operators, stored as normal-ordered monomials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BosonExpr {
    terms: BTreeMap<Monomial, Complex64>,
}

impl BosonExpr {
    pub fn zero() -> Self {
        BosonExpr::default()
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        BosonExpr::term(c, Monomial::identity())
    }

    pub fn identity() -> Self {
        BosonExpr::constant(1.0)
    }

    pub fn term(c: impl Into<Complex64>, monomial: Monomial) -> Self {
        let mut e = BosonExpr::zero();
        e.add_term(c.into(), monomial);
        e
    }

    pub fn creation(mode: Mode) -> Self {
        BosonExpr::term(1.0, Monomial::new(vec![mode], vec![]))
    }

    pub fn annihilation(mode: Mode) -> Self {
        BosonExpr::term(1.0, Monomial::new(vec![], vec![mode]))
    }

    /// Number operator `b†b` of one mode.
    pub fn number(mode: Mode) -> Self {
        BosonExpr::term(1.0, Monomial::new(vec![mode], vec![mode]))
    }

    /// Normal-ordered form of a single operator word.
    pub fn from_word(word: &OperatorWord) -> Self {
        let mut out = BosonExpr::zero();
        expand_word(word.coef, word.ladders.clone(), &mut out);
        out
    }

    fn add_term(&mut self, c: Complex64, monomial: Monomial) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == Complex64::new(0.0, 0.0) {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Complex64 {
        self.terms
            .get(monomial)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = BosonExpr::zero();
        for (m, v) in &self.terms {
            out.add_term(v * c, m.clone());
        }
        out
    }

    /// Formal Hermitian adjoint.
    pub fn adjoint(&self) -> Self {
        let mut out = BosonExpr::zero();
        for (m, v) in &self.terms {
            out.add_term(v.conj(), m.adjoint());
        }
        out
    }

    /// Drops terms whose coefficient magnitude is below `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        BosonExpr {
            terms: self
                .terms
                .iter()
                .filter(|(_, v)| v.norm() > tol)
                .map(|(m, v)| (m.clone(), *v))
                .collect(),
        }
    }

    pub fn approx_eq(&self, other: &BosonExpr, tol: f64) -> bool {
        let diff = self - other;
        diff.terms.values().all(|v| v.norm() <= tol)
    }

    pub fn max_order(&self) -> usize {
        self.terms.keys().map(Monomial::order).max().unwrap_or(0)
    }

    pub fn is_number_conserving(&self) -> bool {
        self.terms.keys().all(Monomial::conserves_number)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    /// Returns the expression unchanged if it conserves boson number, otherwise a domain error.
    pub fn require_number_conserving(self) -> Result<Self> {
        if let Some((m, _)) = self.terms.iter().find(|(m, _)| !m.conserves_number()) {
            return Err(Error::Domain(format!(
                "monomial `{m}` does not conserve boson number"
            )));
        }
        Ok(self)
    }

    pub fn require_hermitian(self, tol: f64) -> Result<Self> {
        if !self.is_hermitian(tol) {
            return Err(Error::Domain("expression is not Hermitian".into()));
        }
        Ok(self)
    }

    /// Back to operator words (already normal ordered).
    pub fn to_words(&self) -> Vec<OperatorWord> {
        self.terms
            .iter()
            .map(|(m, v)| OperatorWord::new(*v, m.ladders()))
            .collect()
    }
}

/// Normal-orders an arbitrary sum of operator words, expanding every
/// `[b_k, b_l†] = δ_kl` commutator.
pub fn normal_order(words: &[OperatorWord]) -> BosonExpr {
    let mut out = BosonExpr::zero();
    for w in words {
        expand_word(w.coef, w.ladders.clone(), &mut out);
    }
    out
}

fn expand_word(coef: Complex64, mut word: Vec<Ladder>, out: &mut BosonExpr) {
    if coef == Complex64::new(0.0, 0.0) {
        return;
    }
    // bubble the leftmost creator that sits right of an annihilator
    loop {
        let swap_at = word
            .windows(2)
            .position(|pair| !pair[0].dagger && pair[1].dagger);
        let Some(i) = swap_at else { break };
        if word[i].mode == word[i + 1].mode {
            let mut contracted = word.clone();
            contracted.drain(i..i + 2);
            expand_word(coef, contracted, out);
        }
        word.swap(i, i + 1);
    }
    let creators = word.iter().filter(|l| l.dagger).map(|l| l.mode).collect();
    let annihilators = word.iter().filter(|l| !l.dagger).map(|l| l.mode).collect();
    out.add_term(coef, Monomial::new(creators, annihilators));
}

impl Add<&BosonExpr> for &BosonExpr {
    type Output = BosonExpr;
    fn add(self, rhs: &BosonExpr) -> BosonExpr {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*v, m.clone());
        }
        out
    }
}

impl Add for BosonExpr {
    type Output = BosonExpr;
    fn add(self, rhs: BosonExpr) -> BosonExpr {
        &self + &rhs
    }
}

impl Sub<&BosonExpr> for &BosonExpr {
    type Output = BosonExpr;
    fn sub(self, rhs: &BosonExpr) -> BosonExpr {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(-*v, m.clone());
        }
        out
    }
}

impl Sub for BosonExpr {
    type Output = BosonExpr;
    fn sub(self, rhs: BosonExpr) -> BosonExpr {
        &self - &rhs
    }
}

impl Neg for BosonExpr {
    type Output = BosonExpr;
    fn neg(self) -> BosonExpr {
        self.scale(-1.0)
    }
}

impl Mul<&BosonExpr> for &BosonExpr {
    type Output = BosonExpr;
    fn mul(self, rhs: &BosonExpr) -> BosonExpr {
        let mut out = BosonExpr::zero();
        for (ml, vl) in &self.terms {
            for (mr, vr) in &rhs.terms {
                let mut word = ml.ladders();
                word.extend(mr.ladders());
                expand_word(vl * vr, word, &mut out);
            }
        }
        out
    }
}

impl Mul for BosonExpr {
    type Output = BosonExpr;
    fn mul(self, rhs: BosonExpr) -> BosonExpr {
        &self * &rhs
    }
}

impl fmt::Display for BosonExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if v.im == 0.0 {
                write!(f, "{} * {m}", v.re)?;
            } else {
                write!(f, "({}) * {m}", v)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(coef: f64, ladders: &[(Mode, bool)]) -> OperatorWord {
        OperatorWord::new(
            coef,
            ladders
                .iter()
                .map(|&(mode, dagger)| Ladder { mode, dagger })
                .collect(),
        )
    }

    #[test]
    fn single_commutator() {
        let e = normal_order(&[word(1.0, &[(Mode::S, false), (Mode::S, true)])]);
        let expected = BosonExpr::number(Mode::S) + BosonExpr::identity();
        assert_eq!(e, expected);
    }

    #[test]
    fn normal_ordered_input_is_unchanged() {
        let w = word(2.5, &[(Mode::d(2), true), (Mode::S, true), (Mode::d(0), false)]);
        let e = normal_order(&[w]);
        let m = Monomial::new(vec![Mode::d(2), Mode::S], vec![Mode::d(0)]);
        assert_eq!(e, BosonExpr::term(2.5, m));
    }

    #[test]
    fn quartic_d0_word() {
        let d0 = Mode::d(0);
        let e = normal_order(&[word(1.0, &[(d0, false), (d0, true), (d0, false), (d0, true)])]);
        let expected = BosonExpr::term(1.0, Monomial::new(vec![d0, d0], vec![d0, d0]))
            + BosonExpr::term(3.0, Monomial::new(vec![d0], vec![d0]))
            + BosonExpr::identity();
        assert_eq!(e, expected);
    }

    #[test]
    fn product_matches_word_concatenation() {
        let a = BosonExpr::annihilation(Mode::d(1));
        let b = BosonExpr::creation(Mode::d(1));
        assert_eq!(&a * &b, BosonExpr::number(Mode::d(1)) + BosonExpr::identity());
        assert_eq!(&b * &a, BosonExpr::number(Mode::d(1)));
    }

    #[test]
    fn adjoint_and_flags() {
        let hop = BosonExpr::term(
            Complex64::new(0.0, 1.0),
            Monomial::new(vec![Mode::S], vec![Mode::d(0)]),
        );
        let herm = &hop + &hop.adjoint();
        assert!(herm.is_hermitian(1e-14));
        assert!(!hop.is_hermitian(1e-14));
        assert!(herm.is_number_conserving());
        assert!(BosonExpr::creation(Mode::S)
            .require_number_conserving()
            .is_err());
    }

    #[test]
    fn display_is_readable() {
        let e = BosonExpr::term(2.0, Monomial::new(vec![Mode::S], vec![Mode::d(-2)]));
        assert_eq!(e.to_string(), "2 * s+ d-2");
    }
}
