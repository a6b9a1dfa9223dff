//! Numerical construction of the L=0 seniority states of the d bosons.
//!
//! States live in the `M = 0` occupation space of the five d modes. With the pair
//! creator `P† = d†·d†` and the cubic scalar `V† = [d†d†]^{(2)}·d†`,
//!
//! * `|n, τ⟩ ∝ P†|n−2, τ⟩` for `n > τ`,
//! * `|τ, τ⟩ ∝ V†|τ−3, τ−3⟩` orthogonalized against all lower-seniority states at `n = τ`.
//!
//! The only matrix elements of the s-d Hamiltonians not known in closed form are those
//! of the scalar `Y = Σ_μ d†_μ ([d†d†]^{(2)}_μ)†`, which lowers `n_d` by one and changes
//! `τ` by ±3. They do not depend on the total boson number and are tabulated here.

use std::collections::VecDeque;
use std::fs;
use std::path::Path;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::basis::seniorities;
use crate::boson_algebra::{couple, dot, BosonExpr, TensorOp};
use crate::error::{Error, Result};

type DOcc = [u16; 5];

/// A normal-ordered d-boson monomial with mode indices `μ + 2`.
#[derive(Clone, Debug)]
struct DTerm {
    coef: f64,
    create: Vec<usize>,
    annihilate: Vec<usize>,
}

fn d_terms(expr: &BosonExpr) -> Vec<DTerm> {
    expr.terms()
        .map(|(m, c)| {
            debug_assert!(c.im.abs() < 1e-14);
            let idx = |k: &crate::boson_algebra::Mode| {
                assert!(!k.is_s(), "d-space operator contains an s boson");
                k.index() - 1
            };
            DTerm {
                coef: c.re,
                create: m.creators().iter().map(idx).collect(),
                annihilate: m.annihilators().iter().map(idx).collect(),
            }
        })
        .collect()
}

/// Occupation vectors of `n` d bosons with `M = 0`, with dense lookup.
struct Level {
    n: usize,
    occs: Vec<DOcc>,
    index: Vec<u32>,
}

impl Level {
    fn new(n: usize) -> Level {
        let side = n + 1;
        let mut occs = Vec::new();
        let mut index = vec![u32::MAX; side * side * side];
        for a in 0..=n {
            for b in 0..=(n - a) {
                for c in 0..=(n - a - b) {
                    // M = -2a - b + c + 2 n₂ = 0
                    let twice = 2 * a + b;
                    if twice < c || (twice - c) % 2 != 0 {
                        continue;
                    }
                    let n2 = (twice - c) / 2;
                    if a + b + c + n2 > n {
                        continue;
                    }
                    let n0 = n - a - b - c - n2;
                    index[(a * side + b) * side + c] = occs.len() as u32;
                    occs.push([a as u16, b as u16, n0 as u16, c as u16, n2 as u16]);
                }
            }
        }
        Level { n, occs, index }
    }

    fn lookup(&self, occ: &DOcc) -> Option<usize> {
        let side = self.n + 1;
        let (a, b, c) = (occ[0] as usize, occ[1] as usize, occ[3] as usize);
        if a > self.n || b > self.n || c > self.n {
            return None;
        }
        let k = self.index[(a * side + b) * side + c];
        (k != u32::MAX).then_some(k as usize)
    }

    fn len(&self) -> usize {
        self.occs.len()
    }
}

fn apply(terms: &[DTerm], from: &Level, v: &[f64], to: &Level) -> Vec<f64> {
    let mut out = vec![0.0; to.len()];
    for (i, &amp) in v.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        'term: for t in terms {
            let mut occ = from.occs[i];
            let mut f = t.coef * amp;
            for &k in &t.annihilate {
                if occ[k] == 0 {
                    continue 'term;
                }
                f *= f64::from(occ[k]).sqrt();
                occ[k] -= 1;
            }
            for &k in &t.create {
                occ[k] += 1;
                f *= f64::from(occ[k]).sqrt();
            }
            if let Some(j) = to.lookup(&occ) {
                out[j] += f;
            }
        }
    }
    out
}

fn dotv(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dotv(v, v).sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    n
}

struct Operators {
    pair: Vec<DTerm>,
    cubic: Vec<DTerm>,
    y: Vec<DTerm>,
}

fn operators() -> Operators {
    let d = TensorOp::d_dagger();
    let q = couple(&d, &d, 2).expect("2 ⊗ 2 → 2");
    let pair = dot(&d, &d).expect("equal ranks");
    let cubic = dot(&q, &d).expect("equal ranks");
    let y = dot(&d, &q.conjugate()).expect("equal ranks");
    Operators {
        pair: d_terms(&pair),
        cubic: d_terms(&cubic),
        y: d_terms(&y),
    }
}

/// One nonzero `⟨n−1, tau_to| Y |n, tau⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct YEntry {
    pub tau: usize,
    pub tau_to: usize,
    pub value: f64,
}

/// `⟨n−1, τ'|Y|n, τ⟩` for all `n ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YTable {
    n_max: usize,
    /// `entries[n]` lists the elements leaving `n_d = n`.
    entries: Vec<Vec<YEntry>>,
}

/// Built seniority states at one `n_d`, kept while building the table.
struct LevelStates {
    level: Level,
    states: Vec<(usize, Vec<f64>)>,
}

impl LevelStates {
    fn state(&self, tau: usize) -> &[f64] {
        &self
            .states
            .iter()
            .find(|(t, _)| *t == tau)
            .expect("seniority present")
            .1
    }
}

impl YTable {
    pub fn compute(n_max: usize) -> YTable {
        let ops = operators();
        let mut window: VecDeque<LevelStates> = VecDeque::new();
        let mut entries = vec![Vec::new()];
        window.push_back(LevelStates {
            level: Level::new(0),
            states: vec![(0, vec![1.0])],
        });
        for n in 1..=n_max {
            let level = Level::new(n);
            let mut states: Vec<(usize, Vec<f64>)> = Vec::new();
            for tau in seniorities(n) {
                if tau < n {
                    let prev = &window[window.len() - 2];
                    let mut v = apply(&ops.pair, &prev.level, prev.state(tau), &level);
                    normalize(&mut v);
                    states.push((tau, v));
                } else {
                    let prev = &window[window.len() - 3];
                    let mut v = apply(&ops.cubic, &prev.level, prev.state(tau - 3), &level);
                    for _ in 0..2 {
                        for (_, u) in &states {
                            let c = dotv(u, &v);
                            v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
                        }
                    }
                    normalize(&mut v);
                    states.push((tau, v));
                }
            }
            let below = window.back().expect("previous level");
            let mut row = Vec::new();
            for (tau, psi) in &states {
                let y_psi = apply(&ops.y, &level, psi, &below.level);
                for (tau_to, phi) in &below.states {
                    if tau_to + 3 == *tau || *tau_to == tau + 3 {
                        row.push(YEntry {
                            tau: *tau,
                            tau_to: *tau_to,
                            value: dotv(phi, &y_psi),
                        });
                    }
                }
            }
            entries.push(row);
            window.push_back(LevelStates { level, states });
            if window.len() > 3 {
                window.pop_front();
            }
        }
        YTable { n_max, entries }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Elements leaving `n_d = n`.
    pub fn row(&self, n: usize) -> &[YEntry] {
        &self.entries[n]
    }

    pub fn get(&self, n: usize, tau: usize, tau_to: usize) -> f64 {
        self.entries
            .get(n)
            .and_then(|r| r.iter().find(|e| e.tau == tau && e.tau_to == tau_to))
            .map_or(0.0, |e| e.value)
    }

    /// Reads a cached table covering at least `n_max`, or computes and writes one.
    pub fn load_or_compute(path: &Path, n_max: usize) -> Result<YTable> {
        if let Ok(text) = fs::read_to_string(path) {
            let table: YTable = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            if table.n_max >= n_max && table.entries.len() == table.n_max + 1 {
                return Ok(table);
            }
        }
        let table = YTable::compute(n_max);
        fs::write(path, serde_json::to_string(&table)?)?;
        Ok(table)
    }
}

static CACHE: Mutex<Option<Arc<YTable>>> = Mutex::new(None);

/// Process-wide table covering at least `n_max`.
pub fn y_table(n_max: usize) -> Arc<YTable> {
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    match guard.as_ref() {
        Some(t) if t.n_max >= n_max => Arc::clone(t),
        _ => {
            let t = Arc::new(YTable::compute(n_max.max(8)));
            *guard = Some(Arc::clone(&t));
            t
        }
    }
}
