use serde::{Deserialize, Serialize};

/// L=0 state label: `n_d` d bosons with seniority `tau = 3 n_Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct L0State {
    pub nd: usize,
    pub tau: usize,
}

/// Seniority basis of the L=0 subspace of `N` s-d bosons.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct L0Basis {
    n: usize,
    states: Vec<L0State>,
}

/// Seniorities allowed in the L=0 subspace at fixed `n_d`.
pub fn seniorities(nd: usize) -> impl Iterator<Item = usize> {
    (0..=nd).step_by(3).filter(move |tau| (nd - tau) % 2 == 0)
}

/// Number of L=0 states of `N` bosons.
pub fn basis_dimension(n: usize) -> usize {
    (0..=n).map(|nd| seniorities(nd).count()).sum()
}

pub fn build_basis(n: usize) -> L0Basis {
    let states = (0..=n)
        .flat_map(|nd| seniorities(nd).map(move |tau| L0State { nd, tau }))
        .collect();
    L0Basis { n, states }
}

impl L0Basis {
    pub fn n_bosons(&self) -> usize {
        self.n
    }

    pub fn states(&self) -> &[L0State] {
        &self.states
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn position(&self, s: L0State) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        let dims: Vec<_> = (0..=6).map(basis_dimension).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 4, 5, 7]);
    }

    #[test]
    fn labels_sorted_and_valid() {
        let b = build_basis(12);
        assert!(b.states().windows(2).all(|w| w[0] < w[1]));
        for s in b.states() {
            assert!(s.tau % 3 == 0 && s.tau <= s.nd && (s.nd - s.tau) % 2 == 0);
        }
        assert_eq!(b.dimension(), basis_dimension(12));
    }
}
