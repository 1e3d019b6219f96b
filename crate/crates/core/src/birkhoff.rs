//! Decompositions of a Ψ(m) element into m permutation matrices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{ExponentMatrix, PsiElement};
use crate::perm::Permutation;

/// A multiplicity assignment k_σ over S_n with Σ k_σ = m and
/// Σ k_σ P_σ equal to the target matrix.
///
/// Only nonzero multiplicities are stored; `multiplicity` reports 0 for the
/// rest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BirkhoffCombination {
    order: usize,
    total: u32,
    multiplicities: BTreeMap<Permutation, u32>,
}

impl BirkhoffCombination {
    /// Builds a combination from (σ, k_σ) pairs; zero multiplicities are
    /// dropped. Fails if the multiplicities do not sum to `total` or some
    /// permutation has the wrong order.
    pub fn from_multiplicities(
        order: usize,
        total: u32,
        pairs: impl IntoIterator<Item = (Permutation, u32)>,
    ) -> Result<Self> {
        let mut multiplicities = BTreeMap::new();
        for (sigma, k) in pairs {
            if sigma.order() != order {
                return Err(Error::InvalidPermutation(format!(
                    "order {} in a combination of order {}",
                    sigma.order(),
                    order
                )));
            }
            if k > 0 {
                multiplicities.insert(sigma, k);
            }
        }
        let sum: u64 = multiplicities.values().map(|&k| k as u64).sum();
        if sum != total as u64 {
            return Err(Error::PartsSum {
                found: sum,
                expected: total as u64,
            });
        }
        Ok(BirkhoffCombination {
            order,
            total,
            multiplicities,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The common margin m = Σ k_σ.
    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn multiplicity(&self, sigma: &Permutation) -> u32 {
        self.multiplicities.get(sigma).copied().unwrap_or(0)
    }

    /// Nonzero (σ, k_σ) pairs in lexicographic order of σ.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, u32)> {
        self.multiplicities.iter().map(|(p, &k)| (p, k))
    }

    /// Σ k_σ P_σ.
    pub fn reconstruct(&self) -> ExponentMatrix {
        let n = self.order;
        let mut out = ExponentMatrix::zero(n);
        for (sigma, k) in self.iter() {
            for i in 0..n {
                let j = sigma.image(i);
                out.set(i, j, out.get(i, j) + k);
            }
        }
        out
    }

    /// ∏ sign(σ)^{k_σ}, i.e. (-1) to the total multiplicity on odd σ.
    pub fn sign_product(&self) -> i32 {
        let odd: u32 = self
            .iter()
            .filter(|(sigma, _)| sigma.sign() < 0)
            .map(|(_, k)| k)
            .sum();
        if odd.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The nonzero multiplicities, for multinomial weights.
    pub fn parts(&self) -> Vec<u64> {
        self.multiplicities.values().map(|&k| k as u64).collect()
    }
}

/// Lazily yields every decomposition of L as Σ k_σ P_σ with Σ k_σ = m,
/// each exactly once.
///
/// Permutations are visited in lexicographic order of their image sequences
/// and multiplicities ascend from 0, so the stream order is the ascending
/// lexicographic order of the full multiplicity vector. Branches are pruned
/// when a remaining entry exceeds the remaining multiplicity budget or can no
/// longer be covered by any unvisited permutation.
pub fn enumerate_birkhoff(l: &PsiElement) -> BirkhoffIter {
    let n = l.order();
    let perms = Permutation::all(n);
    let mut last_cover = vec![0usize; n * n];
    for (idx, sigma) in perms.iter().enumerate() {
        for i in 0..n {
            last_cover[i * n + sigma.image(i)] = idx;
        }
    }
    BirkhoffIter {
        n,
        total: l.margin(),
        ks: vec![0; perms.len()],
        perms,
        last_cover,
        rem: l.matrix().entries().to_vec(),
        r: l.margin(),
        depth: 0,
        try_from: 0,
        descending: true,
        done: false,
    }
}

pub struct BirkhoffIter {
    n: usize,
    total: u32,
    perms: Vec<Permutation>,
    last_cover: Vec<usize>,
    ks: Vec<u32>,
    rem: Vec<u32>,
    r: u32,
    depth: usize,
    try_from: u32,
    descending: bool,
    done: bool,
}

impl BirkhoffIter {
    fn place(&mut self, idx: usize, k: u32) {
        let n = self.n;
        for i in 0..n {
            self.rem[i * n + self.perms[idx].image(i)] -= k;
        }
        self.r -= k;
        self.ks[idx] = k;
    }

    fn unplace(&mut self, idx: usize) -> u32 {
        let n = self.n;
        let k = self.ks[idx];
        for i in 0..n {
            self.rem[i * n + self.perms[idx].image(i)] += k;
        }
        self.r += k;
        self.ks[idx] = 0;
        k
    }

    fn max_feasible(&self, idx: usize) -> u32 {
        let n = self.n;
        let mut k = self.r;
        for i in 0..n {
            k = k.min(self.rem[i * n + self.perms[idx].image(i)]);
        }
        k
    }

    /// Can the state still be completed using permutations `next_idx..`?
    fn prune_ok(&self, next_idx: usize) -> bool {
        if self.r == 0 {
            return true;
        }
        if next_idx >= self.perms.len() {
            return false;
        }
        for (cell, &v) in self.rem.iter().enumerate() {
            if v > 0 && (v > self.r || self.last_cover[cell] < next_idx) {
                return false;
            }
        }
        true
    }

    fn snapshot(&self) -> BirkhoffCombination {
        let multiplicities: BTreeMap<Permutation, u32> = self
            .ks
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k > 0)
            .map(|(idx, &k)| (self.perms[idx].clone(), k))
            .collect();
        BirkhoffCombination {
            order: self.n,
            total: self.total,
            multiplicities,
        }
    }
}

impl Iterator for BirkhoffIter {
    type Item = BirkhoffCombination;

    fn next(&mut self) -> Option<BirkhoffCombination> {
        if self.done {
            return None;
        }
        loop {
            if self.descending {
                if self.depth == self.perms.len() {
                    debug_assert_eq!(self.r, 0);
                    self.descending = false;
                    return Some(self.snapshot());
                }
                let kmax = self.max_feasible(self.depth);
                let mut k = self.try_from;
                let mut placed = false;
                while k <= kmax {
                    self.place(self.depth, k);
                    if self.prune_ok(self.depth + 1) {
                        self.depth += 1;
                        self.try_from = 0;
                        placed = true;
                        break;
                    }
                    self.unplace(self.depth);
                    k += 1;
                }
                if !placed {
                    self.descending = false;
                }
            } else {
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                let k = self.unplace(self.depth);
                self.try_from = k + 1;
                self.descending = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::enumerate_psi;

    fn psi(s: &str) -> PsiElement {
        PsiElement::infer(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn scaled_identity_has_unique_decomposition() {
        for (n, m) in [(2, 3), (3, 4), (4, 2)] {
            let l = PsiElement::new(ExponentMatrix::scaled_identity(n, m), m).unwrap();
            let combos: Vec<_> = enumerate_birkhoff(&l).collect();
            assert_eq!(combos.len(), 1);
            assert_eq!(combos[0].multiplicity(&Permutation::identity(n)), m);
            assert_eq!(combos[0].parts(), vec![m as u64]);
        }
    }

    #[test]
    fn all_ones_order_two() {
        let combos: Vec<_> = enumerate_birkhoff(&psi("1,1;1,1")).collect();
        assert_eq!(combos.len(), 1);
        let id = Permutation::identity(2);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(combos[0].multiplicity(&id), 1);
        assert_eq!(combos[0].multiplicity(&swap), 1);
    }

    #[test]
    fn witness_core_has_exactly_two_decompositions() {
        // core 3×3 witness blocks for (a, b) = (1, 1), (1, 2), (2, 3)
        for (a, b) in [(1u32, 1u32), (1, 2), (2, 3)] {
            let m = (a + 1) * (b + 1) - 1;
            let l = crate::witness::build_witness(
                3,
                m,
                crate::witness::FactorPair::new(m, a, b).unwrap(),
            )
            .unwrap();
            let combos: Vec<_> = enumerate_birkhoff(&l).collect();
            assert_eq!(combos.len(), 2, "a={} b={}", a, b);

            let id = Permutation::identity(3);
            let rot_fwd = Permutation::new(vec![1, 2, 0]).unwrap(); // (2,3,1)
            let rot_back = Permutation::new(vec![2, 0, 1]).unwrap(); // (3,1,2)
            let swap01 = Permutation::new(vec![1, 0, 2]).unwrap(); // (2,1,3)
            let swap12 = Permutation::new(vec![0, 2, 1]).unwrap(); // (1,3,2)
            let rev = Permutation::new(vec![2, 1, 0]).unwrap(); // (3,2,1)

            let first = BirkhoffCombination::from_multiplicities(
                3,
                m,
                [
                    (id.clone(), a * b - 1),
                    (swap01.clone(), a),
                    (swap12.clone(), b),
                    (rev.clone(), 1),
                ],
            )
            .unwrap();
            let second = BirkhoffCombination::from_multiplicities(
                3,
                m,
                [
                    (id, a * b),
                    (rot_fwd, 1),
                    (rot_back, 1),
                    (swap01, a - 1),
                    (swap12, b - 1),
                ],
            )
            .unwrap();
            assert_eq!(combos[0], first);
            assert_eq!(combos[1], second);
        }
    }

    #[test]
    fn reconstruction_invariant() {
        for l in enumerate_psi(3, 3) {
            let mut count = 0;
            for combo in enumerate_birkhoff(&l) {
                assert_eq!(&combo.reconstruct(), l.matrix());
                assert_eq!(
                    combo.parts().iter().sum::<u64>(),
                    l.margin() as u64,
                    "multiplicities must sum to the margin"
                );
                count += 1;
            }
            assert!(count >= 1, "Ψ elements always decompose");
        }
    }

    #[test]
    fn deterministic_stream() {
        let l = psi("2,1,1;1,2,1;1,1,2");
        let first: Vec<_> = enumerate_birkhoff(&l).collect();
        let second: Vec<_> = enumerate_birkhoff(&l).collect();
        assert_eq!(first, second);
    }

    #[test]
    fn from_multiplicities_validates() {
        let id = Permutation::identity(2);
        assert!(BirkhoffCombination::from_multiplicities(2, 3, [(id.clone(), 2)]).is_err());
        assert!(BirkhoffCombination::from_multiplicities(3, 2, [(id, 2)]).is_err());
    }
}
