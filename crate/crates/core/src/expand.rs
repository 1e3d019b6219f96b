//! Full expansion of (det X)^m by m-fold sparse multiplication.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::guard::Guards;
use crate::matrix::{ExponentMatrix, PsiElement};
use crate::perm::Permutation;

/// All nonzero coefficients C_L of (det X)^m, keyed by exponent matrix.
///
/// Zero coefficients are represented by absence: `get` returns 0 for any
/// matrix outside the stored support. Iteration is in ascending row-major
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct DetPowerExpansion {
    n: usize,
    m: u32,
    coefficients: BTreeMap<ExponentMatrix, BigInt>,
}

impl DetPowerExpansion {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn power(&self) -> u32 {
        self.m
    }

    /// C_L, zero when L is outside the support.
    pub fn get(&self, l: &ExponentMatrix) -> BigInt {
        self.coefficients
            .get(l)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn contains(&self, l: &ExponentMatrix) -> bool {
        self.coefficients.contains_key(l)
    }

    /// Number of monomials with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentMatrix, &BigInt)> {
        self.coefficients.iter()
    }

    /// Σ C_L over the support; equals 0 for n ≥ 2 since det vanishes at the
    /// all-ones substitution.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coefficients.values().sum()
    }

    /// The stored keys as certified Ψ(m) members.
    pub fn psi_entries(&self) -> impl Iterator<Item = (PsiElement, &BigInt)> {
        self.coefficients
            .iter()
            .map(|(l, c)| (PsiElement::new_unchecked(l.clone(), self.m), c))
    }
}

/// Expands (det X)^m, returning every nonzero C_L.
///
/// det X is the signed sum of the n! permutation monomials; the power is
/// built by m successive sparse multiplications, combining like terms and
/// dropping cancellations as they appear. Refuses when the support estimate
/// exceeds the monomial ceiling.
pub fn expand_det_power(n: usize, m: u32, guards: &Guards) -> Result<DetPowerExpansion> {
    guards.check_psi_scale(n, m, "determinant power expansion")?;
    let perms = Permutation::all(n);
    let sigmas: Vec<(Vec<usize>, i32)> = perms
        .iter()
        .map(|p| (p.images().to_vec(), p.sign()))
        .collect();

    let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
    acc.insert(vec![0; n * n], BigInt::from(1));
    for _ in 0..m {
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(acc.len() * 2);
        for (exp, coef) in &acc {
            for (images, sign) in &sigmas {
                let mut e = exp.clone();
                for (i, &j) in images.iter().enumerate() {
                    e[i * n + j] += 1;
                }
                let slot = next.entry(e).or_insert_with(BigInt::zero);
                if *sign > 0 {
                    *slot += coef;
                } else {
                    *slot -= coef;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }

    let coefficients: BTreeMap<ExponentMatrix, BigInt> = acc
        .into_iter()
        .map(|(e, c)| (ExponentMatrix::from_vec_unchecked(n, e), c))
        .collect();
    Ok(DetPowerExpansion { n, m, coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(n: usize, m: u32) -> DetPowerExpansion {
        expand_det_power(n, m, &Guards::default()).unwrap()
    }

    #[test]
    fn determinant_itself() {
        let e = expand(2, 1);
        assert_eq!(e.support_len(), 2);
        assert_eq!(e.get(&"1,0;0,1".parse().unwrap()), BigInt::from(1));
        assert_eq!(e.get(&"0,1;1,0".parse().unwrap()), BigInt::from(-1));
    }

    #[test]
    fn order_two_square() {
        // (x11 x22 - x12 x21)^2 by hand
        let e = expand(2, 2);
        assert_eq!(e.support_len(), 3);
        assert_eq!(e.get(&"2,0;0,2".parse().unwrap()), BigInt::from(1));
        assert_eq!(e.get(&"1,1;1,1".parse().unwrap()), BigInt::from(-2));
        assert_eq!(e.get(&"0,2;2,0".parse().unwrap()), BigInt::from(1));
    }

    #[test]
    fn all_ones_cube_coefficient_vanishes() {
        let e = expand(3, 3);
        assert!(!e.contains(&ExponentMatrix::ones(3)));
        assert_eq!(e.get(&ExponentMatrix::ones(3)), BigInt::zero());
    }

    #[test]
    fn zeroth_power_is_one() {
        let e = expand(3, 0);
        assert_eq!(e.support_len(), 1);
        assert_eq!(e.get(&ExponentMatrix::zero(3)), BigInt::from(1));
    }

    #[test]
    fn coefficient_sum_vanishes_for_n_at_least_two() {
        for (n, m) in [(2, 1), (2, 4), (3, 2), (3, 3), (4, 2)] {
            let e = expand(n, m);
            assert_eq!(e.coefficient_sum(), BigInt::zero(), "n={} m={}", n, m);
        }
    }

    #[test]
    fn scaled_identity_coefficient_is_one() {
        for (n, m) in [(2, 3), (3, 3), (4, 2)] {
            let e = expand(n, m);
            assert_eq!(
                e.get(&ExponentMatrix::scaled_identity(n, m)),
                BigInt::from(1)
            );
        }
    }

    #[test]
    fn transpose_symmetry() {
        let e = expand(3, 3);
        for (l, c) in e.iter() {
            assert_eq!(&e.get(&l.transpose()), c);
        }
    }

    #[test]
    fn guard_refusal() {
        let guards = Guards {
            max_monomials: 5,
            ..Guards::default()
        };
        assert!(expand_det_power(3, 3, &guards).unwrap_err().is_guard());
    }
}
