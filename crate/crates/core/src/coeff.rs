//! Single-coefficient engines: Birkhoff enumeration and tuple brute force.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::birkhoff::enumerate_birkhoff;
use crate::comb::multinomial;
use crate::error::Result;
use crate::guard::Guards;
use crate::matrix::PsiElement;
use crate::perm::Permutation;

/// C_L without expanding the full power: sums
/// (∏ sign(σ)^{k_σ}) · multinomial(m, (k_σ)) over all decompositions of L
/// into m permutation matrices.
pub fn coefficient(l: &PsiElement) -> BigInt {
    let m = l.margin() as u64;
    let mut acc = BigInt::zero();
    for combo in enumerate_birkhoff(l) {
        let weight = multinomial(m, &combo.parts()).expect("multiplicities sum to the margin");
        if combo.sign_product() < 0 {
            acc -= weight;
        } else {
            acc += weight;
        }
    }
    acc
}

/// C_L by summing ∏ sign(σ_i) over all ordered m-tuples (σ_1,…,σ_m) with
/// Σ P_{σ_i} = L. Kept independent of [`coefficient`] as its oracle.
///
/// Refuses when (n!)^m exceeds the tuple ceiling.
pub fn coefficient_bruteforce(l: &PsiElement, guards: &Guards) -> Result<BigInt> {
    let n = l.order();
    let m = l.margin();
    guards.check_tuples(n, m)?;
    let perms = Permutation::all(n);
    let mut rem = l.matrix().entries().to_vec();
    let total = tuples_rec(&perms, n, &mut rem, m, 1);
    Ok(BigInt::from(total))
}

fn tuples_rec(perms: &[Permutation], n: usize, rem: &mut [u32], depth: u32, sign: i64) -> i64 {
    if depth == 0 {
        // margins of rem are zero here, so rem itself is zero
        return sign;
    }
    let mut acc = 0i64;
    'next: for sigma in perms {
        for i in 0..n {
            if rem[i * n + sigma.image(i)] == 0 {
                continue 'next;
            }
        }
        for i in 0..n {
            rem[i * n + sigma.image(i)] -= 1;
        }
        acc += tuples_rec(perms, n, rem, depth - 1, sign * sigma.sign() as i64);
        for i in 0..n {
            rem[i * n + sigma.image(i)] += 1;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExponentMatrix;

    fn psi(s: &str) -> PsiElement {
        PsiElement::infer(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn scaled_identity_is_one() {
        for (n, m) in [(2, 4), (3, 3), (4, 2), (5, 1)] {
            let l = PsiElement::new(ExponentMatrix::scaled_identity(n, m), m).unwrap();
            assert_eq!(coefficient(&l), BigInt::from(1));
        }
    }

    #[test]
    fn witness_core_vanishes() {
        // (a, b) = (1, 2), m = 5
        assert_eq!(coefficient(&psi("3,1,1;1,2,2;1,2,2")), BigInt::zero());
    }

    #[test]
    fn all_ones_order_two() {
        assert_eq!(coefficient(&psi("1,1;1,1")), BigInt::from(-2));
    }

    #[test]
    fn bruteforce_single_factor_is_sign() {
        let g = Guards::default();
        for sigma in Permutation::all(3) {
            let l = PsiElement::new(sigma.matrix(), 1).unwrap();
            assert_eq!(
                coefficient_bruteforce(&l, &g).unwrap(),
                BigInt::from(sigma.sign())
            );
        }
    }

    #[test]
    fn bruteforce_order_two_cube() {
        // 3 of the 2^3 tuples hit [[2,1],[1,2]], each with one swap factor
        let g = Guards::default();
        assert_eq!(
            coefficient_bruteforce(&psi("2,1;1,2"), &g).unwrap(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn bruteforce_all_ones_cube_vanishes() {
        let g = Guards::default();
        assert_eq!(
            coefficient_bruteforce(&psi("1,1,1;1,1,1;1,1,1"), &g).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn bruteforce_guard_refusal() {
        let tight = Guards {
            max_tuples: 100,
            ..Guards::default()
        };
        let l = PsiElement::new(ExponentMatrix::scaled_identity(3, 3), 3).unwrap();
        assert!(coefficient_bruteforce(&l, &tight).unwrap_err().is_guard());
    }

    #[test]
    fn engines_agree_on_small_supports() {
        let g = Guards::default();
        for (n, m) in [(2, 3), (3, 2)] {
            for l in crate::psi::enumerate_psi(n, m) {
                let fast = coefficient(&l);
                let brute = coefficient_bruteforce(&l, &g).unwrap();
                assert_eq!(fast, brute, "L = {}", l);
            }
        }
    }
}
