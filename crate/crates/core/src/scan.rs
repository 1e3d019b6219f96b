//! Whole-support scans: Glynn congruence verification and zero detection.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coeff::coefficient;
use crate::comb::matrix_factorial;
use crate::error::{Error, Result};
use crate::expand::expand_det_power;
use crate::guard::Guards;
use crate::matrix::PsiElement;
use crate::psi::enumerate_psi;

/// Block size for partitioning scan work across threads. Results are merged
/// in block order, so the output is independent of the thread count.
const SCAN_BLOCK: usize = 1024;

/// One element failing a Glynn scan clause.
#[derive(Clone, Debug)]
pub struct GlynnViolation {
    pub element: PsiElement,
    pub coefficient: BigInt,
    /// L!·C_L mod p.
    pub residue: u64,
}

/// Result of scanning all of Ψ(p-1).
#[derive(Clone, Debug)]
pub struct GlynnReport {
    pub n: usize,
    pub p: u32,
    pub total: u64,
    /// (-1)^n reduced mod p.
    pub expected_residue: u64,
    pub violations: Vec<GlynnViolation>,
    pub elapsed: Duration,
}

impl GlynnReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans every L ∈ Ψ(p-1), checking C_L ≠ 0 and L!·C_L ≡ (-1)^n (mod p).
///
/// p must be prime; within the scan ceiling. Distinct elements are checked
/// in parallel, merged deterministically.
pub fn glynn_scan(n: usize, p: u32, guards: &Guards) -> Result<GlynnReport> {
    if !crate::witness::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let m = p - 1;
    guards.check_psi_scale(n, m, "Glynn scan")?;
    let expected_residue = if n.is_multiple_of(2) {
        1 % p as u64
    } else {
        (p - 1) as u64
    };

    let start = Instant::now();
    let mut total = 0u64;
    let mut violations = Vec::new();
    let mut stream = enumerate_psi(n, m);
    loop {
        let block: Vec<PsiElement> = stream.by_ref().take(SCAN_BLOCK).collect();
        if block.is_empty() {
            break;
        }
        total += block.len() as u64;
        let found: Vec<GlynnViolation> = block
            .into_par_iter()
            .filter_map(|l| check_element(l, p, expected_residue))
            .collect();
        violations.extend(found);
    }
    Ok(GlynnReport {
        n,
        p,
        total,
        expected_residue,
        violations,
        elapsed: start.elapsed(),
    })
}

fn check_element(l: PsiElement, p: u32, expected: u64) -> Option<GlynnViolation> {
    let c = coefficient(&l);
    let residue = residue_mod(&(matrix_factorial(l.matrix()) * &c), p);
    if c.is_zero() || residue != expected {
        Some(GlynnViolation {
            element: l,
            coefficient: c,
            residue,
        })
    } else {
        None
    }
}

/// Nonnegative remainder of v modulo p.
pub fn residue_mod(v: &BigInt, p: u32) -> u64 {
    let p = BigInt::from(p);
    let mut r = v % &p;
    if r.is_negative() {
        r += &p;
    }
    r.to_u64().expect("residue fits in u64")
}

/// All L ∈ Ψ(m) with C_L = 0, in ascending row-major lexicographic order.
///
/// Computes the full expansion once, then walks Ψ(m) and reports the
/// elements absent from the support.
pub fn find_zeros(n: usize, m: u32, guards: &Guards) -> Result<Vec<PsiElement>> {
    let expansion = expand_det_power(n, m, guards)?;
    Ok(enumerate_psi(n, m)
        .filter(|l| !expansion.contains(l.matrix()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExponentMatrix;

    #[test]
    fn glynn_order_three_p_two() {
        let r = glynn_scan(3, 2, &Guards::default()).unwrap();
        assert_eq!(r.total, 6);
        assert_eq!(r.expected_residue, 1);
        assert!(r.passed());
    }

    #[test]
    fn glynn_order_two_p_three() {
        let r = glynn_scan(2, 3, &Guards::default()).unwrap();
        assert_eq!(r.total, 3);
        assert_eq!(r.expected_residue, 1);
        assert!(r.passed());
    }

    #[test]
    fn glynn_order_three_p_five() {
        let r = glynn_scan(3, 5, &Guards::default()).unwrap();
        assert_eq!(r.total, 120);
        assert!(r.passed());
    }

    #[test]
    fn glynn_rejects_composite_p() {
        assert!(matches!(
            glynn_scan(3, 4, &Guards::default()),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn residue_handles_negatives() {
        assert_eq!(residue_mod(&BigInt::from(-7), 5), 3);
        assert_eq!(residue_mod(&BigInt::from(7), 5), 2);
        assert_eq!(residue_mod(&BigInt::from(0), 5), 0);
    }

    #[test]
    fn zeros_boundary_cases() {
        let g = Guards::default();
        assert!(find_zeros(3, 2, &g).unwrap().is_empty());
        let zeros = find_zeros(3, 3, &g).unwrap();
        assert!(zeros.iter().any(|l| l.matrix() == &ExponentMatrix::ones(3)));
        assert!(find_zeros(2, 3, &g).unwrap().is_empty());
    }
}
