//! Exact integer combinatorics: factorials, binomials, multinomials.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::ExponentMatrix;

/// k! as an arbitrary-precision integer.
pub fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multinomial coefficient m! / (parts_0! parts_1! ...).
///
/// The parts must sum to m.
pub fn multinomial(m: u64, parts: &[u64]) -> Result<BigInt> {
    let sum: u64 = parts.iter().sum();
    if sum != m {
        return Err(Error::PartsSum {
            found: sum,
            expected: m,
        });
    }
    let mut acc = factorial(m);
    for &p in parts {
        if p > 1 {
            acc /= factorial(p);
        }
    }
    Ok(acc)
}

/// Product of the factorials of all entries of L.
pub fn matrix_factorial(l: &ExponentMatrix) -> BigInt {
    let mut acc = BigInt::one();
    for &e in l.entries() {
        if e > 1 {
            acc *= factorial(e as u64);
        }
    }
    acc
}
