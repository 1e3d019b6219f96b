//! Zero-coefficient witnesses for composite m+1, and the primality gate.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::coefficient;
use crate::comb::multinomial;
use crate::error::{Error, Result};
use crate::matrix::{ExponentMatrix, PsiElement};

/// Deterministic primality for all 64-bit inputs: strong-pseudoprime test
/// with a base set proven exact below 2^64.
pub fn is_prime(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if k == p {
            return true;
        }
        if k.is_multiple_of(p) {
            return false;
        }
    }
    let s = (k - 1).trailing_zeros();
    let d = (k - 1) >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % k;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, k);
        if x == 1 || x == k - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, k);
            if x == k - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

/// Natural numbers a ≤ b with (a+1)(b+1) = m+1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FactorPair {
    a: u32,
    b: u32,
}

impl FactorPair {
    /// Validates against the margin; (a, b) is normalized to a ≤ b.
    pub fn new(m: u32, a: u32, b: u32) -> Result<Self> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let product = (a as u64 + 1) * (b as u64 + 1);
        if a < 1 || product != m as u64 + 1 {
            return Err(Error::InvalidFactorPair {
                product,
                expected: m as u64 + 1,
            });
        }
        Ok(FactorPair { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

/// All factor pairs for the margin m, ascending by a.
///
/// Empty exactly when m+1 is prime (or m = 0), i.e. when no witness of this
/// family exists.
pub fn factor_pairs(m: u32) -> Vec<FactorPair> {
    let target = m as u64 + 1;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= target {
        if target.is_multiple_of(d) {
            out.push(FactorPair {
                a: (d - 1) as u32,
                b: (target / d - 1) as u32,
            });
        }
        d += 1;
    }
    out
}

/// The n×n witness matrix for a factor pair of m: a 3×3 core block
///
/// ```text
/// ab+b-1  a       1
/// a       ab      b
/// 1       b       ab+a-1
/// ```
///
/// padded with diagonal entries m, a certified member of Ψ(m).
pub fn build_witness(n: usize, m: u32, pair: FactorPair) -> Result<PsiElement> {
    if n < 3 {
        return Err(Error::OrderTooSmall { n });
    }
    // re-validate so stale pairs cannot sneak in
    let pair = FactorPair::new(m, pair.a, pair.b)?;
    let (a, b) = (pair.a, pair.b);
    let ab = a * b;
    let mut w = ExponentMatrix::zero(n);
    let core = [[ab + b - 1, a, 1], [a, ab, b], [1, b, ab + a - 1]];
    for (i, row) in core.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            w.set(i, j, v);
        }
    }
    for i in 3..n {
        w.set(i, i, m);
    }
    Ok(PsiElement::new(w, m).expect("witness margins all equal m"))
}

/// The witness coefficient in closed form: the signed difference
/// (-1)^{a+b+1}·multinomial(m; ab-1,0,0,a,b,1) + (-1)^{a+b}·multinomial(m; ab,1,1,a-1,b-1,0).
///
/// Always 0, since the two multinomials are equal.
pub fn witness_closed_form(m: u32, pair: FactorPair) -> Result<BigInt> {
    let pair = FactorPair::new(m, pair.a, pair.b)?;
    let (first, second) = witness_multinomials(m, pair);
    if (pair.a + pair.b) % 2 == 0 {
        // (-1)^{a+b+1} = -1, (-1)^{a+b} = +1
        Ok(second - first)
    } else {
        Ok(first - second)
    }
}

/// Checks the identity multinomial(m; ab-1,0,0,a,b,1) =
/// multinomial(m; ab,1,1,a-1,b-1,0) by computing both sides exactly.
pub fn witness_multinomials_equal(m: u32, pair: FactorPair) -> Result<bool> {
    let pair = FactorPair::new(m, pair.a, pair.b)?;
    let (first, second) = witness_multinomials(m, pair);
    Ok(first == second)
}

fn witness_multinomials(m: u32, pair: FactorPair) -> (BigInt, BigInt) {
    let (a, b) = (pair.a as u64, pair.b as u64);
    let m = m as u64;
    let first =
        multinomial(m, &[a * b - 1, 0, 0, a, b, 1]).expect("witness parts sum to the margin");
    let second =
        multinomial(m, &[a * b, 1, 1, a - 1, b - 1, 0]).expect("witness parts sum to the margin");
    (first, second)
}

/// A certified zero coefficient: the witness matrix together with the
/// engine value and the closed-form value, both expected to be 0.
#[derive(Clone, Debug)]
pub struct ZeroCertificate {
    pub n: usize,
    pub m: u32,
    pub pair: FactorPair,
    pub witness: PsiElement,
    pub engine_value: BigInt,
    pub closed_form_value: BigInt,
}

impl ZeroCertificate {
    pub fn verified(&self) -> bool {
        self.engine_value.is_zero() && self.closed_form_value.is_zero()
    }
}

/// Builds and checks the certificate for one factor pair.
pub fn zero_certificate_for_pair(n: usize, m: u32, pair: FactorPair) -> Result<ZeroCertificate> {
    let witness = build_witness(n, m, pair)?;
    let engine_value = coefficient(&witness);
    let closed_form_value = witness_closed_form(m, pair)?;
    Ok(ZeroCertificate {
        n,
        m,
        pair,
        witness,
        engine_value,
        closed_form_value,
    })
}

/// Builds the certificate for the first factor pair (smallest a).
///
/// Fails when m+1 is prime: by Glynn's theorem every coefficient of the
/// m-th power is then nonzero, so no witness of this family exists.
pub fn find_zero_certificate(n: usize, m: u32) -> Result<ZeroCertificate> {
    if n < 3 {
        return Err(Error::OrderTooSmall { n });
    }
    if m == 0 {
        return Err(Error::Unsupported(
            "m = 0 has the single coefficient C_0 = 1; no zero witness exists".into(),
        ));
    }
    let pairs = factor_pairs(m);
    match pairs.first() {
        Some(&pair) => zero_certificate_for_pair(n, m, pair),
        None => Err(Error::MarginPlusOnePrime {
            m,
            m_plus_1: m as u64 + 1,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_values() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(561)); // Carmichael number
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 998_244_353));
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |k: u64| {
            k >= 2
                && (2..k)
                    .take_while(|d| d * d <= k)
                    .all(|d| !k.is_multiple_of(d))
        };
        for k in 0..5000 {
            assert_eq!(is_prime(k), trial(k), "k = {}", k);
        }
    }

    #[test]
    fn factor_pairs_examples() {
        let pairs = |m: u32| -> Vec<(u32, u32)> {
            factor_pairs(m).iter().map(|p| (p.a(), p.b())).collect()
        };
        assert_eq!(pairs(3), vec![(1, 1)]);
        assert_eq!(pairs(4), Vec::<(u32, u32)>::new());
        assert_eq!(pairs(11), vec![(1, 5), (2, 3)]);
    }

    #[test]
    fn factor_pairs_empty_iff_prime_margin_successor() {
        for m in 1..=30u32 {
            assert_eq!(
                factor_pairs(m).is_empty(),
                is_prime(m as u64 + 1),
                "m = {}",
                m
            );
        }
    }

    #[test]
    fn witness_examples() {
        let w = build_witness(3, 3, FactorPair::new(3, 1, 1).unwrap()).unwrap();
        assert_eq!(w.matrix(), &ExponentMatrix::ones(3));

        let w = build_witness(3, 5, FactorPair::new(5, 1, 2).unwrap()).unwrap();
        assert_eq!(w.to_string(), "3,1,1;1,2,2;1,2,2");

        let w = build_witness(4, 3, FactorPair::new(3, 1, 1).unwrap()).unwrap();
        assert_eq!(w.to_string(), "1,1,1,0;1,1,1,0;1,1,1,0;0,0,0,3");
    }

    #[test]
    fn witness_rejects_small_orders_and_bad_pairs() {
        let pair = FactorPair::new(3, 1, 1).unwrap();
        assert!(matches!(
            build_witness(2, 3, pair),
            Err(Error::OrderTooSmall { n: 2 })
        ));
        assert!(build_witness(3, 5, pair).is_err());
        assert!(FactorPair::new(4, 1, 1).is_err());
        assert!(FactorPair::new(3, 0, 3).is_err());
    }

    #[test]
    fn factor_pair_normalizes_order() {
        let p = FactorPair::new(5, 2, 1).unwrap();
        assert_eq!((p.a(), p.b()), (1, 2));
    }

    #[test]
    fn closed_form_vanishes_and_multinomials_match() {
        for m in 1..=30u32 {
            for pair in factor_pairs(m) {
                assert!(witness_multinomials_equal(m, pair).unwrap());
                assert_eq!(witness_closed_form(m, pair).unwrap(), BigInt::zero());
                let w = build_witness(3, m, pair).unwrap();
                assert_eq!(w.margin(), m);
            }
        }
    }

    #[test]
    fn closed_form_signs() {
        // m = 3, (a, b) = (1, 1): both multinomials are 6 and a+b is even,
        // so the signed sum is 6 - 6
        let pair = FactorPair::new(3, 1, 1).unwrap();
        let (first, second) = witness_multinomials(3, pair);
        assert_eq!(first, BigInt::from(6));
        assert_eq!(second, BigInt::from(6));
    }

    #[test]
    fn certificates() {
        let cert = find_zero_certificate(3, 3).unwrap();
        assert_eq!(cert.witness.matrix(), &ExponentMatrix::ones(3));
        assert!(cert.verified());

        assert!(matches!(
            find_zero_certificate(3, 4),
            Err(Error::MarginPlusOnePrime { m_plus_1: 5, .. })
        ));
        assert!(matches!(
            find_zero_certificate(3, 0),
            Err(Error::Unsupported(_))
        ));

        let cert = find_zero_certificate(5, 5).unwrap();
        assert_eq!((cert.pair.a(), cert.pair.b()), (1, 2));
        assert_eq!(
            cert.witness.to_string(),
            "3,1,1,0,0;1,2,2,0,0;1,2,2,0,0;0,0,0,5,0;0,0,0,0,5"
        );
        assert!(cert.verified());
    }

    #[test]
    fn padded_witness_matches_core_coefficient() {
        for (n, m) in [(4, 3), (5, 3), (4, 5), (5, 5)] {
            let pair = factor_pairs(m)[0];
            let padded = zero_certificate_for_pair(n, m, pair).unwrap();
            let core = zero_certificate_for_pair(3, m, pair).unwrap();
            assert_eq!(padded.engine_value, core.engine_value);
            assert!(padded.verified());
        }
    }
}
