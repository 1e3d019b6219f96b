//! Resource ceilings: refuse oversized requests instead of stalling.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::psi::psi_size_estimate;

pub const ENV_MAX_MONOMIALS: &str = "DETPOW_MAX_MONOMIALS";
pub const ENV_MAX_TUPLES: &str = "DETPOW_MAX_TUPLES";
pub const ENV_MAX_LATIN_ORDER: &str = "DETPOW_MAX_LATIN_ORDER";

/// Ceilings for the enumeration-heavy operations.
#[derive(Clone, Debug)]
pub struct Guards {
    /// Ceiling on live monomials in an expansion, also used for whole-Ψ scans.
    pub max_monomials: u64,
    /// Ceiling on (n!)^m ordered tuples in the brute-force coefficient.
    pub max_tuples: u64,
    /// Largest Latin square order enumerated without an explicit override.
    pub max_latin_order: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_monomials: 10_000_000,
            max_tuples: 100_000_000,
            max_latin_order: 5,
        }
    }
}

impl Guards {
    /// Defaults overridden by `DETPOW_MAX_MONOMIALS`, `DETPOW_MAX_TUPLES`
    /// and `DETPOW_MAX_LATIN_ORDER` when set.
    pub fn from_env() -> Self {
        let mut g = Guards::default();
        if let Some(v) = env_u64(ENV_MAX_MONOMIALS) {
            g.max_monomials = v;
        }
        if let Some(v) = env_u64(ENV_MAX_TUPLES) {
            g.max_tuples = v;
        }
        if let Some(v) = env_u64(ENV_MAX_LATIN_ORDER) {
            g.max_latin_order = v as usize;
        }
        g
    }

    pub fn check_psi_scale(&self, n: usize, m: u32, what: &'static str) -> Result<()> {
        let estimate = psi_size_estimate(n, m);
        if estimate > BigInt::from(self.max_monomials) {
            return Err(Error::GuardExceeded {
                what,
                estimate: saturate(&estimate),
                ceiling: self.max_monomials as u128,
            });
        }
        Ok(())
    }

    pub fn check_tuples(&self, n: usize, m: u32) -> Result<()> {
        let estimate = saturating_factorial_power(n, m);
        if estimate > self.max_tuples as u128 {
            return Err(Error::GuardExceeded {
                what: "brute-force tuple enumeration",
                estimate,
                ceiling: self.max_tuples as u128,
            });
        }
        Ok(())
    }

    /// Refuses orders whose n! permutations cannot be materialized under the
    /// monomial ceiling; protects the decomposition engine behind the CLI
    /// and bindings.
    pub fn check_group_order(&self, n: usize, what: &'static str) -> Result<()> {
        let fact = saturating_factorial_power(n, 1);
        if fact > self.max_monomials as u128 {
            return Err(Error::GuardExceeded {
                what,
                estimate: fact,
                ceiling: self.max_monomials as u128,
            });
        }
        Ok(())
    }

    pub fn check_latin(&self, n: usize) -> Result<()> {
        if n > self.max_latin_order {
            return Err(Error::LatinOrderGuard {
                n,
                max: self.max_latin_order,
                estimate: saturating_factorial_power(n, n as u32),
            });
        }
        Ok(())
    }
}

/// (n!)^m with u128 saturation.
fn saturating_factorial_power(n: usize, m: u32) -> u128 {
    let fact: u128 = (1..=n as u128)
        .try_fold(1u128, |acc, i| acc.checked_mul(i))
        .unwrap_or(u128::MAX);
    let mut estimate: u128 = 1;
    for _ in 0..m {
        estimate = estimate.saturating_mul(fact);
    }
    estimate
}

fn env_u64(key: &str) -> Option<u64> {
    std::env::var(key).ok()?.trim().parse().ok()
}

fn saturate(v: &BigInt) -> u128 {
    use num_traits::ToPrimitive;
    v.to_u128().unwrap_or(u128::MAX)
}
