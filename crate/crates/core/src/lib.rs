//! Exact coefficients of powers of the determinant polynomial.
//!
//! Writing (det X)^m = Σ_{L ∈ Ψ(m)} C_L x^L over the n×n matrix of
//! indeterminates X, with Ψ(m) the set of nonnegative integer matrices whose
//! rows and columns all sum to m, this crate computes the integer
//! coefficients C_L exactly and checks the structural facts about them:
//!
//! - three independent coefficient engines: full sparse expansion
//!   ([`expand_det_power`]), enumeration of decompositions into permutation
//!   matrices ([`coefficient`]), and ordered-tuple brute force
//!   ([`coefficient_bruteforce`]);
//! - Glynn's congruence scan for m = p-1: C_L ≠ 0 and
//!   L!·C_L ≡ (-1)^n (mod p) over all of Ψ(p-1) ([`glynn_scan`]);
//! - explicit zero-coefficient witnesses when m+1 is composite, certified
//!   both by the engine and by a closed form ([`find_zero_certificate`]);
//! - Latin square parity counts els(n)/ols(n) and the bridge
//!   C_{J_n} = (-1)^{n(n-1)/2}(els(n) - ols(n)) ([`relation_check`]).
//!
//! All arithmetic is exact arbitrary precision; every enumeration is
//! deterministic, and the expensive ones are guarded by configurable
//! ceilings ([`Guards`]).

pub mod birkhoff;
pub mod cli;
pub mod coeff;
pub mod comb;
pub mod error;
pub mod expand;
pub mod guard;
pub mod latin;
pub mod matrix;
pub mod perm;
pub mod psi;
pub mod scan;
pub mod selftest;
pub mod witness;

pub use birkhoff::{enumerate_birkhoff, BirkhoffCombination};
pub use coeff::{coefficient, coefficient_bruteforce};
pub use comb::{binomial, factorial, matrix_factorial, multinomial};
pub use error::{Error, Result};
pub use expand::{expand_det_power, DetPowerExpansion};
pub use guard::Guards;
pub use latin::{
    alon_tarsi_check, count_parities, relation_check, AlonTarsiReport, LatinParityCount,
    LatinSquare, RelationReport,
};
pub use matrix::{ExponentMatrix, PsiElement};
pub use perm::Permutation;
pub use psi::{enumerate_psi, psi_count, psi_size_estimate};
pub use scan::{find_zeros, glynn_scan, GlynnReport, GlynnViolation};
pub use witness::{
    build_witness, factor_pairs, find_zero_certificate, is_prime, witness_closed_form,
    witness_multinomials_equal, zero_certificate_for_pair, FactorPair, ZeroCertificate,
};
