use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed matrix text (`a,b;c,d`) or JSON array input.
    #[error("cannot parse matrix: {0}")]
    Parse(String),

    #[error("matrix is not square: {0}")]
    NotSquare(String),

    #[error("row {index} sums to {found}, expected margin {expected}")]
    RowMargin {
        index: usize,
        found: u32,
        expected: u32,
    },

    #[error("column {index} sums to {found}, expected margin {expected}")]
    ColMargin {
        index: usize,
        found: u32,
        expected: u32,
    },

    #[error("parts sum to {found}, expected {expected}")]
    PartsSum { found: u64, expected: u64 },

    #[error("invalid permutation images: {0}")]
    InvalidPermutation(String),

    #[error("invalid Latin square: {0}")]
    InvalidLatinSquare(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("order n = {n} is too small: zero witnesses of this family need n >= 3")]
    OrderTooSmall { n: usize },

    #[error(
        "m + 1 = {m_plus_1} is prime, so by Glynn's theorem every coefficient of the \
         {m}-th power is nonzero and no zero witness exists"
    )]
    MarginPlusOnePrime { m: u32, m_plus_1: u64 },

    #[error("(a+1)(b+1) = {product} does not equal m + 1 = {expected}")]
    InvalidFactorPair { product: u64, expected: u64 },

    #[error("{0}")]
    Unsupported(String),

    #[error("order n = {n} must be even")]
    OddOrder { n: usize },

    #[error("{what}: estimated {estimate} exceeds ceiling {ceiling}")]
    GuardExceeded {
        what: &'static str,
        estimate: u128,
        ceiling: u128,
    },

    #[error(
        "Latin square order {n} exceeds the enumeration ceiling {max} \
         (up to {estimate} squares); raise the order ceiling to proceed"
    )]
    LatinOrderGuard {
        n: usize,
        max: usize,
        estimate: u128,
    },
}

impl Error {
    /// True for refusals caused by a resource ceiling rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::GuardExceeded { .. } | Error::LatinOrderGuard { .. }
        )
    }
}
