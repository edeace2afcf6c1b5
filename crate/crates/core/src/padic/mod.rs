//! Fixed-precision p-adic integers and numbers.
//!
//! A [`PadicInt`] is an element of `Z_p` known modulo `p^N`. Every binary
//! operation returns the smaller of the two input precisions, and dividing
//! out powers of `p` ([`PadicInt::unit_decompose`]) spends one digit per power.
//! A zero residue means "divisible by `p^N`", not "zero": operations that
//! need an exact valuation refuse it.

mod int;
mod num;
mod prime;
mod valuation;

use thiserror::Error;

pub use int::{PadicInt, ValuationBound};
pub use num::PadicNum;
pub use prime::{is_prime, Prime};
pub use valuation::{abs_p, vp_int, vp_rat, vp_ratio, Valuation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid prime literal {0:?}")]
    InvalidPrimeLiteral(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("not invertible: positive valuation")]
    NotInvertible,
    #[error("valuation indeterminate: value is 0 mod p^{precision}")]
    IndeterminateValuation { precision: u32 },
    #[error("cannot truncate to {requested} digits at precision {precision}")]
    TruncationOutOfRange { requested: u32, precision: u32 },
    #[error("not a p-adic integer (valuation {valuation})")]
    NotIntegral { valuation: i64 },
}
