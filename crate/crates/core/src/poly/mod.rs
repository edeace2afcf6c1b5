//! Univariate polynomials over `Z`, `F_p` and `Z_p`, with the expression parser,
//! factorization over `F_p` and the Eisenstein and primitivity tests.

mod factor;
mod fp_poly;
mod int_poly;
mod parse;
mod render;
mod zp_poly;

use thiserror::Error;

pub use factor::{
    enumerate_irreducibles, enumerate_irreducibles_capped, fp_factor, fp_gcd, fp_is_irreducible,
    FpFactorization, DEFAULT_ENUMERATION_CAP,
};
pub use fp_poly::FpPoly;
pub use int_poly::IntPoly;
pub use parse::{mentions_p, parse_poly, parse_poly_with_p, ParseError, MAX_EXPONENT};
pub use zp_poly::ZpPoly;

use crate::padic::PadicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("a nonconstant polynomial is required")]
    ConstantPolynomial,
    #[error("{what}: size {size} exceeds the cap {cap}")]
    SizeCap {
        what: &'static str,
        size: u64,
        cap: u64,
    },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
