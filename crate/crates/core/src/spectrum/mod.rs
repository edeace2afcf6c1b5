//! Points of `Spec Z_p[T]` and the fiber-by-fiber behavior of anchor polynomials.
//!
//! A prime of `Z_p[T]` lies over `(0)` or `(p)` of `Z_p`, so it is one of
//! `(0)`, `(p)`, `(f)` with `f` irreducible over `Q_p`, or `(p, f)` with `f`
//! irreducible mod `p`. The last two are decided by [`qp_irreducible`] and
//! [`fp_is_irreducible`](crate::poly::fp_is_irreducible).

mod classify;
mod fiber;
mod qp;

use thiserror::Error;

pub use classify::{classify_ideal, Classification, Generators, ResidueDescriptor, SpecPoint};
pub use fiber::{
    fiber_behavior, z_family_report, z_fiber_report, zp_family_report, zp_fiber_report, Anchor,
    DegreeDrop, FiberBehavior, FiberReport, FiberVerdict, Space, SplitFactor,
};
pub use qp::{
    q_irreducible, qp_irreducible, qp_irreducible_with_precision, qp_is_square, Certificate,
    GenericVerdict, Witness,
};

use crate::hensel::HenselError;
use crate::padic::PadicError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("a nonconstant polynomial is required")]
    ConstantPolynomial,
    #[error("{poly} is not primitive over Z_{p}: p divides every coefficient")]
    NotPrimitive { poly: String, p: u64 },
    #[error("unsupported generators: {0}")]
    UnsupportedGenerators(String),
    #[error("the prime list is empty")]
    NoPrimes,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Hensel(#[from] HenselError),
}
