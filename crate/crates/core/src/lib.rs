//! Fixed-precision p-adic arithmetic, Hensel lifting and the fiber-by-fiber
//! classification of points of `Spec Z_p[T]`, with diagram rendering.

mod bignum;
pub mod diagram;
pub mod hensel;
pub mod padic;
pub mod poly;
pub mod spectrum;
