use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::SpectrumError;
use crate::hensel::{roots_in_zp, working_precision, LiftedRoot};
use crate::padic::{is_prime, vp_int, PadicError, PadicInt, PadicNum, Prime};
use crate::poly::{IntPoly, ZpPoly};

/// Digits carried by root witnesses unless a caller asks for more.
pub const WITNESS_PRECISION: u32 = 20;

/// Why a polynomial is known to be irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Certificate {
    #[serde(rename = "linear")]
    Linear,
    #[serde(rename = "eisenstein")]
    Eisenstein,
    #[serde(rename = "disc-nonsquare-deg2")]
    DiscNonsquareDeg2,
    #[serde(rename = "no-root-deg3")]
    NoRootDeg3,
    #[serde(rename = "no-rational-root")]
    NoRationalRoot,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Linear => "linear",
            Certificate::Eisenstein => "eisenstein",
            Certificate::DiscNonsquareDeg2 => "disc-nonsquare-deg2",
            Certificate::NoRootDeg3 => "no-root-deg3",
            Certificate::NoRationalRoot => "no-rational-root",
        })
    }
}

/// Evidence that a polynomial factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A root in `Z_p`, lifted by Hensel's lemma.
    Root { alpha: PadicInt },
    /// A root in `Q`, written `a` or `a/b`.
    RationalRoot { root: String },
    /// `gcd(f, f')`, a factor of positive degree.
    RepeatedFactor { factor: IntPoly },
    /// A quadratic whose discriminant is a nonzero square in `Q_p`.
    SquareDiscriminant {
        #[serde(serialize_with = "crate::bignum::serialize")]
        discriminant: BigInt,
    },
}

/// Irreducibility verdict over a field. Undecided is an answer, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GenericVerdict {
    Irreducible {
        certificate: Certificate,
        /// The prime used by an Eisenstein certificate over `Q`.
        #[serde(skip_serializing_if = "Option::is_none")]
        prime: Option<Prime>,
    },
    Reducible {
        witness: Witness,
    },
    Undecided {
        reason: String,
    },
}

impl GenericVerdict {
    fn irreducible(certificate: Certificate) -> Self {
        GenericVerdict::Irreducible {
            certificate,
            prime: None,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self, GenericVerdict::Irreducible { .. })
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, GenericVerdict::Reducible { .. })
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, GenericVerdict::Undecided { .. })
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self {
            GenericVerdict::Irreducible { certificate, .. } => Some(*certificate),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GenericVerdict::Irreducible { .. } => "irreducible",
            GenericVerdict::Reducible { .. } => "reducible",
            GenericVerdict::Undecided { .. } => "undecided",
        }
    }
}

/// Whether a nonzero element of `Q_p` is a square: even valuation and a square unit
/// part, which for odd `p` is Euler's criterion mod `p` and for `p = 2` is `u ≡ 1 mod 8`.
pub fn qp_is_square(x: &PadicNum) -> Result<bool, SpectrumError> {
    let PadicNum::Nonzero { shift, unit } = x else {
        return Err(PadicError::IndeterminateValuation { precision: 0 }.into());
    };
    if shift % 2 != 0 {
        return Ok(false);
    }
    let p = unit.prime();
    if p.get() == 2 {
        if unit.precision() < 3 {
            return Err(PadicError::TruncationOutOfRange {
                requested: 3,
                precision: unit.precision(),
            }
            .into());
        }
        return Ok(unit.truncate(3)? == BigInt::from(1));
    }
    let u = unit.truncate(1)?;
    let q = p.to_bigint();
    Ok(u.modpow(&((&q - 1u32) / 2u32), &q).is_one())
}

/// [`qp_irreducible_with_precision`] with root witnesses to [`WITNESS_PRECISION`] digits.
pub fn qp_irreducible(f: &IntPoly, p: Prime) -> Result<GenericVerdict, SpectrumError> {
    qp_irreducible_with_precision(f, p, WITNESS_PRECISION)
}

/// Irreducibility over `Q_p` for a polynomial primitive over `Z_p`.
///
/// Degree 1 and Eisenstein polynomials are irreducible. Quadratics are decided by
/// their discriminant and cubics with a unit leading coefficient by root search.
/// Otherwise a root found in `Z_p` proves reducibility and anything else is undecided.
pub fn qp_irreducible_with_precision(
    f: &IntPoly,
    p: Prime,
    witness_precision: u32,
) -> Result<GenericVerdict, SpectrumError> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(SpectrumError::ConstantPolynomial),
    };
    if (f.content() % p.to_bigint()).is_zero() {
        return Err(SpectrumError::NotPrimitive {
            poly: f.to_string(),
            p: p.get(),
        });
    }
    if n == 1 {
        return Ok(GenericVerdict::irreducible(Certificate::Linear));
    }
    if eisenstein(f, p)? {
        return Ok(GenericVerdict::irreducible(Certificate::Eisenstein));
    }
    let disc = f.discriminant();
    if disc.is_zero() {
        return Ok(repeated_factor(f));
    }
    let unit_lead = !(f.leading().unwrap() % p.to_bigint()).is_zero();
    let root = || first_root(f, p, witness_precision);
    match n {
        2 => {
            let v = vp_int(&disc, p).finite().unwrap_or(0) as u32;
            let d = PadicNum::from_int(&disc, p, v + 4)?;
            if !qp_is_square(&d)? {
                return Ok(GenericVerdict::irreducible(Certificate::DiscNonsquareDeg2));
            }
            let witness = match if unit_lead { root()? } else { None } {
                Some(r) => Witness::Root { alpha: r.alpha },
                None => Witness::SquareDiscriminant { discriminant: disc },
            };
            Ok(GenericVerdict::Reducible { witness })
        }
        3 if unit_lead => Ok(match root()? {
            Some(r) => GenericVerdict::Reducible {
                witness: Witness::Root { alpha: r.alpha },
            },
            None => GenericVerdict::irreducible(Certificate::NoRootDeg3),
        }),
        _ => Ok(match root()? {
            Some(r) => GenericVerdict::Reducible {
                witness: Witness::Root { alpha: r.alpha },
            },
            None if n == 3 => GenericVerdict::Undecided {
                reason: "cubic with a non-unit leading coefficient and no root in Z_p".into(),
            },
            None => GenericVerdict::Undecided {
                reason: format!("degree {n}: not Eisenstein and no root in Z_p"),
            },
        }),
    }
}

/// Eisenstein's conditions read from exact coefficients, at a precision that makes
/// every nonzero coefficient's valuation determinate.
fn eisenstein(f: &IntPoly, p: Prime) -> Result<bool, SpectrumError> {
    let top = f
        .coeffs()
        .iter()
        .filter_map(|c| vp_int(c, p).finite())
        .max()
        .unwrap_or(0) as u32;
    Ok(ZpPoly::from_int_poly(f, p, top + 2)?.eisenstein()?)
}

fn repeated_factor(f: &IntPoly) -> GenericVerdict {
    GenericVerdict::Reducible {
        witness: Witness::RepeatedFactor {
            factor: f.gcd(&f.derivative()),
        },
    }
}

fn first_root(f: &IntPoly, p: Prime, target: u32) -> Result<Option<LiftedRoot>, SpectrumError> {
    let zf = ZpPoly::from_int_poly(f, p, working_precision(f, p, target))?;
    Ok(roots_in_zp(&zf, None, target)?.simple.into_iter().next())
}

/// Irreducibility over `Q`: rational roots up to degree 3, then Eisenstein at a
/// prime dividing all non-leading coefficients; undecided otherwise.
pub fn q_irreducible(f: &IntPoly) -> Result<GenericVerdict, SpectrumError> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(SpectrumError::ConstantPolynomial),
    };
    if n == 1 {
        return Ok(GenericVerdict::irreducible(Certificate::Linear));
    }
    if f.discriminant().is_zero() {
        return Ok(repeated_factor(f));
    }
    if let Some(r) = f.rational_roots().into_iter().next() {
        return Ok(GenericVerdict::Reducible {
            witness: Witness::RationalRoot {
                root: r.to_string(),
            },
        });
    }
    if n <= 3 {
        return Ok(GenericVerdict::irreducible(Certificate::NoRationalRoot));
    }
    let lower = f.coeffs()[..n]
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for q in prime_factors(&lower) {
        if eisenstein(f, q)? {
            return Ok(GenericVerdict::Irreducible {
                certificate: Certificate::Eisenstein,
                prime: Some(q),
            });
        }
    }
    Ok(GenericVerdict::Undecided {
        reason: format!("degree {n}: no rational root and no Eisenstein prime found"),
    })
}

/// Prime factors that fit in `u64`, by trial division up to `10^6`.
fn prime_factors(n: &BigInt) -> Vec<Prime> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while d <= 1_000_000 && BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(Prime::new(d).expect("smallest divisor is prime"));
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if let Some(rest) = n.to_u64().filter(|&r| r > 1 && is_prime(r)) {
        out.push(Prime::new(rest).expect("checked prime"));
    }
    out
}
