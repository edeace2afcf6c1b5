use std::fmt;

use num_bigint::BigInt;

use super::{FpPoly, IntPoly, PolyError};
use crate::padic::{PadicError, PadicInt, Prime, ValuationBound};

/// Polynomial over `Z_p` with every coefficient known to the same precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpPoly {
    p: Prime,
    precision: u32,
    coeffs: Vec<PadicInt>,
}

impl ZpPoly {
    /// Embeds an integer polynomial. Coefficients that vanish mod `p^N` are kept, so the
    /// nominal degree is the integer degree.
    pub fn from_int_poly(f: &IntPoly, p: Prime, precision: u32) -> Result<Self, PolyError> {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| PadicInt::from_int(c, p, precision))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ZpPoly {
            p,
            precision,
            coeffs,
        })
    }

    /// Coefficients must share `p`; the common precision is their minimum.
    pub fn new(p: Prime, coeffs: Vec<PadicInt>) -> Result<Self, PolyError> {
        let mut precision = u32::MAX;
        for c in &coeffs {
            if c.prime() != p {
                return Err(PadicError::PrimeMismatch {
                    left: p.get(),
                    right: c.prime().get(),
                }
                .into());
            }
            precision = precision.min(c.precision());
        }
        if coeffs.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        let coeffs = coeffs
            .iter()
            .map(|c| c.with_precision(precision))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ZpPoly {
            p,
            precision,
            coeffs,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeffs(&self) -> &[PadicInt] {
        &self.coeffs
    }

    /// Nominal degree: the length of the coefficient list minus one.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Integer representatives of the residues, lowest degree first.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.residue().clone()).collect())
    }

    pub fn reduce_mod_p(&self) -> FpPoly {
        FpPoly::from_int_poly(&self.to_int_poly(), self.p)
    }

    /// Horner evaluation; the result has the smaller of the two precisions.
    pub fn eval(&self, a: &PadicInt) -> Result<PadicInt, PolyError> {
        if a.prime() != self.p {
            return Err(PadicError::PrimeMismatch {
                left: self.p.get(),
                right: a.prime().get(),
            }
            .into());
        }
        let precision = self.precision.min(a.precision());
        let mut acc = PadicInt::zero(self.p, precision)?;
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(a)?.checked_add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs: Vec<PadicInt> = if self.coeffs.len() <= 1 {
            vec![PadicInt::zero(self.p, self.precision).expect("precision is positive")]
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| {
                    PadicInt::new(self.p, self.precision, &(c.residue() * BigInt::from(i)))
                        .expect("precision is positive")
                })
                .collect()
        };
        ZpPoly {
            p: self.p,
            precision: self.precision,
            coeffs,
        }
    }

    /// Some coefficient is a unit. Residues that are all zero give `false`.
    pub fn is_primitive(&self) -> Result<bool, PolyError> {
        if self.coeffs.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().any(PadicInt::is_unit))
    }

    /// The three valuation conditions `v(a_n) = 0`, `v(a_i) ≥ 1` for `i < n`, `v(a_0) = 1`.
    /// `true` proves irreducibility over `Q_p`; `false` proves nothing.
    pub fn eisenstein(&self) -> Result<bool, PolyError> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(PolyError::ConstantPolynomial),
        };
        if !self.coeffs[n].is_unit() {
            if self.coeffs[n].is_zero_at_precision() {
                return Err(PadicError::IndeterminateValuation {
                    precision: self.precision,
                }
                .into());
            }
            return Ok(false);
        }
        if self.coeffs[1..n].iter().any(PadicInt::is_unit) {
            return Ok(false);
        }
        match self.coeffs[0].valuation_bound() {
            ValuationBound::Exact(v) => Ok(v == 1),
            // only a precision-1 zero leaves v(a_0) = 1 open
            ValuationBound::AtLeast(1) => Err(PadicError::IndeterminateValuation {
                precision: self.precision,
            }
            .into()),
            ValuationBound::AtLeast(_) => Ok(false),
        }
    }
}

impl fmt::Display for ZpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + O({}^{})",
            self.to_int_poly(),
            self.p,
            self.precision
        )
    }
}
