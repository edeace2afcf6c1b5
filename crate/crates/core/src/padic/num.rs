use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::valuation::split_power;
use super::{abs_p, PadicError, PadicInt, Prime, Valuation};

/// An element of `Q_p = Z_p[1/p]`, stored as `p^shift · unit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadicNum {
    Zero(Prime),
    Nonzero { shift: i64, unit: PadicInt },
}

impl PadicNum {
    /// `num/den` with the unit part carried to `precision` digits.
    pub fn from_rational(
        num: &BigInt,
        den: &BigInt,
        p: Prime,
        precision: u32,
    ) -> Result<Self, PadicError> {
        if den.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(PadicNum::Zero(p));
        }
        let (a, num_unit) = split_power(num, p);
        let (b, den_unit) = split_power(den, p);
        let unit = PadicInt::from_rational(&num_unit, &den_unit, p, precision)?;
        Ok(PadicNum::Nonzero {
            shift: a as i64 - b as i64,
            unit,
        })
    }

    pub fn from_int(x: &BigInt, p: Prime, precision: u32) -> Result<Self, PadicError> {
        Self::from_rational(x, &BigInt::from(1), p, precision)
    }

    pub fn from_ratio(x: &BigRational, p: Prime, precision: u32) -> Result<Self, PadicError> {
        Self::from_rational(x.numer(), x.denom(), p, precision)
    }

    /// Promotes a p-adic integer; a zero residue has no determinate valuation and is rejected.
    pub fn from_padic_int(a: &PadicInt) -> Result<Self, PadicError> {
        let (n, unit) = a.unit_decompose()?;
        Ok(PadicNum::Nonzero {
            shift: n as i64,
            unit,
        })
    }

    pub fn prime(&self) -> Prime {
        match self {
            PadicNum::Zero(p) => *p,
            PadicNum::Nonzero { unit, .. } => unit.prime(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PadicNum::Zero(_))
    }

    pub fn valuation(&self) -> Valuation {
        match self {
            PadicNum::Zero(_) => Valuation::Infinity,
            PadicNum::Nonzero { shift, .. } => Valuation::Finite(*shift),
        }
    }

    pub fn abs(&self) -> BigRational {
        abs_p(self.valuation(), self.prime())
    }

    pub fn unit(&self) -> Option<&PadicInt> {
        match self {
            PadicNum::Zero(_) => None,
            PadicNum::Nonzero { unit, .. } => Some(unit),
        }
    }

    pub fn checked_mul(&self, other: &PadicNum) -> Result<Self, PadicError> {
        if self.prime() != other.prime() {
            return Err(PadicError::PrimeMismatch {
                left: self.prime().get(),
                right: other.prime().get(),
            });
        }
        match (self, other) {
            (PadicNum::Nonzero { shift: a, unit: u }, PadicNum::Nonzero { shift: b, unit: w }) => {
                Ok(PadicNum::Nonzero {
                    shift: a + b,
                    unit: u.checked_mul(w)?,
                })
            }
            _ => Ok(PadicNum::Zero(self.prime())),
        }
    }

    pub fn inverse(&self) -> Result<Self, PadicError> {
        match self {
            PadicNum::Zero(_) => Err(PadicError::NotInvertible),
            PadicNum::Nonzero { shift, unit } => Ok(PadicNum::Nonzero {
                shift: -shift,
                unit: unit.invert_unit()?,
            }),
        }
    }

    /// Membership in `Z_p`, i.e. `|x|_p ≤ 1`.
    pub fn is_integral(&self) -> bool {
        self.valuation() >= Valuation::Finite(0)
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicNum::Zero(_) => write!(f, "0"),
            PadicNum::Nonzero { shift, unit } => {
                write!(f, "{}^{} * {}", unit.prime(), shift, unit)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn valuation_matches_shift() {
        let x = PadicNum::from_rational(&big(1), &big(9), p(3), 4).unwrap();
        assert_eq!(x.valuation(), Valuation::Finite(-2));
        assert!(!x.is_integral());
        assert!(x.inverse().unwrap().is_integral());
        let zero = PadicNum::from_int(&big(0), p(3), 4).unwrap();
        assert_eq!(zero.valuation(), Valuation::Infinity);
        assert!(zero.abs().is_zero());
    }

    #[test]
    fn unit_part_is_a_unit() {
        let x = PadicNum::from_rational(&big(-45), &big(4), p(3), 5).unwrap();
        match &x {
            PadicNum::Nonzero { shift, unit } => {
                assert_eq!(*shift, 2);
                assert!(unit.is_unit());
            }
            PadicNum::Zero(_) => panic!("nonzero input"),
        }
    }

    #[test]
    fn multiplication_adds_shifts() {
        let a = PadicNum::from_rational(&big(6), &big(1), p(3), 4).unwrap();
        let b = PadicNum::from_rational(&big(1), &big(27), p(3), 4).unwrap();
        let c = a.checked_mul(&b).unwrap();
        assert_eq!(c.valuation(), Valuation::Finite(-2));
        // unit part of 6/27 = 2/9 · … is 2
        assert_eq!(c.unit().unwrap().residue(), &big(2));
    }

    #[test]
    fn zero_residue_is_rejected() {
        let a = PadicInt::from_i64(81, p(3), 4).unwrap();
        assert!(PadicNum::from_padic_int(&a).is_err());
        let b = PadicInt::from_i64(18, p(3), 4).unwrap();
        let x = PadicNum::from_padic_int(&b).unwrap();
        assert_eq!(x.valuation(), Valuation::Finite(2));
    }
}
