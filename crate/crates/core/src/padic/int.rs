use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::valuation::{mod_floor, split_power};
use super::{PadicError, Prime, Valuation};

/// What is known about the valuation of an element carried at finite precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationBound {
    /// The residue is nonzero, so the valuation is determined.
    Exact(u32),
    /// The residue is zero mod `p^N`; the valuation is at least `N`.
    AtLeast(u32),
}

impl ValuationBound {
    pub fn exact(self) -> Option<u32> {
        match self {
            ValuationBound::Exact(v) => Some(v),
            ValuationBound::AtLeast(_) => None,
        }
    }

    pub fn lower(self) -> u32 {
        match self {
            ValuationBound::Exact(v) | ValuationBound::AtLeast(v) => v,
        }
    }
}

/// An element of `Z_p` known modulo `p^N`.
///
/// Only the residue `0 ≤ r < p^N` is stored; the coherent sequence
/// `(r mod p, r mod p^2, …, r mod p^N)` is recovered by [`PadicInt::truncation_sequence`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: Prime,
    precision: u32,
    residue: BigInt,
}

impl PadicInt {
    /// Reduces `residue` modulo `p^precision`.
    pub fn new(p: Prime, precision: u32, residue: &BigInt) -> Result<Self, PadicError> {
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let residue = mod_floor(residue, &p.pow(precision));
        Ok(PadicInt {
            p,
            precision,
            residue,
        })
    }

    /// The image of an integer under `Z → Z_p`, truncated to `precision` digits.
    pub fn from_int(x: &BigInt, p: Prime, precision: u32) -> Result<Self, PadicError> {
        Self::new(p, precision, x)
    }

    pub fn from_i64(x: i64, p: Prime, precision: u32) -> Result<Self, PadicError> {
        Self::new(p, precision, &BigInt::from(x))
    }

    /// Embeds `num/den` when it lies in `Z_(p)`; the denominator is inverted mod `p^N`.
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
            return Self::new(p, precision, num);
        }
        let (a, num_unit) = split_power(num, p);
        let (b, den_unit) = split_power(den, p);
        if a < b {
            return Err(PadicError::NotIntegral {
                valuation: a as i64 - b as i64,
            });
        }
        let modulus = p.pow(precision);
        let inv = inverse_mod(&den_unit, &modulus).expect("p-free denominator is a unit");
        let value = p.pow(a - b) * num_unit * inv;
        Self::new(p, precision, &value)
    }

    pub fn zero(p: Prime, precision: u32) -> Result<Self, PadicError> {
        Self::new(p, precision, &BigInt::zero())
    }

    pub fn one(p: Prime, precision: u32) -> Result<Self, PadicError> {
        Self::new(p, precision, &BigInt::one())
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        self.p.pow(self.precision)
    }

    /// True when the residue is zero, i.e. the element is `0 + O(p^N)`.
    pub fn is_zero_at_precision(&self) -> bool {
        self.residue.is_zero()
    }

    /// `[x mod p, x mod p^2, …, x mod p^N]`.
    pub fn truncation_sequence(&self) -> Vec<BigInt> {
        (1..=self.precision)
            .map(|n| mod_floor(&self.residue, &self.p.pow(n)))
            .collect()
    }

    /// Base-p digits, least significant first, exactly `N` of them.
    pub fn digits(&self) -> Vec<u64> {
        let p = self.p.to_bigint();
        let mut rest = self.residue.clone();
        let mut out = Vec::with_capacity(self.precision as usize);
        for _ in 0..self.precision {
            let (q, r) = rest.div_rem(&p);
            out.push(r.to_u64().expect("digit below p fits u64"));
            rest = q;
        }
        out
    }

    /// The ring map `Z_p → Z/p^n Z`.
    pub fn truncate(&self, n: u32) -> Result<BigInt, PadicError> {
        if n == 0 || n > self.precision {
            return Err(PadicError::TruncationOutOfRange {
                requested: n,
                precision: self.precision,
            });
        }
        Ok(mod_floor(&self.residue, &self.p.pow(n)))
    }

    /// Same element with fewer known digits.
    pub fn with_precision(&self, n: u32) -> Result<Self, PadicError> {
        if n > self.precision {
            return Err(PadicError::TruncationOutOfRange {
                requested: n,
                precision: self.precision,
            });
        }
        Self::new(self.p, n, &self.residue)
    }

    /// Reads the residue as an integer and re-embeds it at precision `n`.
    ///
    /// When `n` exceeds the current precision the new digits are those of the
    /// integer representative, not of the (unknown) underlying p-adic number.
    pub fn reembed(&self, n: u32) -> Result<Self, PadicError> {
        Self::new(self.p, n, &self.residue)
    }

    fn check_same_prime(&self, other: &PadicInt) -> Result<(), PadicError> {
        if self.p != other.p {
            return Err(PadicError::PrimeMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    fn combine(
        &self,
        other: &PadicInt,
        op: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<Self, PadicError> {
        self.check_same_prime(other)?;
        let precision = self.precision.min(other.precision);
        Self::new(self.p, precision, &op(&self.residue, &other.residue))
    }

    pub fn checked_add(&self, other: &PadicInt) -> Result<Self, PadicError> {
        self.combine(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &PadicInt) -> Result<Self, PadicError> {
        self.combine(other, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &PadicInt) -> Result<Self, PadicError> {
        self.combine(other, |a, b| a * b)
    }

    /// Multiplication by `p^n`, keeping the precision (the first map of the exact sequence).
    pub fn mul_p_power(&self, n: u32) -> Self {
        Self::new(self.p, self.precision, &(&self.residue * self.p.pow(n)))
            .expect("precision is positive")
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.p.to_bigint()).is_zero()
    }

    pub fn valuation_bound(&self) -> ValuationBound {
        if self.residue.is_zero() {
            ValuationBound::AtLeast(self.precision)
        } else {
            ValuationBound::Exact(split_power(&self.residue, self.p).0)
        }
    }

    /// Exact valuation; fails when the residue is zero at this precision.
    pub fn valuation(&self) -> Result<u32, PadicError> {
        self.valuation_bound()
            .exact()
            .ok_or(PadicError::IndeterminateValuation {
                precision: self.precision,
            })
    }

    /// Valuation with the zero residue mapped to `Infinity`.
    pub fn valuation_or_infinity(&self) -> Valuation {
        match self.valuation_bound() {
            ValuationBound::Exact(v) => Valuation::Finite(v as i64),
            ValuationBound::AtLeast(_) => Valuation::Infinity,
        }
    }

    pub fn invert_unit(&self) -> Result<Self, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::NotInvertible);
        }
        let modulus = self.modulus();
        let inv = inverse_mod(&self.residue, &modulus).ok_or(PadicError::NotInvertible)?;
        Self::new(self.p, self.precision, &inv)
    }

    /// Writes `a = p^n · t` with `t` a unit known to `N − n` digits.
    pub fn unit_decompose(&self) -> Result<(u32, PadicInt), PadicError> {
        let n = self.valuation()?;
        let t = &self.residue / self.p.pow(n);
        Ok((n, Self::new(self.p, self.precision - n, &t)?))
    }

    /// Digit string like `...2011_3 (O(3^4))`, most significant digit on the left.
    pub fn digit_string(&self) -> String {
        let sep = if self.p.get() > 10 { "." } else { "" };
        let digits: Vec<String> = self.digits().iter().rev().map(u64::to_string).collect();
        format!(
            "...{}_{} (O({}^{}))",
            digits.join(sep),
            self.p,
            self.p,
            self.precision
        )
    }

    /// The truncation sequence rendered as `(2, 2, 11, 38, 200)`.
    pub fn sequence_string(&self) -> String {
        let parts: Vec<String> = self
            .truncation_sequence()
            .iter()
            .map(BigInt::to_string)
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl Neg for &PadicInt {
    type Output = PadicInt;

    fn neg(self) -> PadicInt {
        PadicInt::new(self.p, self.precision, &-&self.residue).expect("precision is positive")
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;

    fn neg(self) -> PadicInt {
        -&self
    }
}

impl Serialize for PadicInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PadicInt", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("residue", &crate::bignum::Wrapped(&self.residue))?;
        st.end()
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digit_string())
    }
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub(crate) fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = mod_floor(a, m);
    let ext = a.extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    let x = ext.x;
    Some(if x.is_negative() {
        x + m
    } else {
        x.mod_floor(m)
    })
}
