use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{PadicError, Prime};

/// A value of `Z ∪ {+∞}`. `Infinity` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinity => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl From<u32> for Valuation {
    fn from(n: u32) -> Self {
        Valuation::Finite(n as i64)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(n) => serializer.serialize_i64(*n),
            Valuation::Infinity => serializer.serialize_str("inf"),
        }
    }
}

/// Splits `x ≠ 0` as `p^k · u` with `p ∤ u`, returning `(k, u)`.
pub(crate) fn split_power(x: &BigInt, p: Prime) -> (u32, BigInt) {
    debug_assert!(!x.is_zero());
    let p = p.to_bigint();
    let mut k = 0;
    let mut u = x.clone();
    loop {
        let (q, r) = u.div_rem(&p);
        if !r.is_zero() {
            return (k, u);
        }
        u = q;
        k += 1;
    }
}

/// p-adic valuation of an integer; `Infinity` for zero.
pub fn vp_int(x: &BigInt, p: Prime) -> Valuation {
    if x.is_zero() {
        Valuation::Infinity
    } else {
        Valuation::Finite(split_power(x, p).0 as i64)
    }
}

/// p-adic valuation of `num / den`.
pub fn vp_rat(num: &BigInt, den: &BigInt, p: Prime) -> Result<Valuation, PadicError> {
    if den.is_zero() {
        return Err(PadicError::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let (a, _) = split_power(num, p);
    let (b, _) = split_power(den, p);
    Ok(Valuation::Finite(a as i64 - b as i64))
}

/// Valuation of an exact rational.
pub fn vp_ratio(x: &BigRational, p: Prime) -> Valuation {
    vp_rat(x.numer(), x.denom(), p).expect("BigRational denominators are nonzero")
}

/// `|x|_p = p^{-v}` as an exact rational; zero for `Infinity`.
pub fn abs_p(v: Valuation, p: Prime) -> BigRational {
    match v {
        Valuation::Infinity => BigRational::zero(),
        Valuation::Finite(n) => {
            let base = p.pow(n.unsigned_abs() as u32);
            if n >= 0 {
                BigRational::new(BigInt::one(), base)
            } else {
                BigRational::from_integer(base)
            }
        }
    }
}

/// Canonical representative of `x mod m` in `[0, m)`.
pub(crate) fn mod_floor(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    debug_assert!(!r.is_negative());
    r
}
