use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::render::{render_terms, Term};
use super::{IntPoly, PolyError};
use crate::padic::Prime;

/// Dense polynomial over `F_p`, coefficients in `[0, p)`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: Prime,
    coeffs: Vec<u64>,
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    add_mod(a, p - b % p, p)
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse in `F_p` by Fermat; `a` must be nonzero mod `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: Prime, coeffs: Vec<u64>) -> Self {
        let q = p.get();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % q).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Reduction of an integer polynomial mod `p`.
    pub fn from_int_poly(f: &IntPoly, p: Prime) -> Self {
        let q = p.to_bigint();
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&q).to_u64().expect("residue below p"))
                .collect(),
        )
    }

    pub fn zero(p: Prime) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: Prime) -> Self {
        Self::new(p, vec![1])
    }

    /// The polynomial `T`.
    pub fn t(p: Prime) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// `T + c`.
    pub fn linear(p: Prime, c: u64) -> Self {
        Self::new(p, vec![c, 1])
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    /// Lift to integer coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub(crate) fn check_same_prime(&self, other: &FpPoly) -> Result<(), PolyError> {
        if self.p != other.p {
            return Err(PolyError::PrimeMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let q = self.p.get();
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, q), c, q))
    }

    pub fn derivative(&self) -> Self {
        let q = self.p.get();
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % q, q))
                .collect(),
        )
    }

    pub fn scale(&self, k: u64) -> Self {
        let q = self.p.get();
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod(c, k, q)).collect(),
        )
    }

    /// `(monic, leading coefficient)`; the zero polynomial is returned as is with unit 0.
    pub fn monic(&self) -> (Self, u64) {
        match self.leading() {
            None => (self.clone(), 0),
            Some(lc) => (self.scale(inv_mod(lc, self.p.get())), lc),
        }
    }

    pub fn add(&self, other: &FpPoly) -> Self {
        let q = self.p.get();
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| add_mod(self.coeff(i), other.coeff(i), q))
                .collect(),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> Self {
        let q = self.p.get();
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| sub_mod(self.coeff(i), other.coeff(i), q))
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let q = self.p.get();
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, q), q);
            }
        }
        Self::new(self.p, out)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &FpPoly) -> (Self, Self) {
        let q = self.p.get();
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = inv_mod(divisor.leading().unwrap(), q);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv, q);
            quot[i] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = sub_mod(rem[i + j], mul_mod(c, d, q), q);
                }
            }
        }
        rem.truncate(dd);
        (Self::new(self.p, quot), Self::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> Self {
        self.div_rem(divisor).1
    }

    /// `self^exp mod modulus` by repeated squaring.
    pub fn pow_mod(&self, exp: &BigInt, modulus: &FpPoly) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for bit in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(bit) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Ordering used for factor lists: degree, then coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &FpPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// The single root of a linear polynomial.
    pub fn linear_root(&self) -> Option<u64> {
        if self.degree() != Some(1) {
            return None;
        }
        let q = self.p.get();
        let (m, _) = self.monic();
        Some((q - m.coeffs[0]) % q)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(degree, c)| Term {
                negative: false,
                magnitude: c.to_string(),
                degree,
            });
        f.write_str(&render_terms(terms))
    }
}

impl Serialize for FpPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn fp(q: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p(q), c.to_vec())
    }

    #[test]
    fn reduction_mod_p() {
        let seven = p(7);
        let f = IntPoly::from_i64s(&[7, 0, 1]);
        assert_eq!(FpPoly::from_int_poly(&f, seven), fp(7, &[0, 0, 1]));
        let g = IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(FpPoly::from_int_poly(&g, p(2)), fp(2, &[1, 0, 1]));
        let h = IntPoly::from_i64s(&[0, 1, 0, 7]);
        assert_eq!(FpPoly::from_int_poly(&h, seven), fp(7, &[0, 1]));
        let neg = IntPoly::from_i64s(&[-13, 0, 1]);
        assert_eq!(FpPoly::from_int_poly(&neg, p(5)).to_string(), "T^2+2");
    }

    #[test]
    fn eval_and_derivative() {
        assert_eq!(fp(5, &[1, 0, 1]).eval(2), 0);
        assert_eq!(fp(5, &[1, 0, 1]).eval(1), 2);
        // d/dT T^5 vanishes in characteristic 5
        assert!(fp(5, &[0, 0, 0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(fp(7, &[3, 2, 1]).derivative(), fp(7, &[2, 2]));
    }

    #[test]
    fn division() {
        let f = fp(5, &[1, 0, 1]);
        let g = fp(5, &[2, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q.mul(&g), f);
        let (q, r) = fp(7, &[1, 2, 3, 4]).div_rem(&fp(7, &[5, 1]));
        assert_eq!(q.mul(&fp(7, &[5, 1])).add(&r), fp(7, &[1, 2, 3, 4]));
    }

    #[test]
    fn frobenius_power() {
        // T^(p) mod (T^2+1) over F_7 is -T since 7 ≡ 3 mod 4
        let f = fp(7, &[1, 0, 1]);
        let x = FpPoly::t(p(7)).pow_mod(&BigInt::from(7), &f);
        assert_eq!(x, fp(7, &[0, 6]));
        let x49 = FpPoly::t(p(7)).pow_mod(&BigInt::from(49), &f);
        assert_eq!(x49, FpPoly::t(p(7)));
    }

    #[test]
    fn rendering_has_no_minus_signs() {
        assert_eq!(fp(5, &[3, 1]).to_string(), "T+3");
        assert_eq!(fp(3, &[2, 2, 1]).to_string(), "T^2+2*T+2");
        assert_eq!(FpPoly::zero(p(3)).to_string(), "0");
        assert_eq!(fp(5, &[3, 1]).linear_root(), Some(2));
    }
}
