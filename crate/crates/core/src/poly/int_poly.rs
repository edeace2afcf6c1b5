use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::parse::{parse_poly, ParseError};
use super::render::{render_terms, Term};

/// Dense polynomial over `Z`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The polynomial `T`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder of `self` by a nonzero `divisor`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let top = r.leading().unwrap().clone();
            let mut shifted = vec![BigInt::zero(); dr - dd];
            shifted.extend(divisor.coeffs.iter().map(|c| c * &top));
            r = &r.scale(&lead) - &IntPoly::new(shifted);
        }
        r
    }

    /// Primitive gcd over `Q`, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Exact division over `Z` when `divisor` divides `self` in `Q[T]` with integral quotient.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<Self> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let n = self.degree()?;
        if n < dd {
            return if self.is_zero() {
                Some(Self::zero())
            } else {
                None
            };
        }
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let (q, r) = rem[i + dd].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Resultant via the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return BigInt::zero(),
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for (i, row) in rows.iter_mut().take(n).enumerate() {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
        }
        for (i, row) in rows.iter_mut().skip(n).enumerate() {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
        }
        bareiss_determinant(rows)
    }

    /// `(-1)^{n(n-1)/2} · Res(f, f') / a_n`; zero for constants.
    pub fn discriminant(&self) -> BigInt {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return BigInt::zero(),
        };
        let res = self.resultant(&self.derivative());
        let lead = self.leading().unwrap();
        let d = res / lead;
        if (n * (n - 1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Rational roots, ascending, via the rational root test.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut f = self.clone();
        // strip the root 0 first so the constant term is nonzero
        let zeros = f.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push(BigRational::zero());
            f = IntPoly::new(f.coeffs[zeros..].to_vec());
        }
        if f.degree().unwrap_or(0) > 0 {
            let nums = divisors(&f.coeffs[0]);
            let dens = divisors(f.leading().unwrap());
            let mut candidates: Vec<BigRational> = Vec::new();
            for a in &nums {
                for b in &dens {
                    for sign in [1, -1] {
                        let q = BigRational::new(a * sign, b.clone());
                        if !candidates.contains(&q) {
                            candidates.push(q);
                        }
                    }
                }
            }
            roots.extend(
                candidates
                    .into_iter()
                    .filter(|q| f.eval_rational(q).is_zero()),
            );
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Fraction-free Gaussian elimination; exact over `Z`.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(degree, c)| Term {
                negative: c.is_negative(),
                magnitude: c.abs().to_string(),
                degree,
            });
        f.write_str(&render_terms(terms))
    }
}

impl FromStr for IntPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(src: &str) -> IntPoly {
        src.parse().unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(poly("T^2+1").to_string(), "T^2+1");
        assert_eq!(poly("T^2 - 13").to_string(), "T^2-13");
        assert_eq!(poly("2T^2+2T+2").to_string(), "2*T^2+2*T+2");
        assert_eq!(poly("-T").to_string(), "-T");
        assert_eq!(poly("0").to_string(), "0");
        assert_eq!(poly("1 - T^3").to_string(), "-T^3+1");
    }

    #[test]
    fn derivative_and_eval() {
        assert_eq!(poly("T^2-13").derivative(), poly("2*T"));
        assert_eq!(poly("T^2-13").eval(&BigInt::from(1)), BigInt::from(-12));
        assert!(IntPoly::zero().eval(&BigInt::from(5)).is_zero());
        assert!(poly("7").derivative().is_zero());
    }

    #[test]
    fn discriminants() {
        assert_eq!(poly("T^2+1").discriminant(), BigInt::from(-4));
        assert_eq!(poly("T^2-13").discriminant(), BigInt::from(52));
        assert_eq!(poly("3*T^2+T-2").discriminant(), BigInt::from(1 + 24));
        // x^3 + a x + b has discriminant -4a^3 - 27b^2
        assert_eq!(
            poly("T^3-2*T+5").discriminant(),
            BigInt::from(-4 * -8 - 27 * 25)
        );
        assert!(poly("T^2+2*T+1").discriminant().is_zero());
    }

    #[test]
    fn gcd_over_q() {
        let f = &poly("T-1") * &poly("T^2+1");
        let g = &poly("2*T-2") * &poly("T+5");
        assert_eq!(f.gcd(&g), poly("T-1"));
        let sq = &poly("T+3") * &poly("T+3");
        assert_eq!(sq.gcd(&sq.derivative()), poly("T+3"));
    }

    #[test]
    fn rational_roots() {
        let f = &(&poly("2*T-1") * &poly("T+3")) * &poly("T");
        let roots = f.rational_roots();
        assert_eq!(
            roots,
            vec![
                BigRational::from_integer(BigInt::from(-3)),
                BigRational::zero(),
                BigRational::new(BigInt::from(1), BigInt::from(2)),
            ]
        );
        assert!(poly("T^2+1").rational_roots().is_empty());
        assert!(poly("T^3-2").rational_roots().is_empty());
    }

    #[test]
    fn exact_division() {
        let f = &poly("T^2+T+1") * &poly("3*T-2");
        assert_eq!(f.div_exact(&poly("3*T-2")), Some(poly("T^2+T+1")));
        assert_eq!(poly("T^2+1").div_exact(&poly("T+1")), None);
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(f in small_poly()) {
            let text = f.to_string();
            let back: IntPoly = text.parse().unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn resultant_of_product_vanishes_on_shared_factor(f in small_poly(), g in small_poly(), h in small_poly()) {
            prop_assume!(h.degree().unwrap_or(0) >= 1);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let a = &f * &h;
            let b = &g * &h;
            prop_assert!(a.resultant(&b).is_zero());
        }
    }
}
