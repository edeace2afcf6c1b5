use num_bigint::BigInt;
use serde::Serialize;

use super::{FpPoly, PolyError};
use crate::padic::Prime;

/// Largest `p^d` that [`enumerate_irreducibles`] will scan by default.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// `unit · Π factor^multiplicity` with monic irreducible factors in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpFactorization {
    pub p: Prime,
    pub unit: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl FpFactorization {
    pub fn product(&self) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::new(self.p, vec![self.unit]), |acc, (f, m)| {
                acc.mul(&f.pow(*m))
            })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Sum of `deg × multiplicity`, which equals the degree of the factored polynomial.
    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, m)| f.degree().unwrap_or(0) * *m as usize)
            .sum()
    }
}

/// Monic gcd; `gcd(f, 0)` is `f` made monic and `gcd(0, 0)` is `0`.
pub fn fp_gcd(f: &FpPoly, g: &FpPoly) -> Result<FpPoly, PolyError> {
    f.check_same_prime(g)?;
    Ok(gcd(f, g))
}

fn gcd(f: &FpPoly, g: &FpPoly) -> FpPoly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic().0
}

fn div(f: &FpPoly, g: &FpPoly) -> FpPoly {
    f.div_rem(g).0
}

/// Irreducibility of a nonconstant polynomial: `T^{p^d} ≡ T mod f` and
/// `gcd(T^{p^{d/q}} − T, f) = 1` for every prime `q | d`.
pub fn fp_is_irreducible(f: &FpPoly) -> Result<bool, PolyError> {
    let d = match f.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(0) => return Err(PolyError::ConstantPolynomial),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let p = f.prime();
    let (f, _) = f.monic();
    let t = FpPoly::t(p);
    let frob = frobenius_powers(&f, d);
    if frob[d] != t {
        return Ok(false);
    }
    for q in prime_divisors(d) {
        let h = frob[d / q].sub(&t);
        if !gcd(&h, &f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[T^{p^0}, T^{p^1}, …, T^{p^k}]` reduced mod `f`.
fn frobenius_powers(f: &FpPoly, k: usize) -> Vec<FpPoly> {
    let p = BigInt::from(f.prime().get());
    let mut out = Vec::with_capacity(k + 1);
    let mut x = FpPoly::t(f.prime()).rem(f);
    out.push(x.clone());
    for _ in 0..k {
        x = x.pow_mod(&p, f);
        out.push(x.clone());
    }
    out
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Complete factorization: squarefree decomposition, then distinct-degree and
/// deterministic equal-degree splitting.
pub fn fp_factor(f: &FpPoly) -> Result<FpFactorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = f.prime();
    let (monic, unit) = f.monic();
    let mut factors: Vec<(FpPoly, u32)> = Vec::new();
    for (part, m) in squarefree_decomposition(&monic) {
        for g in split_squarefree(&part) {
            factors.push((g, m));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(FpFactorization { p, unit, factors })
}

/// Pairs `(g, m)` with each `g` squarefree and the `g` pairwise coprime, `f = Π g^m`.
fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.prime();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(f)) {
            out.push((g, m * p.get() as u32));
        }
        return out;
    }
    let mut c = gcd(f, &df);
    let mut w = div(f, &c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd(&w, &c);
        let z = div(&w, &y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = div(&c, &w);
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p.get() as u32));
        }
    }
    out
}

/// For `f` with `f' = 0`, the `g` with `g^p = f`. Frobenius fixes `F_p`, so only
/// the exponents are divided.
fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.prime().get() as usize;
    FpPoly::new(f.prime(), f.coeffs().iter().step_by(p).copied().collect())
}

/// Irreducible factors of a monic squarefree polynomial.
fn split_squarefree(f: &FpPoly) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (d, part) in distinct_degree(f) {
        equal_degree_split(&part, d, &mut out);
    }
    out
}

/// Groups the factors of a monic squarefree `f` by degree: `(d, product of degree-d factors)`.
fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = BigInt::from(f.prime().get());
    let t = FpPoly::t(f.prime());
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut x = t.clone();
    let mut d = 0;
    while let Some(n) = rest.degree() {
        if n == 0 {
            break;
        }
        d += 1;
        if 2 * d > n {
            out.push((n, rest.clone()));
            break;
        }
        x = x.pow_mod(&p, &rest);
        let g = gcd(&rest, &x.sub(&t));
        if !g.is_one() {
            rest = div(&rest, &g);
            x = x.rem(&rest);
            out.push((d, g));
        }
    }
    out
}

/// Splits a product of distinct degree-`d` irreducibles. Test polynomials `a` run
/// through every nonconstant polynomial in a fixed order; by the Chinese remainder
/// theorem some `a` separates any two factors, so the search ends. For odd `p` the
/// splitter is `gcd(a^{(p^d−1)/2} − 1, h)`, for `p = 2` it is the trace
/// `gcd(a + a^2 + … + a^{2^{d−1}}, h)`.
fn equal_degree_split(h: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    let n = h.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(h.clone());
        return;
    }
    let p = h.prime();
    let q = p.get();
    let half = (p.pow(d as u32) - 1u32) / 2u32;
    let two = BigInt::from(2u32);
    for index in q.. {
        let mut coeffs = Vec::new();
        let mut rest = index;
        while rest > 0 {
            coeffs.push(rest % q);
            rest /= q;
        }
        let a = FpPoly::new(p, coeffs);
        if a.degree().is_some_and(|k| k >= n) {
            break;
        }
        let probe = if q == 2 {
            let mut acc = FpPoly::zero(p);
            let mut power = a.rem(h);
            for _ in 0..d {
                acc = acc.add(&power);
                power = power.pow_mod(&two, h);
            }
            acc
        } else {
            a.pow_mod(&half, h).sub(&FpPoly::one(p))
        };
        let g = gcd(&probe, h);
        if g.degree().is_some_and(|k| k > 0 && k < n) {
            let other = div(h, &g);
            equal_degree_split(&g, d, out);
            equal_degree_split(&other, d, out);
            return;
        }
    }
    unreachable!("some test polynomial of degree below {n} splits {h}");
}

/// Monic irreducibles over `F_p` of degree at most `d`, in canonical order.
pub fn enumerate_irreducibles(p: Prime, d: usize) -> Result<Vec<FpPoly>, PolyError> {
    enumerate_irreducibles_capped(p, d, DEFAULT_ENUMERATION_CAP)
}

/// As [`enumerate_irreducibles`], refusing when `p^d` exceeds `cap`.
pub fn enumerate_irreducibles_capped(
    p: Prime,
    d: usize,
    cap: u64,
) -> Result<Vec<FpPoly>, PolyError> {
    if d == 0 {
        return Err(PolyError::ConstantPolynomial);
    }
    let mut out = Vec::new();
    for k in 1..=d {
        out.extend(irreducibles_of_degree(p, k, cap)?);
    }
    Ok(out)
}

fn irreducibles_of_degree(p: Prime, d: usize, cap: u64) -> Result<Vec<FpPoly>, PolyError> {
    let q = p.get();
    let count = u32::try_from(d)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .filter(|&n| n <= cap)
        .ok_or(PolyError::SizeCap {
            what: "enumeration of p^d polynomials",
            size: q.saturating_pow(d.min(64) as u32),
            cap,
        })?;
    let mut out = Vec::new();
    for index in 0..count {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut rest = index;
        for _ in 0..d {
            coeffs.push(rest % q);
            rest /= q;
        }
        coeffs.push(1);
        let f = FpPoly::new(p, coeffs);
        if d == 1 || (f.coeff(0) != 0 && fp_is_irreducible(&f)?) {
            out.push(f);
        }
    }
    out.sort_by(FpPoly::canonical_cmp);
    Ok(out)
}
