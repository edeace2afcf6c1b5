//! Hensel certificates, Newton lifting of roots and root search in `Z_p`.
//!
//! All comparisons are between valuations: the strong hypothesis
//! `|f(a)|_p < |f'(a)|_p^2` is `v(f(a)) > 2·v(f'(a))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::padic::{vp_int, PadicError, PadicInt, Prime, Valuation, ValuationBound};
use crate::poly::{IntPoly, PolyError, ZpPoly};

/// Default number of digits for lifted roots.
pub const DEFAULT_PRECISION: u32 = 50;

/// Default search depth when the discriminant vanishes to working precision.
pub const DEGENERATE_DEPTH: u32 = 6;

/// Upper bound on any search depth.
pub const MAX_DEPTH: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HenselError {
    #[error("increase precision: f(a) and f'(a) both vanish mod p^{precision}")]
    IncreasePrecision { precision: u32 },
    #[error("strong Hensel hypothesis fails: v(f(a)) = {} is not > 2·v(f'(a)) = 2·{}", .0.v_f, .0.v_fprime)]
    Hypothesis(Box<HenselCertificate>),
    #[error("precision exhausted: lifting to {needed} digits needs working precision {needed_working}, have {available}")]
    PrecisionExhausted {
        needed: u32,
        needed_working: u32,
        available: u32,
    },
    #[error("a nonconstant polynomial is required")]
    ConstantPolynomial,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// Valuations of `f(a)` and `f'(a)` with the two Hensel hypotheses decided.
///
/// `v_f = inf` means `f(a) ≡ 0` at the working precision; `exact_root` says
/// whether that zero is known to be exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HenselCertificate {
    pub seed: PadicInt,
    pub precision: u32,
    pub v_f: Valuation,
    pub v_fprime: Valuation,
    pub strong_ok: bool,
    pub weak_ok: bool,
    pub exact_root: bool,
}

impl HenselCertificate {
    fn decide(
        seed: PadicInt,
        precision: u32,
        v_f: Valuation,
        v_fprime: Valuation,
        exact_root: bool,
    ) -> Self {
        let strong_ok = match (v_f, v_fprime) {
            (_, Valuation::Infinity) => false,
            (Valuation::Infinity, Valuation::Finite(_)) => true,
            (Valuation::Finite(a), Valuation::Finite(e)) => a > 2 * e,
        };
        let weak_ok = v_f >= Valuation::Finite(1) && v_fprime == Valuation::Finite(0);
        debug_assert!(!weak_ok || strong_ok);
        HenselCertificate {
            seed,
            precision,
            v_f,
            v_fprime,
            strong_ok,
            weak_ok,
            exact_root,
        }
    }

    /// `v(f'(a))` when the strong hypothesis holds.
    pub fn fprime_valuation(&self) -> Option<u32> {
        match (self.strong_ok, self.v_fprime) {
            (true, Valuation::Finite(e)) => Some(e as u32),
            _ => None,
        }
    }
}

/// Certificate for `a` against `f` at the smaller of the two precisions.
pub fn certify(f: &ZpPoly, a: &PadicInt) -> Result<HenselCertificate, HenselError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(HenselError::ConstantPolynomial);
    }
    let fa = f.eval(a)?;
    let fpa = f.derivative().eval(a)?;
    let n = fa.precision();
    let (v_f, v_fprime) = match (fa.valuation_bound(), fpa.valuation_bound()) {
        (ValuationBound::AtLeast(_), ValuationBound::AtLeast(_)) => {
            return Err(HenselError::IncreasePrecision { precision: n })
        }
        (ValuationBound::Exact(v), ValuationBound::Exact(e)) => (v.into(), e.into()),
        (ValuationBound::Exact(v), ValuationBound::AtLeast(_)) => {
            // v < N ≤ v(f'(a)), so the strong inequality fails whatever f'(a) is
            (v.into(), Valuation::Infinity)
        }
        (ValuationBound::AtLeast(_), ValuationBound::Exact(e)) => {
            if n <= 2 * e {
                return Err(HenselError::IncreasePrecision { precision: n });
            }
            (Valuation::Infinity, e.into())
        }
    };
    Ok(HenselCertificate::decide(
        a.with_precision(n)?,
        n,
        v_f,
        v_fprime,
        false,
    ))
}

/// Certificate for an integer seed with valuations computed exactly over `Z`.
pub fn certify_int(
    f: &IntPoly,
    p: Prime,
    a: &BigInt,
    precision: u32,
) -> Result<HenselCertificate, HenselError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(HenselError::ConstantPolynomial);
    }
    let fa = f.eval(a);
    let fpa = f.derivative().eval(a);
    Ok(HenselCertificate::decide(
        PadicInt::from_int(a, p, precision)?,
        precision,
        vp_int(&fa, p),
        vp_int(&fpa, p),
        fa.is_zero(),
    ))
}

/// A root of `f` in `Z_p` known to `alpha.precision()` digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedRoot {
    pub alpha: PadicInt,
    /// `v(alpha − seed)`, `inf` when they agree to the output precision.
    pub distance_valuation: Valuation,
    /// `v(f'(alpha))`, equal to the certificate's `v_fprime`.
    pub fprime_valuation: Valuation,
    /// `v(f(a_k))` for each Newton iterate, capped at the working precision.
    pub trace: Vec<u32>,
    pub certificate: HenselCertificate,
}

/// Newton iteration from a seed satisfying the strong hypothesis.
///
/// The working precision `W` of `f` must be at least `target + v(f'(a))`; the
/// iteration stops once `v(f(a_k)) ≥ target + v(f'(a))`, which pins the root to
/// `target` digits.
pub fn lift(f: &ZpPoly, a: &PadicInt, target: u32) -> Result<LiftedRoot, HenselError> {
    let cert = certify(f, a)?;
    lift_certified(f, a, target, cert)
}

fn lift_certified(
    f: &ZpPoly,
    a: &PadicInt,
    target: u32,
    cert: HenselCertificate,
) -> Result<LiftedRoot, HenselError> {
    let Some(e) = cert.fprime_valuation() else {
        return Err(HenselError::Hypothesis(Box::new(cert)));
    };
    if target == 0 {
        return Err(PadicError::ZeroPrecision.into());
    }
    let p = f.prime();
    let working = f.precision().min(a.precision());
    let goal = target + e;
    if working < goal {
        return Err(HenselError::PrecisionExhausted {
            needed: target,
            needed_working: goal,
            available: working,
        });
    }
    let df = f.derivative();
    let mut x = a.with_precision(working)?;
    let mut trace = Vec::new();
    loop {
        let fx = f.eval(&x)?;
        let v = fx.valuation_bound().lower();
        if let Some(&prev) = trace.last() {
            let prev: u32 = prev;
            assert!(
                v >= working.min(2 * prev - 2 * e),
                "Newton step lost quadratic convergence: {prev} -> {v}"
            );
        }
        trace.push(v);
        if v >= goal {
            break;
        }
        let (vf, uf) = fx.unit_decompose()?;
        let (vd, ud) = df.eval(&x)?.unit_decompose()?;
        assert_eq!(vd, e, "v(f'(a_k)) stays equal to v(f'(a))");
        let q = uf.checked_mul(&ud.invert_unit()?)?;
        let delta = PadicInt::new(p, working, &(q.residue() * p.pow(vf - e)))?;
        x = x.checked_sub(&delta)?;
    }
    let fprime_valuation = match df.eval(&x)?.valuation_bound() {
        ValuationBound::Exact(v) => Valuation::from(v),
        ValuationBound::AtLeast(_) => Valuation::Infinity,
    };
    assert_eq!(
        fprime_valuation,
        Valuation::from(e),
        "|f'(alpha)| = |f'(a)|"
    );
    let alpha = x.with_precision(target)?;
    let distance_valuation = alpha
        .checked_sub(&a.with_precision(target.min(a.precision()))?)?
        .valuation_or_infinity();
    // |alpha − a| = |f(a)/f'(a)|, read at the output precision
    let expected = match cert.v_f {
        Valuation::Finite(v) if v - (e as i64) < target as i64 => Valuation::Finite(v - e as i64),
        _ => Valuation::Infinity,
    };
    assert_eq!(distance_valuation, expected, "|alpha − a| = |f(a)/f'(a)|");
    Ok(LiftedRoot {
        alpha,
        distance_valuation,
        fprime_valuation,
        trace,
        certificate: cert,
    })
}

/// Working precision that makes [`lift`] to `target` digits succeed for every simple root.
pub fn working_precision(f: &IntPoly, p: Prime, target: u32) -> u32 {
    let disc = f.discriminant();
    let margin = if disc.is_zero() {
        let g = squarefree_part(f);
        2 * vp_int(&g.discriminant(), p).finite().unwrap_or(0) as u32 + 8
    } else {
        vp_int(&disc, p).finite().unwrap_or(0) as u32 + 1
    };
    target + margin
}

fn squarefree_part(f: &IntPoly) -> IntPoly {
    let g = f.gcd(&f.derivative());
    f.primitive_part()
        .scale(&g.leading().cloned().unwrap_or_else(|| BigInt::from(1)))
        .div_exact(&g)
        .map(|h| h.primitive_part())
        .unwrap_or_else(|| f.clone())
}

/// Lifts an integer seed for an integer polynomial, choosing the working precision.
pub fn lift_int_poly(
    f: &IntPoly,
    p: Prime,
    seed: &BigInt,
    target: u32,
) -> Result<LiftedRoot, HenselError> {
    let cert = certify_int(f, p, seed, target)?;
    let e = match cert.fprime_valuation() {
        Some(e) => e,
        None => return Err(HenselError::Hypothesis(Box::new(cert))),
    };
    let working = working_precision(f, p, target).max(target + e);
    let zf = ZpPoly::from_int_poly(f, p, working)?;
    let a = PadicInt::from_int(seed, p, working)?;
    lift_certified(&zf, &a, target, cert)
}

/// Roots found by [`roots_in_zp`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSearch {
    pub depth: u32,
    /// Certified simple roots, ordered by seed residue.
    pub simple: Vec<LiftedRoot>,
    /// Residues mod `p^depth` at which `f` vanishes to working precision without
    /// a certificate: candidate multiple roots.
    pub multiple: Vec<PadicInt>,
}

/// Search depth used when none is given: `v_p(disc f) + 1`, or
/// [`DEGENERATE_DEPTH`] when the discriminant vanishes to working precision.
pub fn default_depth(f: &ZpPoly) -> u32 {
    let disc = f.to_int_poly().discriminant();
    let modulus = f.prime().pow(f.precision());
    if (&disc % &modulus).is_zero() {
        return DEGENERATE_DEPTH;
    }
    let v = vp_int(&disc, f.prime()).finite().unwrap_or(0) as u32;
    (v + 1).min(MAX_DEPTH)
}

/// All roots of `f` in `Z_p`, found by walking residues mod `p, p^2, …` that stay
/// roots and lifting each seed that passes the strong hypothesis.
pub fn roots_in_zp(f: &ZpPoly, depth: Option<u32>, target: u32) -> Result<RootSearch, HenselError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(HenselError::ConstantPolynomial);
    }
    let depth = depth
        .unwrap_or_else(|| default_depth(f))
        .clamp(1, MAX_DEPTH);
    let p = f.prime();
    let q = BigInt::from(p.get());
    let working = f.precision();
    let mut simple: BTreeMap<BigInt, LiftedRoot> = BTreeMap::new();
    let mut multiple = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    // depth-first over residues r mod p^m, children in ascending order
    let mut stack: Vec<(BigInt, u32)> = vec![(BigInt::zero(), 0)];
    while let Some((r, m)) = stack.pop() {
        if m > 0 {
            let seed = PadicInt::new(p, working, &r)?;
            match certify(f, &seed) {
                Ok(cert) if cert.strong_ok => {
                    let e = cert.fprime_valuation().expect("strong certificate");
                    let root = lift_certified(f, &seed, target, cert)?;
                    let key = root.alpha.residue().clone();
                    if seen.insert(key) {
                        simple.insert(r.clone(), root);
                    }
                    if e < m {
                        continue;
                    }
                }
                Ok(_) | Err(HenselError::IncreasePrecision { .. }) => {}
                Err(other) => return Err(other),
            }
            if m == depth {
                if f.eval(&seed)?.is_zero_at_precision() {
                    multiple.push(PadicInt::new(p, depth, &r)?);
                }
                continue;
            }
        }
        let step = q.pow(m);
        let next_modulus = p.pow(m + 1);
        for j in (0..p.get()).rev() {
            let child = &r + &step * BigInt::from(j);
            let value = f.eval(&PadicInt::new(p, working, &child)?)?;
            if (value.residue() % &next_modulus).is_zero() {
                stack.push((child, m + 1));
            }
        }
    }
    multiple.sort_by(|a, b| a.residue().cmp(b.residue()));
    Ok(RootSearch {
        depth,
        simple: simple.into_values().collect(),
        multiple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn zp(src: &str, p: u64, n: u32) -> ZpPoly {
        ZpPoly::from_int_poly(&src.parse().unwrap(), prime(p), n).unwrap()
    }

    fn seed(a: i64, p: u64, n: u32) -> PadicInt {
        PadicInt::from_i64(a, prime(p), n).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let c = certify(&zp("T^2-13", 3, 10), &seed(1, 3, 10)).unwrap();
        assert_eq!(
            (c.v_f, c.v_fprime),
            (Valuation::Finite(1), Valuation::Finite(0))
        );
        assert!(c.weak_ok && c.strong_ok);

        let f: IntPoly = "T^2-1".parse().unwrap();
        let c = certify_int(&f, prime(5), &BigInt::from(1), 10).unwrap();
        assert_eq!(c.v_f, Valuation::Infinity);
        assert!(c.exact_root && c.strong_ok);

        let c = certify(&zp("T^2+1", 2, 10), &seed(1, 2, 10)).unwrap();
        assert_eq!(
            (c.v_f, c.v_fprime),
            (Valuation::Finite(1), Valuation::Finite(1))
        );
        assert!(!c.strong_ok && !c.weak_ok);
    }

    #[test]
    fn certificate_needs_precision() {
        // T^2 at 0: both values vanish at every precision
        assert!(matches!(
            certify(&zp("T^2", 3, 5), &seed(0, 3, 5)),
            Err(HenselError::IncreasePrecision { .. })
        ));
        // f(a) ≡ 0 mod 2^2 but v(f'(a)) = 1 needs more than 2 digits to certify
        assert!(matches!(
            certify(&zp("T^2-17", 2, 2), &seed(1, 2, 2)),
            Err(HenselError::IncreasePrecision { .. })
        ));
        let c = certify(&zp("T^2-17", 2, 3), &seed(1, 2, 3)).unwrap();
        assert!(c.strong_ok && !c.weak_ok);
    }

    #[test]
    fn lift_examples() {
        let r = lift(&zp("T^2-13", 3, 10), &seed(1, 3, 10), 3).unwrap();
        assert_eq!(r.alpha.residue(), &BigInt::from(16));
        assert_eq!(r.alpha.precision(), 3);

        let r = lift(&zp("T^2+1", 5, 4), &seed(2, 5, 4), 2).unwrap();
        assert_eq!(r.alpha.residue(), &BigInt::from(7));

        let f: IntPoly = "T^2-13".parse().unwrap();
        let r = lift_int_poly(&f, prime(3), &BigInt::from(1), 50).unwrap();
        let m = prime(3).pow(50);
        let a = r.alpha.residue();
        assert_eq!((a * a - 13) % &m, BigInt::zero());
        assert_eq!(a % 3, BigInt::from(1));
    }

    #[test]
    fn lift_with_positive_derivative_valuation() {
        // 17 ≡ 1 mod 8 is a square in Z_2; v(f'(1)) = 1
        let f: IntPoly = "T^2-17".parse().unwrap();
        let r = lift_int_poly(&f, prime(2), &BigInt::from(1), 20).unwrap();
        assert_eq!(r.fprime_valuation, Valuation::Finite(1));
        let a = r.alpha.residue();
        assert_eq!((a * a - 17) % prime(2).pow(20), BigInt::zero());
        assert_eq!(r.distance_valuation, Valuation::Finite(3));
    }

    #[test]
    fn lift_errors() {
        let err = lift(&zp("T^2+1", 2, 10), &seed(1, 2, 10), 5).unwrap_err();
        assert!(matches!(err, HenselError::Hypothesis(_)));
        let err = lift(&zp("T^2-17", 2, 6), &seed(1, 2, 6), 6).unwrap_err();
        assert!(matches!(err, HenselError::PrecisionExhausted { .. }));
    }

    #[test]
    fn root_search_examples() {
        let rs = roots_in_zp(&zp("T^2-13", 3, 12), Some(1), 10).unwrap();
        assert_eq!(rs.simple.len(), 2);
        let a = rs.simple[0].alpha.residue();
        let b = rs.simple[1].alpha.residue();
        assert_eq!((a + b) % prime(3).pow(10), BigInt::zero());

        assert!(roots_in_zp(&zp("T^2+1", 7, 12), Some(2), 10)
            .unwrap()
            .simple
            .is_empty());

        let rs = roots_in_zp(&zp("T-5", 3, 12), Some(1), 10).unwrap();
        assert_eq!(rs.simple.len(), 1);
        assert_eq!(rs.simple[0].alpha.residue(), &BigInt::from(5));

        let rs = roots_in_zp(&zp("T^2-2*T+1", 3, 12), None, 10).unwrap();
        assert!(rs.simple.is_empty());
        assert_eq!(rs.multiple.len(), 1);
        assert_eq!(rs.multiple[0].residue(), &BigInt::from(1));
    }
}
