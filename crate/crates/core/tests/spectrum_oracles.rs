//! Irreducibility, classification and fiber behavior against independent brute force.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use zpspec::hensel::{roots_in_zp, working_precision};
use zpspec::padic::{is_prime, vp_int, PadicNum, Prime};
use zpspec::poly::{enumerate_irreducibles, fp_is_irreducible, FpPoly, IntPoly, ZpPoly};
use zpspec::spectrum::{
    classify_ideal, fiber_behavior, qp_irreducible, qp_is_square, Certificate, FiberReport,
    FiberVerdict, Generators, ResidueDescriptor, SpecPoint,
};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn has_root_in_zp(f: &IntPoly, p: Prime) -> bool {
    let zf = ZpPoly::from_int_poly(f, p, working_precision(f, p, 10)).unwrap();
    !roots_in_zp(&zf, None, 10).unwrap().simple.is_empty()
}

fn disc_is_square(d: &BigInt, p: Prime) -> bool {
    let v = vp_int(d, p).finite().unwrap() as u32;
    qp_is_square(&PadicNum::from_int(d, p, v + 4).unwrap()).unwrap()
}

#[test]
fn quadratic_consistency_three_paths() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for b in -9i64..=9 {
            for c in -9i64..=9 {
                let f = IntPoly::from_i64s(&[c, b, 1]);
                let disc = f.discriminant();
                if disc.is_zero() {
                    continue;
                }
                let verdict = qp_irreducible(&f, prime(p)).unwrap();
                let rooted = has_root_in_zp(&f, prime(p));
                let square = disc_is_square(&disc, prime(p));
                assert_eq!(verdict.is_reducible(), rooted, "{f} at p={p}");
                assert_eq!(rooted, square, "{f} at p={p}");
            }
        }
    }
}

#[test]
fn minus_one_is_a_square_exactly_when_p_is_1_mod_4() {
    let f = IntPoly::from_i64s(&[1, 0, 1]);
    for p in (2u64..=97).filter(|&n| is_prime(n)) {
        let v = qp_irreducible(&f, prime(p)).unwrap();
        if p == 2 {
            assert!(v.is_irreducible());
        } else {
            assert_eq!(v.is_reducible(), p % 4 == 1, "p={p}");
        }
    }
}

#[test]
fn squares_match_brute_force_mod_p5() {
    for p in [2u64, 3, 5, 7] {
        let m = p.pow(5);
        let squares: BTreeSet<u64> = (0..m).map(|x| x * x % m).collect();
        for u in (1..m).filter(|u| u % p != 0) {
            let x = PadicNum::from_int(&BigInt::from(u), prime(p), 5).unwrap();
            assert_eq!(
                qp_is_square(&x).unwrap(),
                squares.contains(&u),
                "{u} mod {p}^5"
            );
            let shifted = PadicNum::from_int(&(BigInt::from(u) * p * p), prime(p), 5).unwrap();
            assert_eq!(qp_is_square(&shifted).unwrap(), squares.contains(&u));
            let odd = PadicNum::from_int(&(BigInt::from(u) * p), prime(p), 5).unwrap();
            assert!(!qp_is_square(&odd).unwrap());
        }
    }
}

/// `F_p[T]/(f)` for monic `f` of degree `d`, elements as coefficient arrays.
struct Quotient {
    p: u64,
    f: Vec<u64>,
}

impl Quotient {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.f.len() - 1;
        let mut prod = vec![0u64; 2 * d];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for k in (d..prod.len()).rev() {
            let top = prod[k];
            if top != 0 {
                for i in 0..d {
                    prod[k - d + i] = (prod[k - d + i] + (self.p - top) * self.f[i]) % self.p;
                }
                prod[k] = 0;
            }
        }
        prod.truncate(d);
        prod
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let d = self.f.len() - 1;
        let count = self.p.pow(d as u32);
        (1..count)
            .map(|mut n| {
                (0..d)
                    .map(|_| {
                        let digit = n % self.p;
                        n /= self.p;
                        digit
                    })
                    .collect()
            })
            .collect()
    }

    fn has_zero_divisors(&self) -> bool {
        let elems = self.elements();
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i..] {
                if self.mul(a, b).iter().all(|&c| c == 0) {
                    return true;
                }
            }
        }
        false
    }
}

#[test]
fn residue_fields_have_no_zero_divisors() {
    for p in [2u64, 3, 5, 7] {
        for d in 1..=3u32 {
            for index in 0..p.pow(d) {
                let mut coeffs: Vec<u64> = (0..d).map(|k| index / p.pow(k) % p).collect();
                coeffs.push(1);
                let f = FpPoly::new(prime(p), coeffs.clone());
                let c = classify_ideal(prime(p), &Generators::p_and(f.to_int_poly())).unwrap();
                let brute = Quotient { p, f: coeffs }.has_zero_divisors();
                match (&c.point, &c.residue) {
                    (
                        Some(SpecPoint::ClosedPoint { f: g, .. }),
                        ResidueDescriptor::FiniteField { order, degree },
                    ) => {
                        assert!(!brute, "{f} mod {p}");
                        assert_eq!(*degree, d as usize);
                        assert_eq!(*order, BigInt::from(p.pow(d)));
                        assert!(fp_is_irreducible(g).unwrap());
                    }
                    (None, ResidueDescriptor::NonDomain { .. }) => assert!(brute, "{f} mod {p}"),
                    other => panic!("{f} mod {p}: {other:?}"),
                }
            }
        }
    }
}

/// Residues mod `p^m` that are roots mod `p^m`, grown digit by digit.
fn roots_mod(coeffs: &[i64], p: i128, m: u32) -> Vec<i128> {
    let eval = |x: i128, modulus: i128| {
        coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| (acc * x + c as i128).rem_euclid(modulus))
    };
    let mut level: Vec<i128> = (0..p).filter(|&x| eval(x, p) == 0).collect();
    for k in 1..m {
        let step = p.pow(k);
        level = level
            .iter()
            .flat_map(|&r| (0..p).map(move |j| r + j * step))
            .filter(|&x| eval(x, step * p) == 0)
            .collect();
    }
    level
}

#[test]
fn gauss_direction_for_quadratics() {
    // With a unit leading coefficient any factorization over Z_p is into linear factors
    // with unit leads, and (2ax+b)^2 = disc + 4a·f(x) shows a root mod p^(v(disc)+v(4)+1)
    // satisfies the strong hypothesis, so roots mod that power decide Z_p-irreducibility.
    for p in [2u64, 3, 5, 7] {
        for a in (-9i64..=9).filter(|a| a % p as i64 != 0) {
            for b in -9i64..=9 {
                for c in -9i64..=9 {
                    let f = IntPoly::from_i64s(&[c, b, a]);
                    let verdict = qp_irreducible(&f, prime(p)).unwrap();
                    let disc = f.discriminant();
                    if disc.is_zero() {
                        assert!(verdict.is_reducible(), "{f}");
                        continue;
                    }
                    let v = vp_int(&disc, prime(p)).finite().unwrap() as u32;
                    let m = v + if p == 2 { 3 } else { 1 };
                    let zp_reducible = !roots_mod(&[c, b, a], p as i128, m).is_empty();
                    assert_eq!(verdict.is_reducible(), zp_reducible, "{f} at p={p}");
                }
            }
        }
    }
}

#[test]
fn eisenstein_family_is_certified() {
    for p in [2i64, 3, 5, 7, 11] {
        let f = IntPoly::from_i64s(&[p, 0, 1]);
        let v = qp_irreducible(&f, prime(p as u64)).unwrap();
        assert_eq!(v.certificate(), Some(Certificate::Eisenstein), "T^2+{p}");
    }
    let v = qp_irreducible(&IntPoly::from_i64s(&[-3, 0, 1]), prime(3)).unwrap();
    assert_eq!(v.certificate(), Some(Certificate::Eisenstein));
}

#[test]
fn classification_is_total_and_exclusive() {
    for p in [2u64, 3, 5] {
        let q = prime(p);
        assert_eq!(
            classify_ideal(q, &Generators::zero())
                .unwrap()
                .point
                .unwrap()
                .kind(),
            "generic-point"
        );
        assert_eq!(
            classify_ideal(q, &Generators::p())
                .unwrap()
                .point
                .unwrap()
                .kind(),
            "special-fiber-generic"
        );
        for a in [1i64, 2, 3] {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    let f = IntPoly::from_i64s(&[c, b, a]);
                    if f.content() % p == BigInt::zero() {
                        continue;
                    }
                    let h = classify_ideal(q, &Generators::f(f.clone())).unwrap();
                    match (&h.point, &h.residue) {
                        (
                            Some(SpecPoint::HorizontalPrime { certificate, .. }),
                            ResidueDescriptor::LocalFieldExtension { degree },
                        ) => {
                            assert_eq!(*degree, 2);
                            assert_ne!(*certificate, Certificate::NoRationalRoot);
                            assert!(qp_irreducible(&f, q).unwrap().is_irreducible());
                        }
                        (None, ResidueDescriptor::NonDomain { .. }) => {
                            assert!(qp_irreducible(&f, q).unwrap().is_reducible())
                        }
                        other => panic!("({f}) at p={p}: {other:?}"),
                    }
                    let reduced = FpPoly::from_int_poly(&f, q);
                    match classify_ideal(q, &Generators::p_and(f.clone())) {
                        Ok(c) => match c.point {
                            Some(SpecPoint::ClosedPoint { .. }) => {
                                assert!(fp_is_irreducible(&reduced).unwrap())
                            }
                            Some(SpecPoint::SpecialFiberGeneric { .. }) => {
                                assert!(reduced.is_zero())
                            }
                            None => assert!(!fp_is_irreducible(&reduced).unwrap()),
                            Some(other) => panic!("{other:?}"),
                        },
                        Err(_) => assert_eq!(reduced.degree(), Some(0)),
                    }
                }
            }
        }
    }
}

#[test]
fn closed_points_biject_with_irreducibles() {
    for p in [2u64, 3] {
        for d in 1..=3 {
            for g in enumerate_irreducibles(prime(p), d).unwrap() {
                let c = classify_ideal(prime(p), &Generators::p_and(g.to_int_poly())).unwrap();
                assert_eq!(
                    c.point,
                    Some(SpecPoint::ClosedPoint {
                        p: prime(p),
                        f: g.clone()
                    })
                );
            }
        }
    }
}

fn nonconstant_case() -> impl Strategy<Value = (Vec<i64>, u64)> {
    (
        prop::collection::vec(-50i64..=50, 2..7),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
    )
        .prop_filter("nonconstant", |(c, _)| c.iter().skip(1).any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fiber_degree_is_conserved((coeffs, p) in nonconstant_case()) {
        let f = IntPoly::from_i64s(&coeffs);
        let row = fiber_behavior(&f, prime(p)).unwrap();
        let reduced = FpPoly::from_int_poly(&f, prime(p));
        let expected = reduced.degree().unwrap_or(0);
        prop_assert_eq!(FiberReport::factored_degree(&row), expected);
        match &row.degree_drop {
            Some(drop) => {
                prop_assert_eq!(drop.from, f.degree().unwrap());
                prop_assert_eq!(drop.to, expected);
            }
            None => prop_assert!(reduced.is_zero() || expected == f.degree().unwrap()),
        }
        match &row.verdict {
            FiberVerdict::Split { factors, roots } => {
                prop_assert!(factors.iter().all(|s| s.multiplicity == 1));
                prop_assert!(roots.iter().all(|&r| reduced.eval(r) == 0));
            }
            FiberVerdict::Tangent { multiplicity, .. } => prop_assert!(*multiplicity >= 2),
            FiberVerdict::Blip { factor, residue_order } => {
                prop_assert!(fp_is_irreducible(factor).unwrap());
                let d = factor.degree().unwrap();
                prop_assert!(d >= 2);
                prop_assert_eq!(residue_order.clone(), BigInt::from(p).pow(d as u32));
            }
            FiberVerdict::Disjoint { .. } => prop_assert_eq!(expected, 0),
            FiberVerdict::ContainedInFiber => prop_assert!(reduced.is_zero()),
        }
    }
}
