//! Brute-force cross-checks for the F_p algorithms over small primes.

use proptest::prelude::*;
use zpspec::padic::Prime;
use zpspec::poly::{
    enumerate_irreducibles, fp_factor, fp_is_irreducible, parse_poly, FpPoly, IntPoly, ZpPoly,
};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// Every polynomial over F_p of exact degree `d` with leading coefficient `lead`.
fn all_with_degree(p: u64, d: usize, lead: u64) -> Vec<FpPoly> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut index| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(index % p);
                index /= p;
            }
            coeffs.push(lead);
            FpPoly::new(prime(p), coeffs)
        })
        .collect()
}

fn monic_up_to(p: u64, d: usize) -> Vec<FpPoly> {
    (1..=d).flat_map(|k| all_with_degree(p, k, 1)).collect()
}

/// Irreducible iff no monic polynomial of degree in `1..=d/2` divides it.
fn trial_division_irreducible(f: &FpPoly) -> bool {
    let d = f.degree().unwrap();
    let p = f.prime().get();
    monic_up_to(p, d / 2)
        .iter()
        .all(|g| !f.div_rem(g).1.is_zero())
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            n /= q;
            if n % q == 0 {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `d` over F_p: `(1/d) Σ_{e|d} μ(d/e) p^e`.
fn necklace(p: u64, d: usize) -> u64 {
    let sum: i64 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(d / e) * (p as i64).pow(e as u32))
        .sum();
    (sum / d as i64) as u64
}

#[test]
fn necklace_oracle_sanity() {
    assert_eq!(necklace(2, 4), 3);
    assert_eq!(necklace(3, 3), 8);
    assert_eq!(necklace(3, 2), 3);
    assert_eq!(necklace(5, 1), 5);
}

#[test]
fn irreducibility_matches_trial_division() {
    for p in PRIMES {
        for f in monic_up_to(p, 4) {
            assert_eq!(
                fp_is_irreducible(&f).unwrap(),
                trial_division_irreducible(&f),
                "{f} over F_{p}"
            );
        }
    }
}

#[test]
fn factorization_round_trips_exhaustively() {
    for p in PRIMES {
        for d in 0..=4 {
            for lead in 1..p {
                for f in all_with_degree(p, d, lead) {
                    let fac = fp_factor(&f).unwrap();
                    assert_eq!(fac.product(), f, "round trip of {f} over F_{p}");
                    assert_eq!(fac.unit, lead);
                    assert_eq!(fac.total_degree(), d);
                    for (g, m) in &fac.factors {
                        assert!(*m >= 1);
                        assert!(g.is_monic());
                        assert!(trial_division_irreducible(g), "{g} is not irreducible");
                    }
                    for pair in fac.factors.windows(2) {
                        assert!(
                            pair[0].0.canonical_cmp(&pair[1].0).is_lt(),
                            "factors of {f} not strictly sorted"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_counts_match_necklace_formula() {
    for p in PRIMES {
        let all = enumerate_irreducibles(prime(p), 5).unwrap();
        for d in 1..=5 {
            let slice = all.iter().filter(|f| f.degree() == Some(d)).count() as u64;
            assert_eq!(slice, necklace(p, d), "p={p} d={d}");
        }
        for pair in all.windows(2) {
            assert!(pair[0].canonical_cmp(&pair[1]).is_lt());
        }
    }
}

#[test]
fn quadratic_irreducibles_over_f3() {
    let names: Vec<String> = enumerate_irreducibles(prime(3), 2)
        .unwrap()
        .into_iter()
        .filter(|f| f.degree() == Some(2))
        .map(|f| f.to_string())
        .collect();
    let brute: Vec<String> = all_with_degree(3, 2, 1)
        .into_iter()
        .filter(|f| (0..3).all(|r| f.eval(r) != 0))
        .map(|f| f.to_string())
        .collect();
    assert_eq!(names, brute);
    assert_eq!(names, ["T^2+1", "T^2+T+2", "T^2+2*T+2"]);
}

#[test]
fn eisenstein_reduces_to_a_power_of_t() {
    for p in [2u64, 3, 5] {
        for a0 in -9i64..=9 {
            for a1 in -9i64..=9 {
                for a2 in -3i64..=3 {
                    let f = IntPoly::from_i64s(&[a0, a1, a2, 1]);
                    let g = ZpPoly::from_int_poly(&f, prime(p), 20).unwrap();
                    if !g.eisenstein().unwrap_or(false) {
                        continue;
                    }
                    let fac = fp_factor(&g.reduce_mod_p()).unwrap();
                    assert_eq!(fac.factors.len(), 1, "{f}");
                    assert_eq!(fac.factors[0].0, FpPoly::t(prime(p)));
                    assert_eq!(fac.factors[0].1, 3);
                    assert_eq!(g.coeffs()[0].valuation().unwrap(), 1);
                }
            }
        }
    }
}

#[test]
fn reduction_examples() {
    for p in [2u64, 3, 5, 7, 11] {
        let f = IntPoly::from_i64s(&[p as i64, 0, 1]);
        assert_eq!(FpPoly::from_int_poly(&f, prime(p)).to_string(), "T^2");
    }
    let f = parse_poly("7*T^3+T").unwrap();
    assert_eq!(FpPoly::from_int_poly(&f, prime(7)).to_string(), "T");
}

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-50i64..=50, 0..7).prop_map(|c| IntPoly::from_i64s(&c))
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(f in small_poly()) {
        let text = f.to_string();
        let back = parse_poly(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn factorization_round_trips_at_larger_primes(
        c in prop::collection::vec(0u64..1000, 1..8),
        pi in 0usize..4,
    ) {
        let p = [11u64, 13, 101, 997][pi];
        let f = FpPoly::new(prime(p), c);
        prop_assume!(!f.is_zero());
        let fac = fp_factor(&f).unwrap();
        prop_assert_eq!(fac.product(), f);
        for (g, _) in &fac.factors {
            prop_assert!(fp_is_irreducible(g).unwrap());
        }
    }
}
