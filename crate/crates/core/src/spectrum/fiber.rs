use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::qp::{q_irreducible, qp_irreducible, GenericVerdict};
use super::SpectrumError;
use crate::padic::{vp_int, Prime};
use crate::poly::{
    fp_factor, mentions_p, parse_poly, parse_poly_with_p, FpPoly, IntPoly, ParseError,
};

/// An anchor polynomial, either fixed or a template in the symbol `p` that is
/// instantiated at each fiber (`T^2+p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Anchor {
    Fixed(IntPoly),
    Family(String),
}

impl Anchor {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        if mentions_p(src) {
            parse_poly_with_p(src, &BigInt::from(2))?;
            Ok(Anchor::Family(src.split_whitespace().collect()))
        } else {
            Ok(Anchor::Fixed(parse_poly(src)?))
        }
    }

    /// The polynomial this anchor stands for over `Z_p`.
    pub fn at(&self, p: Prime) -> IntPoly {
        match self {
            Anchor::Fixed(f) => f.clone(),
            Anchor::Family(src) => {
                parse_poly_with_p(src, &p.to_bigint()).expect("template validated on construction")
            }
        }
    }

    pub fn is_family(&self) -> bool {
        matches!(self, Anchor::Family(_))
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Fixed(poly) => write!(f, "{poly}"),
            Anchor::Family(src) => f.write_str(src),
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitFactor {
    pub factor: FpPoly,
    pub multiplicity: u32,
    /// The root of a linear factor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<u64>,
}

/// How an anchor meets the special fiber `A^1_{F_p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FiberVerdict {
    /// Irreducible of degree `d ≥ 2` mod `p`: one closed point with residue field `F_{p^d}`.
    Blip {
        #[serde(serialize_with = "crate::bignum::serialize")]
        residue_order: BigInt,
        #[serde(skip)]
        factor: FpPoly,
    },
    /// Squarefree with a linear factor or several factors.
    Split {
        roots: Vec<u64>,
        factors: Vec<SplitFactor>,
    },
    /// Some factor repeats; `witness` is the monic reduction, e.g. `T^2`.
    Tangent {
        witness: FpPoly,
        factor: FpPoly,
        multiplicity: u32,
        factors: Vec<SplitFactor>,
    },
    /// The reduction is a nonzero constant: the anchor misses this fiber.
    Disjoint { reduction: FpPoly },
    /// The anchor vanishes mod `p` and contains the whole fiber.
    ContainedInFiber,
}

impl FiberVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            FiberVerdict::Blip { .. } => "blip",
            FiberVerdict::Split { .. } => "split",
            FiberVerdict::Tangent { .. } => "tangent",
            FiberVerdict::Disjoint { .. } => "disjoint",
            FiberVerdict::ContainedInFiber => "contained-in-fiber",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeDrop {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberBehavior {
    #[serde(skip)]
    pub anchor: IntPoly,
    pub fiber: Prime,
    pub verdict: FiberVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_drop: Option<DegreeDrop>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Space {
    Zp { p: Prime },
    Z { primes: Vec<Prime> },
}

/// Special-fiber rows plus the generic verdict, over `Q_p` for `Space::Zp` and over
/// `Q` for `Space::Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub anchor: Anchor,
    pub space: Space,
    pub rows: Vec<FiberBehavior>,
    pub generic: GenericVerdict,
}

pub fn fiber_behavior(f: &IntPoly, p: Prime) -> Result<FiberBehavior, SpectrumError> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(SpectrumError::ConstantPolynomial),
    };
    let reduced = FpPoly::from_int_poly(f, p);
    let degree_drop = match reduced.degree() {
        Some(d) if d == n => None,
        Some(d) => Some(DegreeDrop { from: n, to: d }),
        None => None,
    };
    let verdict = match reduced.degree() {
        None => FiberVerdict::ContainedInFiber,
        Some(0) => FiberVerdict::Disjoint { reduction: reduced },
        Some(_) => {
            let fac = fp_factor(&reduced)?;
            let factors: Vec<SplitFactor> = fac
                .factors
                .iter()
                .map(|(g, m)| SplitFactor {
                    factor: g.clone(),
                    multiplicity: *m,
                    root: g.linear_root(),
                })
                .collect();
            if let Some(rep) = factors.iter().find(|s| s.multiplicity >= 2) {
                FiberVerdict::Tangent {
                    witness: reduced.monic().0,
                    factor: rep.factor.clone(),
                    multiplicity: rep.multiplicity,
                    factors,
                }
            } else if factors.len() == 1 && factors[0].root.is_none() {
                let d = factors[0].factor.degree().unwrap_or(0);
                FiberVerdict::Blip {
                    residue_order: p.pow(d as u32),
                    factor: factors[0].factor.clone(),
                }
            } else {
                let mut roots: Vec<u64> = factors.iter().filter_map(|s| s.root).collect();
                roots.sort_unstable();
                FiberVerdict::Split { roots, factors }
            }
        }
    };
    Ok(FiberBehavior {
        anchor: f.clone(),
        fiber: p,
        verdict,
        degree_drop,
    })
}

/// `f` with the largest power of `p` dividing its content removed.
fn p_primitive(f: &IntPoly, p: Prime) -> IntPoly {
    let k = vp_int(&f.content(), p).finite().unwrap_or(0) as u32;
    if k == 0 {
        return f.clone();
    }
    let d = p.pow(k);
    IntPoly::new(f.coeffs().iter().map(|c| c / &d).collect())
}

/// The two fibers of `Spec Z_p[T] → Spec Z_p`.
pub fn zp_fiber_report(f: &IntPoly, p: Prime) -> Result<FiberReport, SpectrumError> {
    zp_family_report(&Anchor::Fixed(f.clone()), p)
}

pub fn zp_family_report(anchor: &Anchor, p: Prime) -> Result<FiberReport, SpectrumError> {
    let f = anchor.at(p);
    let row = fiber_behavior(&f, p)?;
    let generic = qp_irreducible(&p_primitive(&f, p), p)?;
    Ok(FiberReport {
        anchor: anchor.clone(),
        space: Space::Zp { p },
        rows: vec![row],
        generic,
    })
}

/// One row per prime, in the given order, and the generic verdict over `Q`.
pub fn z_fiber_report(f: &IntPoly, primes: &[Prime]) -> Result<FiberReport, SpectrumError> {
    z_family_report(&Anchor::Fixed(f.clone()), primes)
}

/// For a template the generic verdict combines the members at each listed prime:
/// any reducible member wins, then any undecided one.
pub fn z_family_report(anchor: &Anchor, primes: &[Prime]) -> Result<FiberReport, SpectrumError> {
    if primes.is_empty() {
        return Err(SpectrumError::NoPrimes);
    }
    let rows = primes
        .iter()
        .map(|&p| fiber_behavior(&anchor.at(p), p))
        .collect::<Result<Vec<_>, _>>()?;
    let generic = match anchor {
        Anchor::Fixed(f) => q_irreducible(f)?,
        Anchor::Family(_) => {
            let verdicts = primes
                .iter()
                .map(|&p| q_irreducible(&anchor.at(p)))
                .collect::<Result<Vec<_>, _>>()?;
            verdicts
                .iter()
                .find(|v| v.is_reducible())
                .or_else(|| verdicts.iter().find(|v| v.is_undecided()))
                .unwrap_or(&verdicts[0])
                .clone()
        }
    };
    Ok(FiberReport {
        anchor: anchor.clone(),
        space: Space::Z {
            primes: primes.to_vec(),
        },
        rows,
        generic,
    })
}

impl FiberReport {
    /// Sum of `deg × multiplicity` over a row's factors.
    pub fn factored_degree(row: &FiberBehavior) -> usize {
        match &row.verdict {
            FiberVerdict::Blip { factor, .. } => factor.degree().unwrap_or(0),
            FiberVerdict::Split { factors, .. } | FiberVerdict::Tangent { factors, .. } => factors
                .iter()
                .map(|s| s.factor.degree().unwrap_or(0) * s.multiplicity as usize)
                .sum(),
            FiberVerdict::Disjoint { .. } | FiberVerdict::ContainedInFiber => 0,
        }
    }

    pub fn count(&self, kind: &str) -> usize {
        self.rows
            .iter()
            .filter(|r| r.verdict.kind() == kind)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn poly(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn t2_plus_1_across_fibers() {
        let f = poly("T^2+1");
        let two = fiber_behavior(&f, prime(2)).unwrap();
        match two.verdict {
            FiberVerdict::Tangent {
                factor,
                multiplicity,
                ..
            } => {
                assert_eq!(factor.to_string(), "T+1");
                assert_eq!(multiplicity, 2);
            }
            other => panic!("{other:?}"),
        }
        let five = fiber_behavior(&f, prime(5)).unwrap();
        assert!(matches!(five.verdict, FiberVerdict::Split { ref roots, .. } if roots == &[2, 3]));
        let seven = fiber_behavior(&f, prime(7)).unwrap();
        assert!(matches!(
            seven.verdict,
            FiberVerdict::Blip { ref residue_order, .. } if *residue_order == BigInt::from(49)
        ));
    }

    #[test]
    fn degenerate_fibers() {
        let drop = fiber_behavior(&poly("7*T^3+T"), prime(7)).unwrap();
        assert_eq!(drop.degree_drop, Some(DegreeDrop { from: 3, to: 1 }));
        assert!(matches!(drop.verdict, FiberVerdict::Split { ref roots, .. } if roots == &[0]));
        let gone = fiber_behavior(&poly("3*T+1"), prime(3)).unwrap();
        assert_eq!(gone.verdict.kind(), "disjoint");
        let inside = fiber_behavior(&poly("3*T+3"), prime(3)).unwrap();
        assert_eq!(inside.verdict, FiberVerdict::ContainedInFiber);
        assert!(fiber_behavior(&poly("4"), prime(3)).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = zp_fiber_report(&poly("T^2+1"), prime(7)).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"anchor":"T^2+1","space":{"kind":"Zp","p":7},"rows":[{"fiber":7,"verdict":{"kind":"blip","residue_order":49}}],"generic":{"verdict":"irreducible","certificate":"disc-nonsquare-deg2"}}"#
        );
    }

    #[test]
    fn zp_reports() {
        let r = zp_fiber_report(&poly("T^2+1"), prime(3)).unwrap();
        assert_eq!(r.rows[0].verdict.kind(), "blip");
        assert!(r.generic.is_irreducible());
        let desert = zp_family_report(&Anchor::parse("T^2+p").unwrap(), prime(3)).unwrap();
        match &desert.rows[0].verdict {
            FiberVerdict::Tangent {
                witness,
                factor,
                multiplicity,
                ..
            } => {
                assert_eq!(witness.to_string(), "T^2");
                assert_eq!(factor.to_string(), "T");
                assert_eq!(*multiplicity, 2);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            desert.generic.certificate(),
            Some(super::super::Certificate::Eisenstein)
        );
        let line = zp_fiber_report(&poly("T"), prime(11)).unwrap();
        assert!(
            matches!(line.rows[0].verdict, FiberVerdict::Split { ref roots, .. } if roots == &[0])
        );
        assert_eq!(
            line.generic.certificate(),
            Some(super::super::Certificate::Linear)
        );
        // the generic verdict ignores a p-power in the content
        let scaled = zp_fiber_report(&poly("3*T^2+3"), prime(3)).unwrap();
        assert_eq!(scaled.rows[0].verdict, FiberVerdict::ContainedInFiber);
        assert!(scaled.generic.is_irreducible());
    }

    #[test]
    fn z_reports() {
        let primes: Vec<Prime> = [2, 3, 5, 7].into_iter().map(prime).collect();
        let r = z_fiber_report(&poly("T^2+1"), &primes).unwrap();
        let kinds: Vec<&str> = r.rows.iter().map(|row| row.verdict.kind()).collect();
        assert_eq!(kinds, ["tangent", "blip", "split", "blip"]);
        let t = z_fiber_report(&poly("T"), &primes[..2]).unwrap();
        for row in &t.rows {
            assert!(matches!(row.verdict, FiberVerdict::Split { ref roots, .. } if roots == &[0]));
        }
        let eleven = z_fiber_report(&poly("T^2+11"), &[prime(11)]).unwrap();
        assert!(matches!(
            eleven.rows[0].verdict,
            FiberVerdict::Tangent {
                multiplicity: 2,
                ..
            }
        ));
        let fam = z_family_report(&Anchor::parse("T^2 + p").unwrap(), &primes).unwrap();
        assert_eq!(fam.anchor.to_string(), "T^2+p");
        assert_eq!(fam.count("tangent"), 4);
        assert!(fam.generic.is_irreducible());
        assert!(z_fiber_report(&poly("T"), &[]).is_err());
    }
}
