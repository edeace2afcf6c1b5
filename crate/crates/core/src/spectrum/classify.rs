use num_bigint::BigInt;
use serde::Serialize;

use super::qp::{qp_irreducible, Certificate, GenericVerdict, Witness};
use super::SpectrumError;
use crate::padic::Prime;
use crate::poly::{fp_factor, FpFactorization, FpPoly, IntPoly};

/// Generators of an ideal of `Z_p[T]` in one of the shapes `()`, `(p)`, `(f)`, `(p, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub include_p: bool,
    pub polys: Vec<IntPoly>,
}

impl Generators {
    pub fn zero() -> Self {
        Generators {
            include_p: false,
            polys: vec![],
        }
    }

    pub fn p() -> Self {
        Generators {
            include_p: true,
            polys: vec![],
        }
    }

    pub fn f(f: IntPoly) -> Self {
        Generators {
            include_p: false,
            polys: vec![f],
        }
    }

    pub fn p_and(f: IntPoly) -> Self {
        Generators {
            include_p: true,
            polys: vec![f],
        }
    }
}

/// The four kinds of prime ideal of `Z_p[T]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpecPoint {
    /// `(0)`.
    GenericPoint,
    /// `(p)`, the generic point of the special fiber.
    SpecialFiberGeneric { p: Prime },
    /// `(f)` with `f` certified irreducible over `Q_p`.
    HorizontalPrime {
        f: IntPoly,
        certificate: Certificate,
    },
    /// `(p, f)` with `f` irreducible mod `p`.
    ClosedPoint { p: Prime, f: FpPoly },
}

impl SpecPoint {
    pub fn kind(&self) -> &'static str {
        match self {
            SpecPoint::GenericPoint => "generic-point",
            SpecPoint::SpecialFiberGeneric { .. } => "special-fiber-generic",
            SpecPoint::HorizontalPrime { .. } => "horizontal-prime",
            SpecPoint::ClosedPoint { .. } => "closed-point",
        }
    }
}

/// What the quotient `Z_p[T]/I` looks like.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResidueDescriptor {
    /// `F_p[T]/(f) = F_{p^d}`.
    FiniteField {
        #[serde(serialize_with = "crate::bignum::serialize")]
        order: BigInt,
        degree: usize,
    },
    /// `Q_p[T]/(f)`, a field extension of `Q_p` of this degree.
    LocalFieldExtension { degree: usize },
    /// The quotient has zero divisors.
    NonDomain { witness: NonDomainWitness },
    /// Fraction field of the quotient at a generic point: `Q_p(T)` or `F_p(T)`.
    RationalFunctionStyle { field: String },
    /// Irreducibility over `Q_p` could not be decided.
    Undecided { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NonDomainWitness {
    /// `f ≡ Π g^m` mod `p` with a repeated factor: the radical `element` is nilpotent.
    Nilpotent {
        reduction: FpPoly,
        element: FpPoly,
        factorization: FpFactorization,
    },
    /// Squarefree reduction with at least two coprime factors.
    ZeroDivisors { factorization: FpFactorization },
    /// `f` factors over `Q_p`.
    Factors { witness: Witness },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// `None` when the ideal is not prime or primality is undecided.
    pub point: Option<SpecPoint>,
    pub residue: ResidueDescriptor,
}

pub fn classify_ideal(p: Prime, generators: &Generators) -> Result<Classification, SpectrumError> {
    match (generators.include_p, generators.polys.as_slice()) {
        (false, []) => Ok(Classification {
            point: Some(SpecPoint::GenericPoint),
            residue: ResidueDescriptor::RationalFunctionStyle {
                field: "Q_p(T)".into(),
            },
        }),
        (true, []) => Ok(special_generic(p)),
        (true, [f]) => {
            let reduced = FpPoly::from_int_poly(f, p);
            match reduced.degree() {
                None => Ok(special_generic(p)),
                Some(0) => Err(SpectrumError::UnsupportedGenerators(format!(
                    "(p, {f}) is the unit ideal"
                ))),
                Some(_) => closed_point(p, &reduced),
            }
        }
        (false, [f]) => horizontal(p, f),
        (_, polys) => Err(SpectrumError::UnsupportedGenerators(format!(
            "{} polynomial generators; expected at most one",
            polys.len()
        ))),
    }
}

fn special_generic(p: Prime) -> Classification {
    Classification {
        point: Some(SpecPoint::SpecialFiberGeneric { p }),
        residue: ResidueDescriptor::RationalFunctionStyle {
            field: "F_p(T)".into(),
        },
    }
}

fn closed_point(p: Prime, reduced: &FpPoly) -> Result<Classification, SpectrumError> {
    let factorization = fp_factor(reduced)?;
    if let [(g, 1)] = factorization.factors.as_slice() {
        let degree = g.degree().unwrap_or(0);
        return Ok(Classification {
            point: Some(SpecPoint::ClosedPoint { p, f: g.clone() }),
            residue: ResidueDescriptor::FiniteField {
                order: p.pow(degree as u32),
                degree,
            },
        });
    }
    let witness = if factorization.is_squarefree() {
        NonDomainWitness::ZeroDivisors { factorization }
    } else {
        let element = factorization
            .factors
            .iter()
            .fold(FpPoly::one(p), |acc, (g, _)| acc.mul(g));
        NonDomainWitness::Nilpotent {
            reduction: reduced.monic().0,
            element,
            factorization,
        }
    };
    Ok(Classification {
        point: None,
        residue: ResidueDescriptor::NonDomain { witness },
    })
}

fn horizontal(p: Prime, f: &IntPoly) -> Result<Classification, SpectrumError> {
    let degree = f.degree().unwrap_or(0);
    if degree == 0 {
        return Err(SpectrumError::UnsupportedGenerators(format!(
            "({f}) is generated by a constant"
        )));
    }
    Ok(match qp_irreducible(f, p)? {
        GenericVerdict::Irreducible { certificate, .. } => Classification {
            point: Some(SpecPoint::HorizontalPrime {
                f: f.clone(),
                certificate,
            }),
            residue: ResidueDescriptor::LocalFieldExtension { degree },
        },
        GenericVerdict::Reducible { witness } => Classification {
            point: None,
            residue: ResidueDescriptor::NonDomain {
                witness: NonDomainWitness::Factors { witness },
            },
        },
        GenericVerdict::Undecided { reason } => Classification {
            point: None,
            residue: ResidueDescriptor::Undecided { reason },
        },
    })
}
