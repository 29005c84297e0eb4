use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{factor_constant, QPoly, RingElem, RingTag};
use crate::error::{Error, Result};

/// A valuation value: a nonnegative integer, or `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Fin(u64),
    Inf,
}

impl Val {
    pub fn finite(self) -> Option<u64> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Val::Fin(0)
    }
}

impl std::ops::Add for Val {
    type Output = Val;

    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Val::Fin(v) => s.serialize_u64(*v),
            Val::Inf => s.serialize_str("inf"),
        }
    }
}

/// A discrete valuation on one of the coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    /// Exponent of a prime (normalized) dividing the element. Over `Q[y]` the
    /// prime must be linear.
    Adic(RingElem),
    /// Order of vanishing at `y = 0` on `Q[y]`.
    YAdic,
    /// Experimental: the degree of a `Q[y]` element, i.e. `-v∞`. It is not a
    /// valuation on `Q[y]` (the ultrametric inequality fails); it exists only
    /// to evaluate the degree-based Dumas variant and never yields a verdict.
    DegreeExperimental,
}

impl Valuation {
    /// Validates that `prime` is a prime of its ring and stores its canonical
    /// associate.
    pub fn adic(prime: &RingElem) -> Result<Self> {
        let bad = || Error::InvalidPrime(prime.to_string());
        match prime {
            RingElem::Int(_) | RingElem::Gauss(_) => {
                if prime.is_zero() || prime.is_unit() {
                    return Err(bad());
                }
                let f = factor_constant(prime)?;
                if f.big_omega() != 1 {
                    return Err(bad());
                }
                Ok(Valuation::Adic(f.factors[0].0.clone()))
            }
            RingElem::Poly(p) => {
                if p.degree() != Some(1) {
                    return Err(Error::InvalidPrime(format!(
                        "{prime} (only linear primes are supported over Q[y])"
                    )));
                }
                if p.coeffs()[0].is_zero() {
                    return Ok(Valuation::YAdic);
                }
                Ok(Valuation::Adic(prime.normalize().0))
            }
        }
    }

    pub fn ring(&self) -> RingTag {
        match self {
            Valuation::Adic(p) => p.tag(),
            Valuation::YAdic | Valuation::DegreeExperimental => RingTag::Polyq,
        }
    }

    pub fn uniformizer(&self) -> Option<RingElem> {
        match self {
            Valuation::Adic(p) => Some(p.clone()),
            Valuation::YAdic => Some(RingElem::Poly(QPoly::y())),
            Valuation::DegreeExperimental => None,
        }
    }

    pub fn is_experimental(&self) -> bool {
        matches!(self, Valuation::DegreeExperimental)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Adic(p) => write!(f, "({p})-adic"),
            Valuation::YAdic => write!(f, "y-adic"),
            Valuation::DegreeExperimental => write!(f, "degree (experimental)"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Valuation of `a`; `Inf` for zero.
///
/// Panics if `v` belongs to a different ring than `a`.
pub fn valuation_of(a: &RingElem, v: &Valuation) -> Val {
    if a.is_zero() {
        return Val::Inf;
    }
    assert_eq!(a.tag(), v.ring(), "valuation {v} applied to {a}");
    match v {
        Valuation::Adic(p) => {
            if let (RingElem::Int(n), RingElem::Int(q)) = (a, p) {
                if q == &2u32.into() {
                    return Val::Fin(n.trailing_zeros().unwrap_or(0));
                }
            }
            let mut x = a.clone();
            let mut e = 0;
            while let Some(q) = x.div_exact(p) {
                x = q;
                e += 1;
            }
            Val::Fin(e)
        }
        Valuation::YAdic => Val::Fin(a.as_poly().and_then(QPoly::y_order).unwrap() as u64),
        Valuation::DegreeExperimental => Val::Fin(a.as_poly().and_then(QPoly::degree).unwrap() as u64),
    }
}
