//! Coefficient rings: the integers, the Gaussian integers and `Q[y]`.
//!
//! A [`RingElem`] carries its ring at runtime so that parsed input, series and
//! criteria can share one coefficient type. Binary operations on elements of
//! different rings panic; constructors that accept user input check the tags
//! first and report [`Error::RingMismatch`](crate::Error::RingMismatch).

mod factor;
mod gaussian;
mod gcd;
mod intfactor;
mod qpoly;
mod valuation;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use factor::{big_omega, factor_constant, omega, ConstantFactorization};
pub use gaussian::Gaussian;
pub use gcd::{ext_gcd, gcd, ExtGcd};
pub use intfactor::{factor_u64, is_prime_u64};
pub use qpoly::QPoly;
pub use valuation::{valuation_of, Val, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingTag {
    Int,
    Gauss,
    Polyq,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingTag::Int => "int",
            RingTag::Gauss => "gauss",
            RingTag::Polyq => "polyq",
        })
    }
}

impl FromStr for RingTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(RingTag::Int),
            "gauss" => Ok(RingTag::Gauss),
            "polyq" => Ok(RingTag::Polyq),
            other => Err(format!("unknown ring '{other}' (expected int, gauss or polyq)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElem {
    Int(BigInt),
    Gauss(Gaussian),
    Poly(QPoly),
}

impl RingElem {
    pub fn int(n: impl Into<BigInt>) -> Self {
        RingElem::Int(n.into())
    }

    pub fn gauss(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        RingElem::Gauss(Gaussian::new(re, im))
    }

    /// The integer `n` embedded in the ring `tag`.
    pub fn from_int(tag: RingTag, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        match tag {
            RingTag::Int => RingElem::Int(n),
            RingTag::Gauss => RingElem::Gauss(Gaussian::new(n, 0)),
            RingTag::Polyq => RingElem::Poly(QPoly::from_int(n)),
        }
    }

    pub fn zero(tag: RingTag) -> Self {
        RingElem::from_int(tag, 0)
    }

    pub fn one(tag: RingTag) -> Self {
        RingElem::from_int(tag, 1)
    }

    pub fn tag(&self) -> RingTag {
        match self {
            RingElem::Int(_) => RingTag::Int,
            RingElem::Gauss(_) => RingTag::Gauss,
            RingElem::Poly(_) => RingTag::Polyq,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(a) => a.is_zero(),
            RingElem::Gauss(a) => a.is_zero(),
            RingElem::Poly(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == RingElem::one(self.tag())
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElem::Int(a) => a.abs().is_one(),
            RingElem::Gauss(a) => a.is_unit(),
            RingElem::Poly(a) => a.is_unit(),
        }
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        match self {
            RingElem::Int(a) if a.abs().is_one() => Some(self.clone()),
            RingElem::Int(_) => None,
            RingElem::Gauss(a) => a.unit_inverse().map(RingElem::Gauss),
            RingElem::Poly(a) if a.is_unit() => Some(RingElem::Poly(QPoly::constant(a.coeffs()[0].recip()))),
            RingElem::Poly(_) => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a + b),
            (RingElem::Gauss(a), RingElem::Gauss(b)) => RingElem::Gauss(a.add(b)),
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.add(b)),
            _ => mismatch(self, o),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a - b),
            (RingElem::Gauss(a), RingElem::Gauss(b)) => RingElem::Gauss(a.sub(b)),
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.sub(b)),
            _ => mismatch(self, o),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a * b),
            (RingElem::Gauss(a), RingElem::Gauss(b)) => RingElem::Gauss(a.mul(b)),
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.mul(b)),
            _ => mismatch(self, o),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            RingElem::Int(a) => RingElem::Int(-a),
            RingElem::Gauss(a) => RingElem::Gauss(a.neg()),
            RingElem::Poly(a) => RingElem::Poly(a.neg()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        match self {
            RingElem::Int(a) => RingElem::Int(num_traits::pow(a.clone(), e as usize)),
            RingElem::Gauss(a) => RingElem::Gauss(a.pow(e)),
            RingElem::Poly(a) => RingElem::Poly(a.pow(e)),
        }
    }

    /// Exact quotient `self / d`, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        match (self, d) {
            (RingElem::Int(a), RingElem::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(RingElem::Int(q))
            }
            (RingElem::Gauss(a), RingElem::Gauss(b)) => a.div_exact(b).map(RingElem::Gauss),
            (RingElem::Poly(a), RingElem::Poly(b)) => a.div_exact(b).map(RingElem::Poly),
            _ => mismatch(self, d),
        }
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// `o = w · self` for some unit `w`.
    pub fn is_associate(&self, o: &Self) -> bool {
        match (self, o) {
            (RingElem::Int(a), RingElem::Int(b)) => a.abs() == b.abs(),
            (RingElem::Gauss(a), RingElem::Gauss(b)) => a.is_associate(b),
            (RingElem::Poly(a), RingElem::Poly(b)) => a.is_associate(b),
            _ => false,
        }
    }

    /// Canonical associate and the unit `w` with `self = w · canonical`.
    /// Integers: nonnegative. Gaussian: `re > 0, im >= 0`. Polynomials: monic.
    pub fn normalize(&self) -> (RingElem, RingElem) {
        match self {
            RingElem::Int(a) => {
                let w = if a.is_negative() { -1 } else { 1 };
                (RingElem::Int(a.abs()), RingElem::int(w))
            }
            RingElem::Gauss(a) => {
                let (n, w) = a.normalize();
                (RingElem::Gauss(n), RingElem::Gauss(w))
            }
            RingElem::Poly(a) => match a.leading() {
                None => (self.clone(), RingElem::one(RingTag::Polyq)),
                Some(lc) => (
                    RingElem::Poly(a.scale(&lc.recip())),
                    RingElem::Poly(QPoly::constant(lc.clone())),
                ),
            },
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            RingElem::Int(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&QPoly> {
        match self {
            RingElem::Poly(a) => Some(a),
            _ => None,
        }
    }

    /// Rational constant embedded in `Q[y]`.
    pub fn poly_constant(c: BigRational) -> Self {
        RingElem::Poly(QPoly::constant(c))
    }
}

#[cold]
fn mismatch(a: &RingElem, b: &RingElem) -> ! {
    panic!("ring mismatch: {} vs {}", a.tag(), b.tag())
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(a) => write!(f, "{a}"),
            RingElem::Gauss(a) => write!(f, "{a}"),
            RingElem::Poly(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
