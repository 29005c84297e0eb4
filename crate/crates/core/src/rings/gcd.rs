use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Gaussian, RingElem};
use crate::error::{Error, Result};

/// Bezout data: `u·a + v·b = gcd`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGcd {
    pub gcd: RingElem,
    pub u: RingElem,
    pub v: RingElem,
}

/// Extended Euclid over `Z` or `Z[i]`. The gcd is normalized: positive over
/// `Z`, first-quadrant (`re > 0, im >= 0`) over `Z[i]`.
pub fn ext_gcd(a: &RingElem, b: &RingElem) -> Result<ExtGcd> {
    if a.tag() != b.tag() {
        return Err(Error::RingMismatch {
            left: a.tag(),
            right: b.tag(),
        });
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdUndefined);
    }
    match (a, b) {
        (RingElem::Int(a), RingElem::Int(b)) => {
            let (g, u, v) = ext_gcd_int(a, b);
            Ok(ExtGcd {
                gcd: RingElem::Int(g),
                u: RingElem::Int(u),
                v: RingElem::Int(v),
            })
        }
        (RingElem::Gauss(a), RingElem::Gauss(b)) => {
            let (g, u, v) = ext_gcd_gauss(a, b);
            Ok(ExtGcd {
                gcd: RingElem::Gauss(g),
                u: RingElem::Gauss(u),
                v: RingElem::Gauss(v),
            })
        }
        _ => Err(Error::UnsupportedRing {
            op: "gcd",
            ring: a.tag(),
        }),
    }
}

pub fn gcd(a: &RingElem, b: &RingElem) -> Result<RingElem> {
    ext_gcd(a, b).map(|e| e.gcd)
}

fn ext_gcd_int(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn ext_gcd_gauss(a: &Gaussian, b: &Gaussian) -> (Gaussian, Gaussian, Gaussian) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Gaussian::one(), Gaussian::zero());
    let (mut t0, mut t1) = (Gaussian::zero(), Gaussian::one());
    while !r1.is_zero() {
        let (q, r2) = r0.div_rem_round(&r1);
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 = w * g  =>  g = w^{-1} r0
    let (g, w) = r0.normalize();
    let winv = w.unit_inverse().expect("normalization unit");
    (g, s0.mul(&winv), t0.mul(&winv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> RingElem {
        RingElem::int(n)
    }

    fn check_identity(a: &RingElem, b: &RingElem, e: &ExtGcd) {
        assert_eq!(e.u.mul(a).add(&e.v.mul(b)), e.gcd);
        assert!(e.gcd.divides(a) && e.gcd.divides(b));
    }

    #[test]
    fn small_integer_cases() {
        let e = ext_gcd(&int(2), &int(3)).unwrap();
        assert_eq!(e.gcd, int(1));
        check_identity(&int(2), &int(3), &e);

        let e = ext_gcd(&int(6), &int(0)).unwrap();
        assert_eq!(
            e,
            ExtGcd {
                gcd: int(6),
                u: int(1),
                v: int(0)
            }
        );

        let e = ext_gcd(&int(4), &int(6)).unwrap();
        assert_eq!(
            e,
            ExtGcd {
                gcd: int(2),
                u: int(-1),
                v: int(1)
            }
        );
    }

    #[test]
    fn negative_inputs_give_positive_gcd() {
        let e = ext_gcd(&int(-12), &int(18)).unwrap();
        assert_eq!(e.gcd, int(6));
        check_identity(&int(-12), &int(18), &e);
    }

    #[test]
    fn errors() {
        assert_eq!(ext_gcd(&int(0), &int(0)), Err(Error::GcdUndefined));
        let p = RingElem::Poly(super::super::QPoly::y());
        assert!(matches!(ext_gcd(&p, &p), Err(Error::UnsupportedRing { op: "gcd", .. })));
        assert!(matches!(
            ext_gcd(&int(1), &RingElem::gauss(1, 0)),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn gaussian_gcd_is_normalized() {
        // gcd(5, 2+i) = 2+i  (5 = (2+i)(2-i))
        let e = ext_gcd(&RingElem::gauss(5, 0), &RingElem::gauss(2, 1)).unwrap();
        assert_eq!(e.gcd, RingElem::gauss(2, 1));
        check_identity(&RingElem::gauss(5, 0), &RingElem::gauss(2, 1), &e);
        // gcd(19, 4+3i) = 1
        let e = ext_gcd(&RingElem::gauss(19, 0), &RingElem::gauss(4, 3)).unwrap();
        assert_eq!(e.gcd, RingElem::gauss(1, 0));
    }

    proptest! {
        #[test]
        fn integer_bezout(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            prop_assume!(a != 0 || b != 0);
            let (a, b) = (int(a), int(b));
            let e = ext_gcd(&a, &b).unwrap();
            prop_assert!(e.gcd.as_int().unwrap().is_positive());
            check_identity(&a, &b, &e);
        }

        #[test]
        fn gaussian_bezout(a in -3000i64..3000, b in -3000i64..3000, c in -3000i64..3000, d in -3000i64..3000) {
            prop_assume!(a != 0 || b != 0 || c != 0 || d != 0);
            let (x, y) = (RingElem::gauss(a, b), RingElem::gauss(c, d));
            let e = ext_gcd(&x, &y).unwrap();
            check_identity(&x, &y, &e);
            let (n, _) = e.gcd.normalize();
            prop_assert_eq!(n, e.gcd);
        }
    }
}
