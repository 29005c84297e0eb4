//! Gaussian integers `a + b·i` with exact big-integer components.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Gaussian::new(0, 0)
    }

    pub fn one() -> Self {
        Gaussian::new(1, 0)
    }

    pub fn i() -> Self {
        Gaussian::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn neg(&self) -> Self {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }

    /// Multiplication by `i`: `(a, b) -> (-b, a)`.
    pub fn mul_i(&self) -> Self {
        Gaussian {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    /// Exact quotient, or `None` if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let n = o.norm();
        let num = self.mul(&o.conj());
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(Gaussian { re: qr, im: qi })
        } else {
            None
        }
    }

    pub fn divides(&self, x: &Self) -> bool {
        x.div_exact(self).is_some()
    }

    /// Euclidean division with the quotient rounded to the nearest lattice
    /// point, so that `N(r) <= N(o) / 2`.
    pub fn div_rem_round(&self, o: &Self) -> (Self, Self) {
        let n = o.norm();
        let num = self.mul(&o.conj());
        let q = Gaussian {
            re: round_div(&num.re, &n),
            im: round_div(&num.im, &n),
        };
        let r = self.sub(&q.mul(o));
        (q, r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Gaussian::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The four associates `x, i·x, -x, -i·x`.
    pub fn associates(&self) -> [Gaussian; 4] {
        let a = self.clone();
        let b = a.mul_i();
        let c = b.mul_i();
        let d = c.mul_i();
        [a, b, c, d]
    }

    /// The associate with `re > 0, im >= 0`, together with the unit `w` such
    /// that `self = w · normalized`. Zero normalizes to itself with unit 1.
    pub fn normalize(&self) -> (Gaussian, Gaussian) {
        if self.is_zero() {
            return (Gaussian::zero(), Gaussian::one());
        }
        // self = w * n  <=>  n = w^{-1} * self; iterate n = i^k * self, w = i^{-k}.
        let units_inv = [
            Gaussian::one(),
            Gaussian::new(0, -1),
            Gaussian::new(-1, 0),
            Gaussian::new(0, 1),
        ];
        for (k, cand) in self.associates().into_iter().enumerate() {
            if cand.re.is_positive() && !cand.im.is_negative() {
                return (cand, units_inv[k].clone());
            }
        }
        unreachable!("every nonzero gaussian integer has a first-quadrant associate")
    }

    pub fn is_associate(&self, o: &Self) -> bool {
        self.associates().iter().any(|a| a == o)
    }

    /// Inverse of a unit, `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.is_unit() {
            Some(self.conj())
        } else {
            None
        }
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // floor((2a + n) / 2n) for n > 0
    let two = BigInt::from(2);
    (a * &two + n).div_floor(&(n * &two))
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |f: &mut fmt::Formatter<'_>, b: &BigInt| -> fmt::Result {
            if b.abs().is_one() {
                write!(f, "i")
            } else {
                write!(f, "{}i", b.abs())
            }
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return imag(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        imag(f, &self.im)
    }
}
