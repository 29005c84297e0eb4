use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intfactor::{factor_u64, pow_mod};
use super::{ext_gcd, Gaussian, RingElem, RingTag};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1 << 16;

/// `unit · ∏ prime^exp`, primes pairwise nonassociate and canonically
/// normalized, listed in ascending order (by value over `Z`, by norm and then
/// components over `Z[i]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantFactorization {
    pub unit: RingElem,
    pub factors: Vec<(RingElem, u32)>,
}

impl ConstantFactorization {
    /// Number of distinct primes.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of primes counted with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.factors.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn product(&self) -> RingElem {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| acc.mul(&p.pow(*e)))
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                (i * i..n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

/// Ascending prime factorization of `n > 0`: trial division below `2^16`,
/// then Pollard rho on a cofactor that must fit in a `u64`.
fn factor_natural(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    debug_assert!(n.is_positive());
    let mut n = n.clone();
    let mut out = Vec::new();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if n.is_one() {
        return Ok(out);
    }
    let m = n.to_u64().ok_or_else(|| Error::FactorizationLimit(n.to_string()))?;
    out.extend(factor_u64(m).into_iter().map(|(p, e)| (BigInt::from(p), e)));
    out.sort();
    Ok(out)
}

/// A Gaussian prime of norm `p` for a rational prime `p ≡ 1 (mod 4)`.
fn split_prime(p: u64) -> Gaussian {
    let t = (2..p)
        .map(|c| pow_mod(c, (p - 1) / 4, p))
        .find(|&t| pow_mod(t, 2, p) == p - 1)
        .expect("p = 1 mod 4 has a square root of -1");
    let g = ext_gcd(
        &RingElem::gauss(BigInt::from(p), 0),
        &RingElem::gauss(BigInt::from(t), 1),
    )
    .expect("nonzero inputs");
    match g.gcd {
        RingElem::Gauss(g) => {
            debug_assert_eq!(g.norm(), BigInt::from(p));
            g
        }
        _ => unreachable!(),
    }
}

fn strip(x: &mut Gaussian, p: &Gaussian) -> u32 {
    let mut e = 0;
    while let Some(q) = x.div_exact(p) {
        *x = q;
        e += 1;
    }
    e
}

/// Canonical factorization of a nonzero element of `Z` or `Z[i]`.
pub fn factor_constant(a: &RingElem) -> Result<ConstantFactorization> {
    if a.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    match a {
        RingElem::Int(n) => {
            let sign = if n.is_negative() { -1 } else { 1 };
            let factors = factor_natural(&n.abs())?
                .into_iter()
                .map(|(p, e)| (RingElem::Int(p), e))
                .collect();
            Ok(ConstantFactorization {
                unit: RingElem::int(sign),
                factors,
            })
        }
        RingElem::Gauss(x) => {
            let mut rest = x.clone();
            let mut factors: Vec<(Gaussian, u32)> = Vec::new();
            for (p, _) in factor_natural(&x.norm())? {
                let p64 = p.to_u64().expect("norm factors fit after the limit check");
                let candidates = match p64 % 4 {
                    2 => vec![Gaussian::new(1, 1)],
                    3 => vec![Gaussian::new(p.clone(), 0)],
                    _ => {
                        let g = split_prime(p64);
                        let h = g.conj().normalize().0;
                        vec![g, h]
                    }
                };
                for c in candidates {
                    let e = strip(&mut rest, &c);
                    if e > 0 {
                        factors.push((c, e));
                    }
                }
            }
            factors.sort_by(|(a, _), (b, _)| {
                a.norm()
                    .cmp(&b.norm())
                    .then_with(|| a.re.cmp(&b.re))
                    .then_with(|| a.im.cmp(&b.im))
            });
            debug_assert!(rest.is_unit(), "leftover {rest} is not a unit");
            Ok(ConstantFactorization {
                unit: RingElem::Gauss(rest),
                factors: factors.into_iter().map(|(p, e)| (RingElem::Gauss(p), e)).collect(),
            })
        }
        RingElem::Poly(_) => Err(Error::UnsupportedRing {
            op: "factorization",
            ring: RingTag::Polyq,
        }),
    }
}

fn nonunit_factorization(a: &RingElem) -> Result<ConstantFactorization> {
    if a.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    if a.is_unit() {
        return Err(Error::UnitInput(a.to_string()));
    }
    factor_constant(a)
}

/// Number of pairwise nonassociate prime divisors of a nonzero nonunit.
pub fn omega(a: &RingElem) -> Result<usize> {
    nonunit_factorization(a).map(|f| f.omega())
}

/// Number of prime divisors counted with multiplicity.
pub fn big_omega(a: &RingElem) -> Result<u64> {
    nonunit_factorization(a).map(|f| f.big_omega())
}
