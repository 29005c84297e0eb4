//! Constructive factorization by coprime splitting of the constant term.
//!
//! If `a_0 = m·n` with `m`, `n` coprime nonunits and `m·u + n·v = 1`, then
//! `f = (m + v·g)(n + u·g)` where `g = Σ b_i z^i` is given by `b_0 = 0`,
//! `b_i = a_i − uv·Σ_{t=1}^{i−1} b_t b_{i−t}` (the paper writes the sum to `i`;
//! the `t = i` term vanishes because `b_0 = 0`).

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rings::{ext_gcd, ConstantFactorization, RingElem};
use crate::series::Series;

/// Factors from [`split_by_primes`].
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub factors: Vec<Series>,
    /// `u·p_1^{k_1}, p_2^{k_2}, …`: the unit of `a_0` sits in the first one.
    pub constant_terms: Vec<RingElem>,
    /// Order up to which the product of `factors` has been checked against
    /// the input.
    pub verified_to: usize,
}

impl SplitResult {
    /// Checks the product against `f` on `0..=n` and records the order.
    pub fn verify(&mut self, f: &Series, n: usize) -> Result<bool> {
        let ok = verify_product(&self.factors, f, n)?;
        if ok {
            self.verified_to = self.verified_to.max(n);
        }
        Ok(ok)
    }
}

/// A factor truncated for output: `{constant_term, coeffs}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub constant_term: RingElem,
    pub coeffs: Vec<RingElem>,
}

impl FactorReport {
    pub fn of(factor: &Series, order: usize) -> Result<Self> {
        let coeffs = factor.prefix(order + 1)?;
        Ok(FactorReport {
            constant_term: coeffs[0].clone(),
            coeffs,
        })
    }
}

/// A Bezout pair `(u, v)` with `m·u + n·v = 1`. Over `Z`, `u` is reduced into
/// `[0, |n|)` so the pair (and thus the output) is canonical.
pub fn bezout_pair(m: &RingElem, n: &RingElem) -> Result<(RingElem, RingElem)> {
    let e = ext_gcd(m, n)?;
    let Some(g_inv) = e.gcd.unit_inverse() else {
        return Err(Error::NotCoprime {
            m: m.to_string(),
            n: n.to_string(),
            gcd: e.gcd.to_string(),
        });
    };
    let (u, v) = (e.u.mul(&g_inv), e.v.mul(&g_inv));
    match (m, n, &u) {
        (RingElem::Int(mi), RingElem::Int(ni), RingElem::Int(ui)) => {
            let u_red: BigInt = ui.mod_floor(&num_traits::Signed::abs(ni));
            let v_red = (BigInt::from(1) - mi * &u_red) / ni;
            Ok((RingElem::Int(u_red), RingElem::Int(v_red)))
        }
        _ => Ok((u, v)),
    }
}

fn check_split(f: &Series, m: &RingElem, n: &RingElem) -> Result<()> {
    let a0 = f.try_coeff(0)?;
    if m.tag() != f.ring() || n.tag() != f.ring() {
        return Err(Error::RingMismatch {
            left: f.ring(),
            right: if m.tag() != f.ring() { m.tag() } else { n.tag() },
        });
    }
    if m.mul(n) != a0 {
        return Err(Error::NotAFactorization {
            m: m.to_string(),
            n: n.to_string(),
            a0: a0.to_string(),
        });
    }
    for x in [m, n] {
        if x.is_unit() {
            return Err(Error::TrivialSplit(x.to_string()));
        }
    }
    Ok(())
}

/// Splits `f` along `a_0 = m·n` using the canonical Bezout pair.
pub fn split_coprime(f: &Series, m: &RingElem, n: &RingElem) -> Result<(Series, Series)> {
    check_split(f, m, n)?;
    let (u, v) = bezout_pair(m, n)?;
    build_split(f, m, n, &u, &v)
}

/// Splits `f` along `a_0 = m·n` with a caller-supplied Bezout pair.
pub fn split_coprime_with(
    f: &Series,
    m: &RingElem,
    n: &RingElem,
    u: &RingElem,
    v: &RingElem,
) -> Result<(Series, Series)> {
    check_split(f, m, n)?;
    if !m.mul(u).add(&n.mul(v)).is_one() {
        return Err(Error::InvalidBezout {
            m: m.to_string(),
            n: n.to_string(),
            u: u.to_string(),
            v: v.to_string(),
        });
    }
    build_split(f, m, n, u, v)
}

fn build_split(f: &Series, m: &RingElem, n: &RingElem, u: &RingElem, v: &RingElem) -> Result<(Series, Series)> {
    let g = f.split_tail(&u.mul(v));
    let g1 = Series::constant(m.clone()).add(&g.scale(v)?)?;
    let g2 = Series::constant(n.clone()).add(&g.scale(u)?)?;
    Ok((g1, g2))
}

/// Splits `f` into one factor per distinct prime of `a_0`: the first factor
/// has constant term `unit·p_1^{k_1}`, then `p_2^{k_2}`, … in the canonical
/// prime order of `fact`.
pub fn split_by_primes(f: &Series, fact: &ConstantFactorization) -> Result<SplitResult> {
    let r = fact.omega();
    if r < 2 {
        return Err(Error::NothingToSplit { omega: r });
    }
    let a0 = f.try_coeff(0)?;
    if fact.product() != a0 {
        return Err(Error::NotAFactorization {
            m: fact.product().to_string(),
            n: "1".into(),
            a0: a0.to_string(),
        });
    }
    let mut constant_terms: Vec<RingElem> = fact.factors.iter().map(|(p, k)| p.pow(*k)).collect();
    constant_terms[0] = fact.unit.mul(&constant_terms[0]);

    let mut factors = Vec::with_capacity(r);
    let mut rest = f.clone();
    let mut rest_const = a0;
    for m in &constant_terms[..r - 1] {
        let n = rest_const.div_exact(m).expect("m divides the remaining constant term");
        let (g1, g2) = split_coprime(&rest, m, &n)?;
        factors.push(g1);
        rest = g2;
        rest_const = n;
    }
    factors.push(rest);
    Ok(SplitResult {
        factors,
        constant_terms,
        verified_to: 0,
    })
}

/// Index of the first coefficient in `0..=n` where `∏ factors` and `f` differ,
/// computed by direct convolution of truncations. The empty product is 1.
pub fn first_mismatch(factors: &[Series], f: &Series, n: usize) -> Result<Option<usize>> {
    let ring = f.ring();
    if let Some(bad) = factors.iter().find(|g| g.ring() != ring) {
        return Err(Error::RingMismatch {
            left: ring,
            right: bad.ring(),
        });
    }
    let len = n + 1;
    let mut acc = vec![RingElem::zero(ring); len];
    acc[0] = RingElem::one(ring);
    for g in factors {
        let b = g.prefix(len)?;
        let mut next = vec![RingElem::zero(ring); len];
        for (i, ai) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, bj) in b[..len - i].iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                next[i + j] = next[i + j].add(&ai.mul(bj));
            }
        }
        acc = next;
    }
    let target = f.prefix(len)?;
    Ok(acc.iter().zip(&target).position(|(x, y)| x != y))
}

/// Whether `∏ factors` agrees with `f` on coefficients `0..=n`.
pub fn verify_product(factors: &[Series], f: &Series, n: usize) -> Result<bool> {
    Ok(first_mismatch(factors, f, n)?.is_none())
}
