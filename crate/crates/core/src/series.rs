//! Lazily evaluated formal power series.
//!
//! A [`Series`] is a node in an immutable expression graph built from a small
//! set of closed-form constructors. Coefficients are computed on demand and
//! memoized per node; the memo sits behind a mutex, so a `Series` can be
//! shared across threads and every query returns the same value. Equality of
//! series is never decided globally, only through explicit truncations.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rings::{RingElem, RingTag};

/// Default hard cap on the number of memoized coefficients per series.
pub const DEFAULT_MEMO_CAP: usize = 1 << 16;

/// Environment variable overriding [`DEFAULT_MEMO_CAP`].
pub const MEMO_CAP_ENV: &str = "SERIESFACT_MAX_MEMO";

/// The process-wide memo cap, read once from `SERIESFACT_MAX_MEMO`.
pub fn memo_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MEMO_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&c: &usize| c > 0)
            .unwrap_or(DEFAULT_MEMO_CAP)
    })
}

#[derive(Clone)]
pub struct Series(Arc<Node>);

struct Node {
    ring: RingTag,
    source: Source,
    /// Every coefficient past this index is zero, when known.
    support: Option<usize>,
    memo: Mutex<Vec<RingElem>>,
}

enum Source {
    Poly(Vec<RingElem>),
    Add(Series, Series),
    Sub(Series, Series),
    Neg(Series),
    Mul(Series, Series),
    Scale(RingElem, Series),
    Invert {
        f: Series,
        inv0: RingElem,
    },
    Shift {
        f: Series,
        by: usize,
    },
    /// `b_0 = 0`, `b_i = a_i - uv · Σ_{t=1}^{i-1} b_t b_{i-t}`.
    SplitTail {
        f: Series,
        uv: RingElem,
    },
}

/// A finite window `a_0..=a_N` of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<RingElem>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<RingElem>) -> Self {
        assert!(!coeffs.is_empty(), "a truncation holds at least a_0");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RingElem> {
        self.coeffs
    }
}

fn check_same(a: &Series, b: &Series) -> Result<()> {
    if a.ring() == b.ring() {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            left: a.ring(),
            right: b.ring(),
        })
    }
}

impl Series {
    fn from_source(ring: RingTag, source: Source, support: Option<usize>) -> Series {
        Series(Arc::new(Node {
            ring,
            source,
            support,
            memo: Mutex::new(Vec::new()),
        }))
    }

    /// Polynomial with the given coefficients (ascending), all in `ring`.
    pub fn polynomial(ring: RingTag, mut coeffs: Vec<RingElem>) -> Result<Series> {
        if let Some(c) = coeffs.iter().find(|c| c.tag() != ring) {
            return Err(Error::RingMismatch {
                left: ring,
                right: c.tag(),
            });
        }
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        let support = coeffs.len().saturating_sub(1);
        Ok(Series::from_source(ring, Source::Poly(coeffs), Some(support)))
    }

    /// Polynomial over `Z` from machine integers.
    pub fn from_ints(coeffs: &[i64]) -> Series {
        Series::polynomial(RingTag::Int, coeffs.iter().map(|&c| RingElem::int(c)).collect())
            .expect("integer coefficients")
    }

    pub fn constant(c: RingElem) -> Series {
        let ring = c.tag();
        Series::polynomial(ring, vec![c]).expect("single-ring coefficient")
    }

    pub fn zero(ring: RingTag) -> Series {
        Series::polynomial(ring, Vec::new()).expect("empty polynomial")
    }

    pub fn one(ring: RingTag) -> Series {
        Series::constant(RingElem::one(ring))
    }

    /// The indeterminate `z`.
    pub fn z(ring: RingTag) -> Series {
        Series::polynomial(ring, vec![RingElem::zero(ring), RingElem::one(ring)]).expect("single-ring coefficients")
    }

    /// `1 + z + z^2 + ...`, the inverse of `1 - z`.
    pub fn geometric(ring: RingTag) -> Series {
        let one_minus_z = Series::polynomial(ring, vec![RingElem::one(ring), RingElem::from_int(ring, -1)])
            .expect("single-ring coefficients");
        one_minus_z.invert().expect("1 - z is a unit")
    }

    pub fn ring(&self) -> RingTag {
        self.0.ring
    }

    /// Index past which every coefficient is known to vanish, if any.
    pub fn support_bound(&self) -> Option<usize> {
        self.0.support
    }

    pub fn is_same(&self, other: &Series) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        check_same(self, other)?;
        let support = max_support(self, other);
        Ok(Series::from_source(
            self.ring(),
            Source::Add(self.clone(), other.clone()),
            support,
        ))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        check_same(self, other)?;
        let support = max_support(self, other);
        Ok(Series::from_source(
            self.ring(),
            Source::Sub(self.clone(), other.clone()),
            support,
        ))
    }

    pub fn neg(&self) -> Series {
        Series::from_source(self.ring(), Source::Neg(self.clone()), self.support_bound())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        check_same(self, other)?;
        let support = match (self.support_bound(), other.support_bound()) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(Series::from_source(
            self.ring(),
            Source::Mul(self.clone(), other.clone()),
            support,
        ))
    }

    /// `c · self`.
    pub fn scale(&self, c: &RingElem) -> Result<Series> {
        if c.tag() != self.ring() {
            return Err(Error::RingMismatch {
                left: self.ring(),
                right: c.tag(),
            });
        }
        Ok(Series::from_source(
            self.ring(),
            Source::Scale(c.clone(), self.clone()),
            self.support_bound(),
        ))
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn invert(&self) -> Result<Series> {
        let a0 = self.try_coeff(0)?;
        let inv0 = a0.unit_inverse().ok_or_else(|| Error::NotInvertible(a0.to_string()))?;
        let support = (self.support_bound() == Some(0)).then_some(0);
        Ok(Series::from_source(
            self.ring(),
            Source::Invert { f: self.clone(), inv0 },
            support,
        ))
    }

    pub fn pow(&self, mut n: u32) -> Series {
        let mut acc = Series::one(self.ring());
        let mut base = self.clone();
        let mut first = true;
        while n > 0 {
            if n & 1 == 1 {
                acc = if first {
                    base.clone()
                } else {
                    acc.mul(&base).expect("same ring")
                };
                first = false;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// The series `Σ a_{i+by} z^i`, i.e. `self / z^by` when the first `by`
    /// coefficients vanish.
    fn shift(&self, by: usize) -> Series {
        if by == 0 {
            return self.clone();
        }
        let support = self.support_bound().map(|s| s.saturating_sub(by));
        Series::from_source(self.ring(), Source::Shift { f: self.clone(), by }, support)
    }

    /// Writes `self = z^t · rest` with `rest(0) != 0`, looking at indices
    /// `0..=probe` only.
    pub fn strip_z(&self, probe: usize) -> Result<(usize, Series)> {
        let window = self.prefix(probe + 1)?;
        match window.iter().position(|c| !c.is_zero()) {
            Some(t) => Ok((t, self.shift(t))),
            None => Err(Error::Indeterminate { probe }),
        }
    }

    /// The coefficient sequence `g` with `b_0 = 0` and
    /// `b_i = a_i - uv·Σ_{t=1}^{i-1} b_t b_{i-t}`, where `a_i` are the
    /// coefficients of `self`. Coefficient `i` depends on `a_1..=a_i` only.
    pub(crate) fn split_tail(&self, uv: &RingElem) -> Series {
        let support = (self.support_bound() == Some(0)).then_some(0);
        Series::from_source(
            self.ring(),
            Source::SplitTail {
                f: self.clone(),
                uv: uv.clone(),
            },
            support,
        )
    }

    /// Coefficient `i`. Panics past the memo cap; see [`Series::try_coeff`].
    pub fn coeff(&self, i: usize) -> RingElem {
        self.try_coeff(i).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_coeff(&self, i: usize) -> Result<RingElem> {
        if let Some(s) = self.support_bound() {
            if i > s {
                return Ok(RingElem::zero(self.ring()));
            }
        }
        self.ensure(i + 1)?;
        let memo = self.0.memo.lock().expect("memo lock");
        Ok(memo[i].clone())
    }

    /// The first `n` coefficients.
    pub fn prefix(&self, n: usize) -> Result<Vec<RingElem>> {
        let stored = match self.support_bound() {
            Some(s) => n.min(s + 1),
            None => n,
        };
        self.ensure(stored)?;
        let mut out = {
            let memo = self.0.memo.lock().expect("memo lock");
            memo[..stored].to_vec()
        };
        out.resize(n, RingElem::zero(self.ring()));
        Ok(out)
    }

    /// `a_0..=a_order`.
    pub fn truncate(&self, order: usize) -> Result<TruncatedSeries> {
        Ok(TruncatedSeries::new(self.prefix(order + 1)?))
    }

    /// Number of coefficients computed so far.
    pub fn computed_len(&self) -> usize {
        self.0.memo.lock().expect("memo lock").len()
    }

    /// Coefficients `0..n` of a child, without padding past its support.
    fn child_prefix(child: &Series, n: usize) -> Result<Vec<RingElem>> {
        let stored = match child.support_bound() {
            Some(s) => n.min(s + 1),
            None => n,
        };
        child.ensure(stored)?;
        let memo = child.0.memo.lock().expect("memo lock");
        Ok(memo[..stored].to_vec())
    }

    fn ensure(&self, n: usize) -> Result<()> {
        let cap = memo_cap();
        if n > cap {
            return Err(Error::MemoCap { index: n - 1, cap });
        }
        let mut memo = self.0.memo.lock().expect("memo lock");
        let start = memo.len();
        if start >= n {
            return Ok(());
        }
        let ring = self.ring();
        let zero = RingElem::zero(ring);
        let at = |v: &[RingElem], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
        match &self.0.source {
            Source::Poly(cs) => {
                memo.extend((start..n).map(|i| at(cs, i)));
            }
            Source::Add(a, b) | Source::Sub(a, b) => {
                let (av, bv) = (Self::child_prefix(a, n)?, Self::child_prefix(b, n)?);
                let is_add = matches!(self.0.source, Source::Add(..));
                for i in start..n {
                    let (x, y) = (at(&av, i), at(&bv, i));
                    memo.push(if is_add { x.add(&y) } else { x.sub(&y) });
                }
            }
            Source::Neg(a) => {
                let av = Self::child_prefix(a, n)?;
                memo.extend((start..n).map(|i| at(&av, i).neg()));
            }
            Source::Scale(c, a) => {
                let av = Self::child_prefix(a, n)?;
                memo.extend((start..n).map(|i| c.mul(&at(&av, i))));
            }
            Source::Mul(a, b) => {
                let av = Self::child_prefix(a, n)?;
                let bv = if a.is_same(b) {
                    av.clone()
                } else {
                    Self::child_prefix(b, n)?
                };
                for i in start..n {
                    memo.push(convolve(&av, &bv, i, &zero));
                }
            }
            Source::Invert { f, inv0 } => {
                let fv = Self::child_prefix(f, n)?;
                for i in start..n {
                    let c = if i == 0 {
                        inv0.clone()
                    } else {
                        let mut acc = zero.clone();
                        for (t, ft) in fv.iter().enumerate().take(i + 1).skip(1) {
                            if !ft.is_zero() {
                                acc = acc.add(&ft.mul(&memo[i - t]));
                            }
                        }
                        inv0.mul(&acc).neg()
                    };
                    memo.push(c);
                }
            }
            Source::Shift { f, by } => {
                let fv = Self::child_prefix(f, n + by)?;
                memo.extend((start..n).map(|i| at(&fv, i + by)));
            }
            Source::SplitTail { f, uv } => {
                let fv = Self::child_prefix(f, n)?;
                for i in start..n {
                    let c = if i == 0 {
                        zero.clone()
                    } else {
                        let mut acc = zero.clone();
                        for t in 1..i {
                            let (x, y) = (&memo[t], &memo[i - t]);
                            if !x.is_zero() && !y.is_zero() {
                                acc = acc.add(&x.mul(y));
                            }
                        }
                        at(&fv, i).sub(&uv.mul(&acc))
                    };
                    memo.push(c);
                }
            }
        }
        Ok(())
    }
}

fn max_support(a: &Series, b: &Series) -> Option<usize> {
    Some(a.support_bound()?.max(b.support_bound()?))
}

/// `Σ_t a_t b_{i-t}` over the stored (nonzero-support) ranges.
fn convolve(a: &[RingElem], b: &[RingElem], i: usize, zero: &RingElem) -> RingElem {
    if a.is_empty() || b.is_empty() {
        return zero.clone();
    }
    let lo = i.saturating_sub(b.len() - 1);
    let hi = i.min(a.len() - 1);
    let mut acc = zero.clone();
    for t in lo..=hi {
        let (x, y) = (&a[t], &b[i - t]);
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let memo = self.0.memo.lock().expect("memo lock");
        f.debug_struct("Series")
            .field("ring", &self.ring())
            .field("support", &self.support_bound())
            .field("computed", &memo.iter().map(ToString::to_string).collect::<Vec<_>>())
            .finish()
    }
}
