use thiserror::Error;

use crate::rings::RingTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingTag, right: RingTag },

    #[error("unsupported ring for {op}: {ring}")]
    UnsupportedRing { op: &'static str, ring: RingTag },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("gcd undefined: both inputs are zero")]
    GcdUndefined,

    #[error("zero has no factorization")]
    ZeroFactorization,

    #[error("{0} is a unit; omega and big omega need a nonzero nonunit")]
    UnitInput(String),

    #[error("factorization limit exceeded: cofactor {0} does not fit in 64 bits after trial division")]
    FactorizationLimit(String),

    #[error("invalid prime for valuation: {0}")]
    InvalidPrime(String),

    #[error("series is not invertible: constant term {0} is not a unit")]
    NotInvertible(String),

    #[error("indeterminate: coefficients 0..={probe} are all zero, increase probe bound")]
    Indeterminate { probe: usize },

    #[error("coefficient index {index} exceeds the memo cap {cap}")]
    MemoCap { index: usize, cap: usize },

    #[error("not a factorization of the constant term: {m} * {n} != {a0}")]
    NotAFactorization { m: String, n: String, a0: String },

    #[error("factors must be coprime: gcd({m}, {n}) = {gcd}")]
    NotCoprime { m: String, n: String, gcd: String },

    #[error("not a Bezout pair: {m}*({u}) + {n}*({v}) != 1")]
    InvalidBezout { m: String, n: String, u: String, v: String },

    #[error("trivial split rejected: {0} is a unit")]
    TrivialSplit(String),

    #[error("nothing to split: the constant term has {omega} distinct prime factor(s), need at least 2")]
    NothingToSplit { omega: usize },

    #[error("inconsistent verdict: {0}")]
    Inconsistent(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
