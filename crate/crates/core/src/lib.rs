//! Irreducibility criteria, factor-count bounds and explicit coprime splitting
//! for formal power series over `Z`, the Gaussian integers and `Q[y]`.
//!
//! * [`rings`]: coefficient rings, extended gcd, factorization, valuations.
//! * [`series`]: lazily evaluated power series.
//! * [`sparser`]: the closed-form series expression language.
//! * [`newton`]: Newton polygons read through a finite window.
//! * [`factorize`]: coprime splitting and the product oracle.
//! * [`criteria`]: the criteria and the aggregated [`Verdict`].
//! * [`corpus`]: the paper's section 4 examples with their claimed verdicts.

pub mod corpus;
pub mod criteria;
pub mod error;
pub mod factorize;
pub mod newton;
pub mod rings;
pub mod series;
pub mod sparser;

pub use criteria::{analyze, Config, Criterion, Status, ValuationMode, Verdict, Window};
pub use error::{Error, Result};
pub use factorize::{
    first_mismatch, split_by_primes, split_coprime, split_coprime_with, verify_product, FactorReport, SplitResult,
};
pub use newton::{FStar, NPPoint, NewtonPolygon};
pub use rings::{factor_constant, ConstantFactorization, Gaussian, QPoly, RingElem, RingTag, Val, Valuation};
pub use series::{Series, TruncatedSeries};
pub use sparser::{parse, parse_series, Expr};
