//! The paper's section 4 example corpus with the verdicts the paper claims.
//!
//! Shared by the acceptance suite and the CLI's `--seed-corpus` run. Each
//! case is pure, so cases may be checked concurrently.

use serde::Serialize;

use crate::criteria::{analyze, Config, Criterion, Status, Verdict};
use crate::error::Result;
use crate::factorize::{split_by_primes, verify_product};
use crate::newton::{NPPoint, NewtonPolygon};
use crate::rings::{factor_constant, RingElem, RingTag, Valuation};
use crate::sparser::parse_series;

/// Order at which constructed factorizations are verified.
pub const VERIFY_ORDER: usize = 32;

/// One requirement on the verdict of a corpus case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Status(Status),
    Bounds {
        lower: u64,
        upper: u64,
    },
    UpperAtMost(u64),
    /// The named criterion fired.
    Fired(&'static str),
    /// One of the named criteria fired.
    AnyFired(Vec<&'static str>),
    ValuationBound(u64),
    StaircaseWidth(usize),
    DumasIndex(usize),
    /// The product of these expressions matches `f` to [`VERIFY_ORDER`].
    ProductOf(Vec<String>),
    /// `split_by_primes` yields this many factors, verified to [`VERIFY_ORDER`].
    SplitsInto(usize),
    /// The negative part of the Newton polygon for `prime` is the single edge
    /// `(0,k)–(n,0)`.
    SingleEdge {
        prime: i64,
        k: u64,
        n: u64,
    },
}

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub example: &'static str,
    pub ring: RingTag,
    pub expr: String,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub example: &'static str,
    pub expr: String,
    pub pass: bool,
    /// Compact `status(lower, upper) via [criteria]`.
    pub verdict: String,
    /// Descriptions of the checks that failed.
    pub failed: Vec<String>,
}

fn case(example: &'static str, ring: RingTag, expr: String, checks: Vec<Check>) -> CorpusCase {
    CorpusCase {
        example,
        ring,
        expr,
        checks,
    }
}

/// The acceptance corpus: Examples 1, 2, 4, 5 and 7 over their parameter grids.
pub fn corpus() -> Vec<CorpusCase> {
    let mut out = Vec::new();
    for p in [2, 3, 5] {
        for n in 2..=6u64 {
            out.push(case(
                "Example 1",
                RingTag::Int,
                format!("({p}+z)^{n}"),
                vec![
                    Check::Status(Status::Bounds),
                    Check::Bounds { lower: 1, upper: n },
                    Check::Fired("constant_term_bounds"),
                    Check::ProductOf(vec![format!("{p}+z"); n as usize]),
                ],
            ));
        }
    }
    for p in [2, 3, 5] {
        for (k, j) in [(3, 2u64), (5, 3), (4, 1)] {
            for sign in ["+", "-"] {
                for g in ["0", "inv(1-z)"] {
                    let mut checks = vec![Check::ValuationBound(j), Check::UpperAtMost(j)];
                    if j == 1 {
                        checks.push(Check::Status(Status::Irreducible));
                    }
                    out.push(case(
                        "Example 2",
                        RingTag::Int,
                        format!("{p}^{k} {sign} z^{j} + z^{}*{g}", j + 1),
                        checks,
                    ));
                }
            }
        }
    }
    for p in [2i64, 3] {
        for k in 2..=5u64 {
            for sign in ["", "-"] {
                let mut expr = format!("{sign}{p}^{k}");
                for i in 1..=k {
                    expr += &format!(" + {p}^{}*z^{i}", k - i + 1);
                }
                expr += &format!(" + z^{}*inv(1-z)", k + 1);
                out.push(case(
                    "Example 4",
                    RingTag::Int,
                    expr,
                    vec![
                        Check::Status(Status::Irreducible),
                        Check::StaircaseWidth(1),
                        Check::DumasIndex(k as usize + 1),
                        Check::SingleEdge { prime: p, k, n: k + 1 },
                    ],
                ));
            }
        }
    }
    for (p, k, j) in [(2, 3, 2), (3, 2, 3), (5, 3, 4)] {
        for sign in ["", "-"] {
            for expr in [
                format!("({sign}{p}^{k} + z^{j})*inv(1-z)"),
                format!("{sign}{p}^{k} + z^{j}"),
            ] {
                out.push(case(
                    "Example 5",
                    RingTag::Int,
                    expr,
                    vec![Check::Status(Status::Irreducible), Check::Fired("gcd_eisenstein")],
                ));
            }
        }
    }
    for k in 2..=4 {
        for u in ["1", "i"] {
            for g in ["0", "1+z"] {
                out.push(case(
                    "Example 7",
                    RingTag::Gauss,
                    format!("19^{k}*(4+3i)*{u} + 4*z^{} + z^{k}*({g})", k - 1),
                    vec![
                        Check::Status(Status::ExactCount),
                        Check::Bounds { lower: 2, upper: 2 },
                        Check::AnyFired(vec![
                            "multi_prime_dumas",
                            "multi_prime_eisenstein",
                            "multi_prime_staircase",
                        ]),
                        Check::SplitsInto(2),
                    ],
                ));
            }
        }
    }
    out
}

/// `status(lower, upper) via [criteria]`.
pub fn summarize(v: &Verdict) -> String {
    let names: Vec<&str> = v.criteria.iter().map(Criterion::name).collect();
    format!("{:?}({}, {}) via [{}]", v.status, v.lower, v.upper, names.join(", "))
}

impl CorpusCase {
    fn holds(&self, check: &Check, v: &Verdict) -> Result<bool> {
        let f = parse_series(&self.expr, self.ring)?;
        Ok(match check {
            Check::Status(s) => v.status == *s,
            Check::Bounds { lower, upper } => v.lower == *lower && v.upper == *upper,
            Check::UpperAtMost(u) => v.upper <= *u,
            Check::Fired(name) => v.fired(name),
            Check::AnyFired(names) => names.iter().any(|n| v.fired(n)),
            Check::ValuationBound(b) => v
                .criteria
                .iter()
                .any(|c| matches!(c, Criterion::ValuationBound { bound, .. } if bound == b)),
            Check::StaircaseWidth(w) => v
                .criteria
                .iter()
                .any(|c| matches!(c, Criterion::ValuationStaircase { m, .. } if m == w)),
            Check::DumasIndex(i) => v
                .criteria
                .iter()
                .any(|c| matches!(c, Criterion::Dumas { n, .. } if n == i)),
            Check::ProductOf(exprs) => {
                let factors = exprs
                    .iter()
                    .map(|e| parse_series(e, self.ring))
                    .collect::<Result<Vec<_>>>()?;
                verify_product(&factors, &f, VERIFY_ORDER)?
            }
            Check::SplitsInto(r) => {
                let fact = factor_constant(&f.coeff(0))?;
                let split = split_by_primes(&f, &fact)?;
                split.factors.len() == *r && verify_product(&split.factors, &f, VERIFY_ORDER)?
            }
            Check::SingleEdge { prime, k, n } => {
                let val = Valuation::adic(&RingElem::int(*prime))?;
                let np = NewtonPolygon::of_series(&f, &val, 2 * *n as usize + 2)?;
                let neg: Vec<_> = np.negative_edges().collect();
                neg.len() == 1 && neg[0].from == NPPoint::new(0, *k) && neg[0].to == NPPoint::new(*n, 0)
            }
        })
    }

    /// Analyze with `cfg` and evaluate every check.
    pub fn run(&self, cfg: &Config) -> CaseOutcome {
        let mut outcome = CaseOutcome {
            example: self.example,
            expr: self.expr.clone(),
            pass: false,
            verdict: String::new(),
            failed: Vec::new(),
        };
        let verdict = match parse_series(&self.expr, self.ring).and_then(|f| analyze(&f, cfg)) {
            Ok(v) => v,
            Err(e) => {
                outcome.verdict = format!("error: {e}");
                outcome.failed.push("analysis".into());
                return outcome;
            }
        };
        outcome.verdict = summarize(&verdict);
        for check in &self.checks {
            match self.holds(check, &verdict) {
                Ok(true) => {}
                Ok(false) => outcome.failed.push(format!("{check:?}")),
                Err(e) => outcome.failed.push(format!("{check:?}: {e}")),
            }
        }
        outcome.pass = outcome.failed.is_empty();
        outcome
    }
}
