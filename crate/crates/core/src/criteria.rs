//! The verdict engine: every irreducibility and factor-count criterion of the
//! paper, and their aggregation in [`analyze`].
//!
//! All criteria are sufficient conditions evaluated inside explicit search
//! windows; when no witness is found the verdict keeps the proven bounds and
//! never guesses.
//!
//! Lifting to `R[[z]]`: for a PID `R` and `a_0 = u·p^k`, a factorization of
//! `f` into nonunits of `R[[z]]` has every constant term divisible by `p`, so
//! it is also a factorization into nonunits of `R_(p)[[z]]`. Irreducibility
//! and factor-count bounds proved over the discrete valuation ring `R_(p)`
//! therefore hold over `R` (the localization lifting lemma of the paper).

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::newton::single_edge_holds;
use crate::rings::{factor_constant, valuation_of, ConstantFactorization, QPoly, RingElem, RingTag, Val, Valuation};
use crate::series::{memo_cap, Series};

/// Valuation used over `Q[y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValuationMode {
    /// The `π`-adic valuation for the linear prime `π` given in
    /// [`Config::prime`], or else detected from `a_0 = c·π^k` (`π = y` for
    /// `a_0 = c·y^k`).
    #[default]
    Adic,
    /// Degree of the coefficients; reported as an experimental note only.
    DegreeExperimental,
}

/// Search bounds and valuation choice for [`analyze`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// `J`: indices searched by the valuation bound and the gcd-Eisenstein
    /// criterion.
    pub valuation_search: usize,
    /// Largest staircase width `m` tried.
    pub pattern_search: usize,
    /// Indices searched for the unit coefficient of the Dumas criteria.
    pub dumas_search: usize,
    /// Indices searched for the first nonzero coefficient.
    pub probe: usize,
    /// Linear prime of `Q[y]` defining the valuation (default: detected from
    /// `a_0`).
    pub prime: Option<RingElem>,
    pub valuation_mode: ValuationMode,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            valuation_search: 256,
            pattern_search: 64,
            dumas_search: 512,
            probe: 1024,
            prime: None,
            valuation_mode: ValuationMode::Adic,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let cap = memo_cap();
        for (name, value) in [
            ("valuation search bound", self.valuation_search),
            ("pattern search bound", self.pattern_search),
            ("Dumas search bound", self.dumas_search),
            ("probe bound", self.probe),
        ] {
            if value == 0 {
                return Err(Error::Config(format!("{name} must be at least 1")));
            }
            if value >= cap {
                return Err(Error::Config(format!(
                    "{name} {value} must be below the memo cap {cap}"
                )));
            }
        }
        Ok(())
    }

    pub fn window(&self) -> Window {
        Window {
            probe: self.probe,
            valuation_search: self.valuation_search,
            pattern_search: self.pattern_search,
            dumas_search: self.dumas_search,
        }
    }
}

/// The search bounds a verdict was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub probe: usize,
    pub valuation_search: usize,
    pub pattern_search: usize,
    pub dumas_search: usize,
}

/// Per-prime witness of the multi-prime Dumas and Eisenstein criteria.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitIndexWitness {
    pub prime: RingElem,
    pub k: u64,
    pub n: usize,
}

/// Per-prime witness of the multi-prime staircase criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StaircaseWitness {
    pub prime: RingElem,
    pub k: u64,
    pub m: usize,
}

/// A criterion that fired, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Criterion {
    /// `a_0` is associate to a prime: irreducible.
    PrimeConstant { prime: RingElem },
    /// `a_0 ~ p^k` and `p ∤ a_1`: irreducible.
    PrimePowerLinear { prime: RingElem, k: u64 },
    /// `ω(a_0) ≤ Ω_f ≤ Ω(a_0)`.
    ConstantTermBounds { lower: u64, upper: u64 },
    /// Square-free `a_0`: exactly `ω(a_0)` factors.
    SquarefreeConstant { count: u64 },
    /// No prime of `a_0` divides `a_1`: exactly `ω(a_0)` factors.
    CoprimeLinearTerm { count: u64 },
    /// `Ω_f ≤ min(k, v(a_j) + j)`, minimum attained at `j` with `v(a_j) = l`.
    ValuationBound {
        prime: RingElem,
        k: u64,
        j: usize,
        l: u64,
        bound: u64,
    },
    /// Staircase of exact valuations of width `m`: irreducible.
    ValuationStaircase { prime: RingElem, k: u64, m: usize },
    /// `p^k | a_i` for `i < j`, `p ∤ a_j`, `gcd(k, j) = 1`: irreducible.
    GcdEisenstein { prime: RingElem, k: u64, j: usize },
    /// Single Newton-polygon edge `(0,k)–(n,0)` with `gcd(k,n) = 1`: irreducible.
    Dumas { prime: RingElem, k: u64, n: usize },
    /// Dumas conditions for every prime of `a_0`: exactly `count` factors.
    MultiPrimeDumas {
        count: u64,
        witnesses: Vec<UnitIndexWitness>,
    },
    /// Eisenstein-type preset of the multi-prime criterion.
    MultiPrimeEisenstein {
        count: u64,
        witnesses: Vec<UnitIndexWitness>,
    },
    /// Staircase preset of the multi-prime criterion.
    MultiPrimeStaircase {
        count: u64,
        witnesses: Vec<StaircaseWitness>,
    },
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::PrimeConstant { .. } => "prime_constant",
            Criterion::PrimePowerLinear { .. } => "prime_power_linear",
            Criterion::ConstantTermBounds { .. } => "constant_term_bounds",
            Criterion::SquarefreeConstant { .. } => "squarefree_constant",
            Criterion::CoprimeLinearTerm { .. } => "coprime_linear_term",
            Criterion::ValuationBound { .. } => "valuation_bound",
            Criterion::ValuationStaircase { .. } => "valuation_staircase",
            Criterion::GcdEisenstein { .. } => "gcd_eisenstein",
            Criterion::Dumas { .. } => "dumas",
            Criterion::MultiPrimeDumas { .. } => "multi_prime_dumas",
            Criterion::MultiPrimeEisenstein { .. } => "multi_prime_eisenstein",
            Criterion::MultiPrimeStaircase { .. } => "multi_prime_staircase",
        }
    }

    /// Exact factor count of the `z`-free part implied by this criterion.
    pub fn exact_count(&self) -> Option<u64> {
        match self {
            Criterion::PrimeConstant { .. }
            | Criterion::PrimePowerLinear { .. }
            | Criterion::ValuationStaircase { .. }
            | Criterion::GcdEisenstein { .. }
            | Criterion::Dumas { .. } => Some(1),
            Criterion::ValuationBound { bound: 1, .. } => Some(1),
            Criterion::SquarefreeConstant { count }
            | Criterion::CoprimeLinearTerm { count }
            | Criterion::MultiPrimeDumas { count, .. }
            | Criterion::MultiPrimeEisenstein { count, .. }
            | Criterion::MultiPrimeStaircase { count, .. } => Some(*count),
            Criterion::ConstantTermBounds { lower, upper } => (lower == upper).then_some(*lower),
            Criterion::ValuationBound { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// `f` is a unit of `R[[z]]`.
    Unit,
    Irreducible,
    /// Exactly `lower = upper ≥ 2` irreducible factors.
    ExactCount,
    /// Proven bounds `lower < upper`; the exact count is undetermined.
    Bounds,
    /// The constant term could not be classified (e.g. a non-prime-power
    /// over `Q[y]`); `lower`/`upper` are coarse but valid.
    Unknown,
}

/// Result of [`analyze`]. `lower` and `upper` bound the number of irreducible
/// factors of `f` counted with multiplicity, including `z^{z_power}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub lower: u64,
    pub upper: u64,
    pub z_power: usize,
    pub criteria: Vec<Criterion>,
    pub window: Window,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn fired(&self, name: &str) -> bool {
        self.criteria.iter().any(|c| c.name() == name)
    }

    pub fn criterion(&self, name: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.name() == name)
    }

    /// The verdict invariants: ordered bounds, statuses matching bounds, and
    /// every fired criterion agreeing with them.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        if self.lower > self.upper {
            return Err(format!("lower {} > upper {}", self.lower, self.upper));
        }
        let ok = match self.status {
            Status::Unit => self.lower == 0 && self.upper == 0,
            Status::Irreducible => self.lower == 1 && self.upper == 1,
            Status::ExactCount => self.lower == self.upper && self.lower >= 2,
            Status::Bounds | Status::Unknown => self.lower < self.upper,
        };
        if !ok {
            return Err(format!(
                "status {:?} with bounds ({}, {})",
                self.status, self.lower, self.upper
            ));
        }
        let t = self.z_power as u64;
        for c in &self.criteria {
            if let Some(count) = c.exact_count() {
                if count + t != self.lower || count + t != self.upper {
                    return Err(format!(
                        "{} gives {} factors besides z^{t} but bounds are ({}, {})",
                        c.name(),
                        count,
                        self.lower,
                        self.upper
                    ));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Unit => writeln!(f, "status: unit")?,
            Status::Irreducible => writeln!(f, "status: irreducible")?,
            Status::ExactCount => writeln!(f, "status: exactly {} irreducible factors", self.lower)?,
            Status::Bounds => writeln!(
                f,
                "status: between {} and {} irreducible factors",
                self.lower, self.upper
            )?,
            Status::Unknown => writeln!(
                f,
                "status: unknown (between {} and {} irreducible factors)",
                self.lower, self.upper
            )?,
        }
        if self.z_power > 0 {
            writeln!(f, "z-power: {}", self.z_power)?;
        }
        for c in &self.criteria {
            let params = serde_json::to_value(c).expect("criterion serializes");
            let mut params = params.as_object().cloned().unwrap_or_default();
            params.remove("name");
            let rendered: Vec<String> = params
                .iter()
                .map(|(k, v)| format!("{k}={}", v.to_string().trim_matches('"')))
                .collect();
            writeln!(f, "criterion: {} {}", c.name(), rendered.join(" "))?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let w = &self.window;
        write!(
            f,
            "window: probe={} valuation_search={} pattern_search={} dumas_search={}",
            w.probe, w.valuation_search, w.pattern_search, w.dumas_search
        )
    }
}

/// `a_0 = unit · π^k` for the uniformizer of `valuation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePower {
    pub valuation: Valuation,
    pub k: u64,
}

impl PrimePower {
    /// The single prime of a factorization with `ω = 1`.
    pub fn from_factorization(fact: &ConstantFactorization) -> Option<Self> {
        match fact.factors.as_slice() {
            [(p, k)] => Some(PrimePower {
                valuation: Valuation::Adic(p.clone()),
                k: *k as u64,
            }),
            _ => None,
        }
    }

    /// `a_0` as a nonzero constant times a positive power of the uniformizer
    /// of `valuation`, if it is one.
    pub fn of_constant(a0: &RingElem, valuation: &Valuation) -> Option<Self> {
        let pi = valuation.uniformizer()?;
        let k = valuation_of(a0, valuation).finite()?;
        if k == 0 {
            return None;
        }
        let rest = a0.div_exact(&pi.pow(u32::try_from(k).ok()?))?;
        rest.is_unit().then(|| PrimePower {
            valuation: valuation.clone(),
            k,
        })
    }

    pub fn prime(&self) -> RingElem {
        self.valuation.uniformizer().expect("a prime power has a uniformizer")
    }
}

/// Valuations of the coefficients of a series, computed on demand.
struct Vals<'a> {
    f: &'a Series,
    v: &'a Valuation,
    cache: Vec<Val>,
}

impl<'a> Vals<'a> {
    fn new(f: &'a Series, v: &'a Valuation) -> Self {
        Vals {
            f,
            v,
            cache: Vec::new(),
        }
    }

    fn get(&mut self, i: usize) -> Result<Val> {
        while self.cache.len() <= i {
            let c = self.f.try_coeff(self.cache.len())?;
            self.cache.push(valuation_of(&c, self.v));
        }
        Ok(self.cache[i])
    }

    /// Least `1 ≤ n ≤ bound` with `v(a_n) = 0`.
    fn first_unit(&mut self, bound: usize) -> Result<Option<usize>> {
        for n in 1..=bound {
            if self.get(n)?.is_zero() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

/// Theorem B: irreducible if `k = 1` or `π ∤ a_1`.
pub fn check_prime_power_basic(f: &Series, pp: &PrimePower) -> Result<Option<Criterion>> {
    let prime = pp.prime();
    if pp.k == 1 {
        return Ok(Some(Criterion::PrimeConstant { prime }));
    }
    let a1 = f.try_coeff(1)?;
    Ok(valuation_of(&a1, &pp.valuation)
        .is_zero()
        .then_some(Criterion::PrimePowerLinear { prime, k: pp.k }))
}

/// Bounds `ω(a_0) ≤ Ω_f ≤ Ω(a_0)` and the square-free promotion.
pub fn bounds_from_constant(fact: &ConstantFactorization) -> Vec<Criterion> {
    let (lower, upper) = (fact.omega() as u64, fact.big_omega());
    let mut out = vec![Criterion::ConstantTermBounds { lower, upper }];
    if lower >= 2 && fact.is_squarefree() {
        out.push(Criterion::SquarefreeConstant { count: lower });
    }
    out
}

/// Exactly `ω(a_0)` factors when no prime of `a_0` divides `a_1`.
///
/// The paper states the hypothesis as "`a_0` and `a_1` nonassociate", which
/// is too weak (`12 + 2z = 2·(6 + z)` has three factors); its proof uses
/// `p_t ∤ a_1` for every `t`, which is what is checked here.
pub fn check_nonassociate_a1(f: &Series, fact: &ConstantFactorization) -> Result<Option<Criterion>> {
    if fact.factors.is_empty() {
        return Ok(None);
    }
    let a1 = f.try_coeff(1)?;
    let coprime = fact
        .factors
        .iter()
        .all(|(p, _)| valuation_of(&a1, &Valuation::Adic(p.clone())).is_zero());
    Ok(coprime.then_some(Criterion::CoprimeLinearTerm {
        count: fact.omega() as u64,
    }))
}

/// Outcome of [`upper_bound_valuation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationBoundResult {
    /// `min(k, v(a_j) + j)` over the searched `j`.
    pub bound: u64,
    /// `(j, v(a_j))` attaining the minimum, when it beats or ties `k`.
    pub witness: Option<(usize, u64)>,
    /// No coefficient `a_1..a_J` was nonzero.
    pub exhausted: bool,
}

/// `Ω_f ≤ min(k, v(a_1) + 1, v(a_2) + 2, …)` searched over `1 ≤ j ≤ J`.
pub fn upper_bound_valuation(f: &Series, pp: &PrimePower, search: usize) -> Result<ValuationBoundResult> {
    let mut vals = Vals::new(f, &pp.valuation);
    let mut bound = pp.k;
    let mut witness = None;
    let mut exhausted = true;
    for j in 1..=search {
        if j as u64 >= bound {
            exhausted = false;
            break;
        }
        if let Val::Fin(l) = vals.get(j)? {
            exhausted = false;
            if l + j as u64 <= bound {
                bound = l + j as u64;
                witness = Some((j, l));
            }
        }
    }
    Ok(ValuationBoundResult {
        bound,
        witness,
        exhausted,
    })
}

/// Theorem 3: the least `m ≤ m_bound` with `v(a_{(k−ℓ)m+i}) = ℓ` for all
/// `1 ≤ ℓ ≤ k`, `1 ≤ i ≤ m`, and `v(a_{km+1}) = 0`.
pub fn check_pattern(f: &Series, pp: &PrimePower, m_bound: usize) -> Result<Option<usize>> {
    let k = pp.k;
    if k < 2 {
        return Ok(None);
    }
    let mut vals = Vals::new(f, &pp.valuation);
    let max_index = memo_cap() as u64 - 1;
    'widths: for m in 1..=m_bound {
        let m64 = m as u64;
        if k * m64 + 1 > max_index {
            break;
        }
        for l in (1..=k).rev() {
            for i in 1..=m64 {
                if vals.get(((k - l) * m64 + i) as usize)? != Val::Fin(l) {
                    continue 'widths;
                }
            }
        }
        if vals.get((k * m64 + 1) as usize)?.is_zero() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Theorem 4 / Corollary 2: with `j` the least index `≤ J` where `π ∤ a_j`,
/// fires when `gcd(k, j) = 1` and `π^k | a_i` for `1 ≤ i < j`. Returns `j`.
pub fn check_gcd_eisenstein(f: &Series, pp: &PrimePower, search: usize) -> Result<Option<usize>> {
    if pp.k < 2 {
        return Ok(None);
    }
    let mut vals = Vals::new(f, &pp.valuation);
    let Some(j) = vals.first_unit(search)? else {
        return Ok(None);
    };
    if pp.k.gcd(&(j as u64)) != 1 {
        return Ok(None);
    }
    for i in 1..j {
        if vals.get(i)? < Val::Fin(pp.k) {
            return Ok(None);
        }
    }
    Ok(Some(j))
}

/// Outcome of [`check_dumas`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumasOutcome {
    Fired {
        n: usize,
    },
    /// The least unit index `n` fails `gcd(k,n) = 1` or the edge condition.
    Failed {
        n: usize,
    },
    /// No coefficient of valuation 0 within the window.
    NoUnitCoefficient,
}

/// Theorem 6 with `n` the least index `≤ N` of valuation 0 (the only
/// candidate: any smaller unit index would violate condition (ii)).
pub fn check_dumas(f: &Series, pp: &PrimePower, search: usize) -> Result<DumasOutcome> {
    let mut vals = Vals::new(f, &pp.valuation);
    dumas_with(&mut vals, pp.k, search)
}

fn dumas_with(vals: &mut Vals<'_>, k: u64, search: usize) -> Result<DumasOutcome> {
    let Some(n) = vals.first_unit(search)? else {
        return Ok(DumasOutcome::NoUnitCoefficient);
    };
    let cache = &vals.cache;
    if k.gcd(&(n as u64)) == 1 && single_edge_holds(|i| cache[i], k, n) {
        Ok(DumasOutcome::Fired { n })
    } else {
        Ok(DumasOutcome::Failed { n })
    }
}

/// Theorems 8, 7 and 9 for `ω(a_0) ≥ 2`: each fires when its per-prime
/// condition holds for every prime of `a_0`, giving exactly `ω(a_0)` factors.
pub fn check_multi_prime(f: &Series, fact: &ConstantFactorization, cfg: &Config) -> Result<Vec<Criterion>> {
    let r = fact.omega();
    if r < 2 {
        return Ok(Vec::new());
    }
    let mut dumas = Some(Vec::new());
    let mut eisenstein = Some(Vec::new());
    let mut staircase = Some(Vec::new());
    for (p, k) in &fact.factors {
        let pp = PrimePower {
            valuation: Valuation::Adic(p.clone()),
            k: *k as u64,
        };
        let witness = |n| UnitIndexWitness {
            prime: p.clone(),
            k: pp.k,
            n,
        };
        if let Some(ws) = dumas.as_mut() {
            match check_dumas(f, &pp, cfg.dumas_search)? {
                DumasOutcome::Fired { n } => ws.push(witness(n)),
                _ => dumas = None,
            }
        }
        if let Some(ws) = eisenstein.as_mut() {
            // Theorem 7 also admits k = 1 (then gcd(k, n) = 1 trivially).
            let j = if pp.k == 1 {
                Vals::new(f, &pp.valuation).first_unit(cfg.valuation_search)?
            } else {
                check_gcd_eisenstein(f, &pp, cfg.valuation_search)?
            };
            match j {
                Some(n) => ws.push(witness(n)),
                None => eisenstein = None,
            }
        }
        if let Some(ws) = staircase.as_mut() {
            match check_pattern(f, &pp, cfg.pattern_search)? {
                Some(m) => ws.push(StaircaseWitness {
                    prime: p.clone(),
                    k: pp.k,
                    m,
                }),
                None => staircase = None,
            }
        }
    }
    let count = r as u64;
    let mut out = Vec::new();
    if let Some(witnesses) = dumas {
        out.push(Criterion::MultiPrimeDumas { count, witnesses });
    }
    if let Some(witnesses) = eisenstein {
        out.push(Criterion::MultiPrimeEisenstein { count, witnesses });
    }
    if let Some(witnesses) = staircase {
        out.push(Criterion::MultiPrimeStaircase { count, witnesses });
    }
    Ok(out)
}

/// Accumulates bounds and fired criteria for the `z`-free part.
struct Acc {
    lower: u64,
    upper: u64,
    classified: bool,
    criteria: Vec<Criterion>,
    notes: Vec<String>,
}

impl Acc {
    fn new(lower: u64, upper: u64) -> Self {
        Acc {
            lower,
            upper,
            classified: true,
            criteria: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fire(&mut self, c: Criterion) {
        if let Some(count) = c.exact_count() {
            self.lower = self.lower.max(count);
            self.upper = self.upper.min(count);
        }
        if let Criterion::ValuationBound { bound, .. } = c {
            self.upper = self.upper.min(bound);
        }
        self.criteria.push(c);
    }
}

/// The single-prime criteria, all evaluated (no short circuit).
fn prime_power_criteria(g: &Series, pp: &PrimePower, cfg: &Config, acc: &mut Acc) -> Result<()> {
    let prime = pp.prime();
    if let Some(c) = check_prime_power_basic(g, pp)? {
        acc.fire(c);
    }
    let vb = upper_bound_valuation(g, pp, cfg.valuation_search)?;
    match vb.witness {
        Some((j, l)) => acc.fire(Criterion::ValuationBound {
            prime: prime.clone(),
            k: pp.k,
            j,
            l,
            bound: vb.bound,
        }),
        None if vb.exhausted => acc.notes.push(format!(
            "a_1..a_{} are all zero; the valuation bound may need a larger search window",
            cfg.valuation_search
        )),
        None => {}
    }
    if let Some(m) = check_pattern(g, pp, cfg.pattern_search)? {
        acc.fire(Criterion::ValuationStaircase {
            prime: prime.clone(),
            k: pp.k,
            m,
        });
    }
    if let Some(j) = check_gcd_eisenstein(g, pp, cfg.valuation_search)? {
        acc.fire(Criterion::GcdEisenstein {
            prime: prime.clone(),
            k: pp.k,
            j,
        });
    }
    match check_dumas(g, pp, cfg.dumas_search)? {
        DumasOutcome::Fired { n } => acc.fire(Criterion::Dumas { prime, k: pp.k, n }),
        DumasOutcome::Failed { .. } => {}
        DumasOutcome::NoUnitCoefficient => acc.notes.push(format!(
            "no unit coefficient found within window 1..={} for the {} valuation",
            cfg.dumas_search, pp.valuation
        )),
    }
    Ok(())
}

/// The degree-based reading of the Dumas conditions (`a_n` a nonzero
/// constant, `gcd(k, n) = 1`, `k·(n−i) > n·deg a_i`, with `k = deg a_0`).
/// Returns the witness `n`, if any.
pub fn degree_dumas_conditions(g: &Series, search: usize) -> Result<Option<usize>> {
    let coeffs = g.prefix(search + 1)?;
    let deg = |c: &RingElem| c.as_poly().and_then(QPoly::degree);
    let Some(k) = deg(&coeffs[0]) else {
        return Ok(None);
    };
    let Some(n) = (1..=search).find(|&i| deg(&coeffs[i]) == Some(0)) else {
        return Ok(None);
    };
    let k = k as u128;
    let holds = k.gcd(&(n as u128)) == 1
        && (1..n).all(|i| match deg(&coeffs[i]) {
            None => true,
            Some(d) => k * (n - i) as u128 > n as u128 * d as u128,
        });
    Ok(holds.then_some(n))
}

/// The monic linear `π = y − r` with `a = c·π^k`, `k = deg a ≥ 1`, if any.
pub fn linear_power_base(a: &RingElem) -> Option<QPoly> {
    let p = a.as_poly()?;
    let k = p.degree().filter(|&k| k >= 1)?;
    let c = p.coeffs();
    let lead = &c[k];
    // the y^{k-1} coefficient of c·(y − r)^k is −c·k·r
    let r = -&c[k - 1] / (lead * num_rational::BigRational::from_integer(k.into()));
    let pi = QPoly::y().sub(&QPoly::constant(r));
    (pi.pow(k as u32).scale(lead) == *p).then_some(pi)
}

fn analyze_polyq(g: &Series, a0: &RingElem, cfg: &Config, acc: &mut Acc) -> Result<()> {
    let deg = a0.as_poly().and_then(QPoly::degree).expect("nonzero polynomial") as u64;
    if cfg.valuation_mode == ValuationMode::DegreeExperimental {
        *acc = Acc::new(1, deg);
        acc.classified = false;
        acc.notes.push(
            "degree mode is experimental: -deg is not a valuation on Q[y], so no verdict is drawn from it".into(),
        );
        match degree_dumas_conditions(g, cfg.dumas_search)? {
            Some(n) => acc.notes.push(format!(
                "degree-based Dumas conditions hold with k = {deg}, n = {n} (not a proof)"
            )),
            None => acc
                .notes
                .push("degree-based Dumas conditions do not hold within the window".into()),
        }
        return Ok(());
    }
    let valuation = match &cfg.prime {
        Some(p) => Valuation::adic(p)?,
        None => match linear_power_base(a0) {
            Some(pi) => Valuation::adic(&RingElem::Poly(pi))?,
            None => Valuation::YAdic,
        },
    };
    match PrimePower::of_constant(a0, &valuation) {
        Some(pp) => {
            *acc = Acc::new(1, pp.k);
            acc.fire(Criterion::ConstantTermBounds { lower: 1, upper: pp.k });
            prime_power_criteria(g, &pp, cfg, acc)
        }
        None => {
            *acc = Acc::new(1, deg);
            acc.classified = false;
            acc.notes.push(format!(
                "a_0 = {a0} is not a constant times a power of the {valuation} uniformizer; \
                 factoring Q[y] is out of scope, so only 1 <= count <= deg a_0 is known"
            ));
            Ok(())
        }
    }
}

/// Runs every applicable criterion on `f` and aggregates a [`Verdict`].
pub fn analyze(f: &Series, cfg: &Config) -> Result<Verdict> {
    cfg.validate()?;
    let (t, g) = f.strip_z(cfg.probe)?;
    let a0 = g.try_coeff(0)?;
    let mut acc = Acc::new(0, 0);
    if a0.is_unit() {
        // unit part: no factors besides z^t
    } else {
        match f.ring() {
            RingTag::Int | RingTag::Gauss => {
                let fact = factor_constant(&a0)?;
                acc = Acc::new(fact.omega() as u64, fact.big_omega());
                for c in bounds_from_constant(&fact) {
                    acc.fire(c);
                }
                if let Some(pp) = PrimePower::from_factorization(&fact) {
                    prime_power_criteria(&g, &pp, cfg, &mut acc)?;
                } else {
                    if let Some(c) = check_nonassociate_a1(&g, &fact)? {
                        acc.fire(c);
                    }
                    for c in check_multi_prime(&g, &fact, cfg)? {
                        acc.fire(c);
                    }
                }
            }
            RingTag::Polyq => analyze_polyq(&g, &a0, cfg, &mut acc)?,
        }
    }
    let tz = t as u64;
    let (lower, upper) = (acc.lower + tz, acc.upper + tz);
    let status = if upper == 0 {
        Status::Unit
    } else if lower == upper {
        if lower == 1 {
            Status::Irreducible
        } else {
            Status::ExactCount
        }
    } else if acc.classified {
        Status::Bounds
    } else {
        Status::Unknown
    };
    let verdict = Verdict {
        status,
        lower,
        upper,
        z_power: t,
        criteria: acc.criteria,
        window: cfg.window(),
        notes: acc.notes,
    };
    verdict.check_consistency().map_err(Error::Inconsistent)?;
    Ok(verdict)
}
