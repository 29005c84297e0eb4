//! `seriesfact`: irreducibility verdicts, coprime factorizations and Newton
//! polygons of formal power series from the command line.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use seriesfact::corpus::{self, CaseOutcome};
use seriesfact::criteria::linear_power_base;
use seriesfact::series::memo_cap;
use seriesfact::{
    analyze, factor_constant, first_mismatch, parse, parse_series, split_by_primes, verify_product, Config, Error,
    Expr, FactorReport, NewtonPolygon, RingElem, RingTag, Series, Valuation, ValuationMode,
};

const AFTER_HELP: &str = "\
EXPRESSIONS:
  expr   := term (('+' | '-') term)*
  term   := factor ('*' factor)*
  factor := '-' factor | atom ('^' NAT)?
  atom   := '(' expr ')' | 'inv' '(' expr ')' | CONST | 'z'
  CONST is an integer; over gauss also 'i' or 'bi' (so 4+3i is 4 plus 3i);
  over polyq also a bracketed polynomial in y such as [1+y] or [(1+y)^8].
  inv(g) is the power-series inverse of g and needs a unit constant term.

CONVENTIONS:
  Factors are listed by ascending prime of the constant term; the unit of the
  constant term is absorbed into the first factor.

EXIT CODES:
  0  success (any verdict, including unknown)
  1  verification mismatch, or a failing --seed-corpus case
  2  expression syntax error or non-invertible inv(...)
  3  unsupported ring, operation, prime or configuration
  4  factorization limit: the constant term is too large to factor

ENVIRONMENT:
  SERIESFACT_MAX_MEMO  cap on the number of memoized coefficients (default 65536)";

#[derive(Parser, Debug)]
#[command(
    name = "seriesfact",
    version,
    about = "Irreducibility criteria, factor-count bounds and coprime splitting of formal power series",
    after_help = AFTER_HELP,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide irreducibility or bound the number of irreducible factors.
    Analyze {
        /// The series, e.g. "(8+z^2)*inv(1-z)".
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Split into one factor per prime of the constant term (needs ω(a₀) ≥ 2).
    Factor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Newton polygon of the series read through a window of --order coefficients.
    Polygon {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check that the product of FACTORS equals F up to z^order.
    Verify {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Factors; none means the empty product 1. Pass factors starting
        /// with '-' after a '--' separator.
        factors: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct Opts {
    /// Coefficient ring.
    #[arg(long, global = true, value_enum, default_value_t = Ring::Int)]
    ring: Ring,

    /// Prime defining the valuation: required by `polygon` over int/gauss;
    /// a linear polynomial such as "y-1" over polyq.
    #[arg(long, global = true)]
    prime: Option<String>,

    /// Truncation order: coefficients 0..=N are reported and compared; the
    /// polygon window for `polygon`.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    order: u64,

    /// Search bounds J,M,D: valuation/gcd-Eisenstein search, staircase width,
    /// Dumas search [default: 256,64,512].
    #[arg(long, global = true, value_name = "J,M,D")]
    bounds: Option<String>,

    /// Coefficients probed for the first nonzero one [default: 1024].
    #[arg(long, global = true)]
    probe: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also render the Newton polygon as an SVG image (polygon only).
    #[arg(long, global = true, value_name = "FILE")]
    svg: Option<PathBuf>,

    /// Valuation over polyq.
    #[arg(long, global = true, value_enum, default_value_t = ValuationArg::Adic)]
    valuation: ValuationArg,

    /// Run the built-in section 4 example corpus and print a pass/fail table.
    #[arg(long, global = true)]
    seed_corpus: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Ring {
    Int,
    Gauss,
    Polyq,
}

impl From<Ring> for RingTag {
    fn from(r: Ring) -> Self {
        match r {
            Ring::Int => RingTag::Int,
            Ring::Gauss => RingTag::Gauss,
            Ring::Polyq => RingTag::Polyq,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ValuationArg {
    /// π-adic for --prime, or for π detected from a₀ = c·π^k (y-adic by default).
    #[value(alias = "y-adic")]
    Adic,
    /// −deg; experimental, never yields a verdict.
    #[value(alias = "degree-experimental")]
    Degree,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::NotInvertible(_) => 2,
            Error::FactorizationLimit(_) => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn unsupported(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match (&cli.command, cli.opts.seed_corpus) {
        (_, true) => run_corpus(&cli.opts),
        (Some(command), false) => run(command, &cli.opts),
        (None, false) => Err(unsupported("no command given; see --help")),
    };
    result.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        ExitCode::from(f.code)
    })
}

fn run(command: &Command, opts: &Opts) -> Outcome {
    let ring = RingTag::from(opts.ring);
    let order = usize::try_from(opts.order).unwrap_or(usize::MAX);
    if order >= memo_cap() {
        return Err(unsupported(format!(
            "order {order} must be below the memo cap {}",
            memo_cap()
        )));
    }
    match command {
        Command::Analyze { expr } => cmd_analyze(&parse_series(expr, ring)?, &config(opts)?, opts.format),
        Command::Factor { expr } => cmd_factor(&parse_series(expr, ring)?, &config(opts)?, order, opts.format),
        Command::Polygon { expr } => cmd_polygon(&parse_series(expr, ring)?, opts, order),
        Command::Verify { f, factors } => {
            let f = parse_series(f, ring)?;
            let factors = factors
                .iter()
                .map(|e| parse_series(e, ring))
                .collect::<seriesfact::Result<Vec<_>>>()?;
            cmd_verify(&f, &factors, order, opts.format)
        }
    }
}

/// `[--bounds J,M,D] [--probe P]` over the defaults.
fn config(opts: &Opts) -> Result<Config, Failure> {
    let mut cfg = Config::default();
    if let Some(bounds) = &opts.bounds {
        let parts: Vec<_> = bounds.split(',').map(|s| s.trim().parse::<usize>()).collect();
        match parts.as_slice() {
            [Ok(j), Ok(m), Ok(d)] => {
                cfg.valuation_search = *j;
                cfg.pattern_search = *m;
                cfg.dumas_search = *d;
            }
            _ => {
                return Err(unsupported(format!(
                    "--bounds expects J,M,D as three integers, got '{bounds}'"
                )))
            }
        }
    }
    if let Some(probe) = opts.probe {
        cfg.probe = probe;
    }
    cfg.valuation_mode = match opts.valuation {
        ValuationArg::Adic => ValuationMode::Adic,
        ValuationArg::Degree => ValuationMode::DegreeExperimental,
    };
    if opts.valuation == ValuationArg::Degree && opts.ring != Ring::Polyq {
        return Err(unsupported("--valuation degree applies to --ring polyq only"));
    }
    if let Some(p) = &opts.prime {
        if opts.ring != Ring::Polyq {
            return Err(unsupported(
                "--prime selects the valuation over polyq; over int and gauss, analyze and factor use every prime of a0",
            ));
        }
        cfg.prime = Some(parse_prime(p, RingTag::Polyq)?);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// A constant expression; bare polynomials in `y` are accepted over polyq.
fn parse_prime(text: &str, ring: RingTag) -> Result<RingElem, Failure> {
    let text = if ring == RingTag::Polyq && !text.contains('[') {
        format!("[{text}]")
    } else {
        text.to_string()
    };
    fn has_z(e: &Expr) -> bool {
        match e {
            Expr::Const(_) => false,
            Expr::Z => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => has_z(a) || has_z(b),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Inv(a) => has_z(a),
        }
    }
    let expr = parse(&text, ring)?;
    if has_z(&expr) {
        return Err(unsupported(format!("--prime must be a constant, got '{text}'")));
    }
    Ok(seriesfact::sparser::eval(&expr, ring)?.coeff(0))
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

fn cmd_analyze(f: &Series, cfg: &Config, format: Format) -> Outcome {
    let verdict = analyze(f, cfg)?;
    match format {
        Format::Json => print_json(&serde_json::to_value(&verdict).expect("verdicts serialize")),
        Format::Text => println!("{verdict}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_factor(f: &Series, cfg: &Config, order: usize, format: Format) -> Outcome {
    let (t, g) = f.strip_z(cfg.probe)?;
    let a0 = g.coeff(0);
    let refuse = |omega: usize, note: &str| {
        unsupported(format!(
            "refusing to split: the constant term {a0} has {omega} distinct prime factor(s); the coprime \
             splitting (Theorem A) needs a0 to be a product of two nonassociate elements, i.e. at least 2 \
             distinct primes{note}"
        ))
    };
    if a0.is_unit() {
        return Err(refuse(0, " (a unit constant term makes the series a unit)"));
    }
    let fact = factor_constant(&a0)?;
    match (fact.omega(), fact.big_omega()) {
        (1, 1) => return Err(refuse(1, " (a prime constant term makes the series irreducible)")),
        (1, _) => return Err(refuse(1, "")),
        _ => {}
    }
    let split = split_by_primes(&g, &fact)?;
    let mut product_factors = vec![Series::z(g.coeff(0).tag()); t];
    product_factors.extend(split.factors.iter().cloned());
    let verified = verify_product(&product_factors, f, order)?;
    let reports = split
        .factors
        .iter()
        .map(|s| FactorReport::of(s, order))
        .collect::<seriesfact::Result<Vec<_>>>()?;
    match format {
        Format::Json => {
            let primes: Vec<_> = fact.factors.iter().map(|(p, e)| json!([p, e])).collect();
            print_json(&json!({
                "order": order,
                "z_power": t,
                "constant_term": { "unit": fact.unit, "primes": primes },
                "factors": reports,
                "verified": verified,
            }));
        }
        Format::Text => {
            if t > 0 {
                println!("z-power: {t}");
            }
            for (i, r) in reports.iter().enumerate() {
                let coeffs: Vec<String> = r.coeffs.iter().map(ToString::to_string).collect();
                println!(
                    "factor {} (constant term {}): {}",
                    i + 1,
                    r.constant_term,
                    coeffs.join(", ")
                );
            }
            println!("verified to order {order}: {verified}");
        }
    }
    Ok(if verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_polygon(f: &Series, opts: &Opts, order: usize) -> Outcome {
    let ring = RingTag::from(opts.ring);
    let valuation = match (&opts.prime, ring) {
        (Some(p), _) => Valuation::adic(&parse_prime(p, ring)?)?,
        (None, RingTag::Polyq) => {
            if opts.valuation == ValuationArg::Degree {
                return Err(unsupported(
                    "the degree mode is not a valuation on Q[y]; pass --prime for a Newton polygon",
                ));
            }
            match linear_power_base(&f.coeff(0)) {
                Some(pi) => Valuation::adic(&RingElem::Poly(pi))?,
                None => Valuation::YAdic,
            }
        }
        (None, _) => return Err(unsupported(format!("polygon over {ring} requires --prime"))),
    };
    let polygon = NewtonPolygon::of_series(f, &valuation, order)?;
    if let Some(path) = &opts.svg {
        std::fs::write(path, render::svg(&polygon))
            .map_err(|e| unsupported(format!("cannot write {}: {e}", path.display())))?;
    }
    match opts.format {
        Format::Json => print_json(&serde_json::to_value(&polygon).expect("polygons serialize")),
        Format::Text => print!("{}", render::polygon_text(&polygon, &valuation)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(f: &Series, factors: &[Series], order: usize, format: Format) -> Outcome {
    let mismatch = first_mismatch(factors, f, order)?;
    let detail = match mismatch {
        None => None,
        Some(index) => {
            let tag = f.coeff(0).tag();
            let product = factors.iter().try_fold(Series::one(tag), |acc, g| acc.mul(g))?;
            Some((index, f.coeff(index), product.coeff(index)))
        }
    };
    match format {
        Format::Json => print_json(&json!({
            "verified": detail.is_none(),
            "order": order,
            "first_mismatch": detail.as_ref().map(|(index, expected, actual)| json!({
                "index": index,
                "expected": expected,
                "actual": actual,
            })),
        })),
        Format::Text => match &detail {
            None => println!("verified to order {order}: true"),
            Some((index, expected, actual)) => {
                println!("verified to order {order}: false");
                println!("first mismatch at z^{index}: f has {expected}, the product has {actual}");
            }
        },
    }
    Ok(if detail.is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Runs the corpus on all available cores; each case is independent.
fn run_corpus(opts: &Opts) -> Outcome {
    let cfg = config(opts)?;
    let cases = corpus::corpus();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(cases.len());
    let chunk = cases.len().div_ceil(workers);
    let outcomes: Vec<CaseOutcome> = thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(|c| c.run(&cfg)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    });
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    match opts.format {
        Format::Json => print_json(&json!({
            "cases": outcomes,
            "passed": outcomes.len() - failed,
            "failed": failed,
        })),
        Format::Text => print!("{}", render::corpus_table(&outcomes)),
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
