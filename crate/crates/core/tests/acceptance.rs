//! Acceptance suite: one PASS/FAIL line per acceptance criterion of the
//! specification. All comparisons are exact. Exits nonzero if any criterion
//! fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seriesfact::corpus;
use seriesfact::criteria::{check_dumas, check_gcd_eisenstein, check_pattern, DumasOutcome, PrimePower};
use seriesfact::newton::lower_hull;
use seriesfact::{
    analyze, factor_constant, parse_series, split_by_primes, verify_product, Config, NPPoint, NewtonPolygon, RingElem,
    RingTag, Series, Status, Valuation, Verdict,
};

struct Outcome {
    pass: bool,
    detail: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new(failures: Vec<String>, detail: String) -> Self {
        Outcome {
            pass: failures.is_empty(),
            detail,
            failures,
        }
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5e71e5 + stream)
}

fn int_series(text: &str) -> Series {
    parse_series(text, RingTag::Int).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn describe(v: &Verdict) -> String {
    corpus::summarize(v)
}

/// 1. Constructive split of 1,000 random series with `ω(a_0) ≥ 2`.
fn constructive_split() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < 1000 {
        let a0 = rng.gen_range(2..=1_000_000i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let fact = factor_constant(&RingElem::int(a0)).unwrap();
        if fact.omega() < 2 {
            continue;
        }
        let degree = rng.gen_range(0..=8);
        let mut coeffs = vec![a0];
        coeffs.extend((0..degree).map(|_| rng.gen_range(-1000..=1000i64)));
        let mut f = Series::from_ints(&coeffs);
        let tail = rng.gen_bool(0.5);
        if tail {
            f = f.mul(&Series::geometric(RingTag::Int)).unwrap();
        }
        match split_by_primes(&f, &fact) {
            Ok(s) if s.factors.len() == fact.omega() && verify_product(&s.factors, &f, 64).unwrap() => {}
            other => failures.push(format!("{coeffs:?} tail={tail}: {:?}", other.map(|s| s.factors.len()))),
        }
        done += 1;
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?} (limit 60 s)"));
    }
    Outcome::new(
        failures,
        format!("1000 splits verified to order 64 in {:.1} s", elapsed.as_secs_f64()),
    )
}

/// 2. The paper's section 4 examples (shared with `seriesfact --seed-corpus`).
fn example_corpus() -> Outcome {
    let cfg = Config::default();
    let cases = corpus::corpus();
    let failures: Vec<String> = cases
        .iter()
        .map(|c| c.run(&cfg))
        .filter(|o| !o.pass)
        .map(|o| format!("{} {}: {} failed {:?}", o.example, o.expr, o.verdict, o.failed))
        .collect();
    let detail = format!(
        "{}/{} corpus cases reproduce the paper's verdicts",
        cases.len() - failures.len(),
        cases.len()
    );
    Outcome::new(failures, detail)
}

/// 3. The documented failure of Newton-polygon additivity at `t = S`.
fn additivity_failure_regression() -> Outcome {
    let mut failures = Vec::new();
    let v = Valuation::adic(&RingElem::int(2)).unwrap();
    let g = int_series("2-2*z");
    let h = int_series("2 + 2*(1-2)*z*inv(1-z)");
    let gh = g.mul(&h).unwrap();
    let zero = BigRational::from_integer(0.into());
    if !verify_product(&[g.clone(), h.clone()], &int_series("4-8*z"), 256).unwrap() {
        failures.push("g·h != 4 - 8z".into());
    }
    for n in [8, 32, 128] {
        let gs = NewtonPolygon::of_series(&g, &v, n).unwrap().f_star(&zero);
        let hs = NewtonPolygon::of_series(&h, &v, n).unwrap().f_star(&zero);
        let ghs = NewtonPolygon::of_series(&gh, &v, n).unwrap().f_star(&zero);
        if gs.length != 1 || gs.censored {
            failures.push(format!("N={n}: g*(0) = {gs:?}"));
        }
        if !hs.censored {
            failures.push(format!("N={n}: h*(0) = {hs:?} not censored"));
        }
        if ghs.length != 0 {
            failures.push(format!("N={n}: (gh)*(0) = {ghs:?}"));
        }
    }
    Outcome::new(
        failures,
        "g*(0)=1, h*(0) censored, (gh)*(0)=0 at N in {8, 32, 128}".into(),
    )
}

fn random_valued_series(rng: &mut ChaCha8Rng, p: i64) -> Series {
    let unit = |rng: &mut ChaCha8Rng| loop {
        let c = rng.gen_range(1..=12i64);
        if c % p != 0 {
            return if rng.gen_bool(0.5) { c } else { -c };
        }
    };
    let degree = rng.gen_range(1..=8);
    let mut coeffs = vec![p.pow(rng.gen_range(1..=4)) * unit(rng)];
    for _ in 0..degree {
        coeffs.push(if rng.gen_bool(0.2) {
            0
        } else {
            p.pow(rng.gen_range(0..=4)) * unit(rng)
        });
    }
    let f = Series::from_ints(&coeffs);
    if rng.gen_bool(0.3) {
        f.mul(&Series::geometric(RingTag::Int)).unwrap()
    } else {
        f
    }
}

/// 4. `(fg)*(t) = f*(t) + g*(t)` for negative slopes, window 64.
fn additivity_property() -> Outcome {
    let mut rng = rng(4);
    let mut failures = Vec::new();
    let (mut pairs, mut slopes_checked) = (0, 0);
    while pairs < 100 {
        let p = [2i64, 3, 5][rng.gen_range(0..3)];
        let v = Valuation::adic(&RingElem::int(p)).unwrap();
        let f = random_valued_series(&mut rng, p);
        let g = random_valued_series(&mut rng, p);
        let fg = f.mul(&g).unwrap();
        let polys: Vec<NewtonPolygon> = [&f, &g, &fg]
            .iter()
            .map(|s| NewtonPolygon::of_series(s, &v, 64).unwrap())
            .collect();
        let slopes: BTreeSet<BigRational> = polys
            .iter()
            .flat_map(|np| np.negative_edges().map(|e| e.slope.0.clone()).collect::<Vec<_>>())
            .collect();
        let uncensored = slopes.iter().all(|t| polys.iter().all(|np| !np.f_star(t).censored));
        if slopes.is_empty() || !uncensored {
            continue;
        }
        pairs += 1;
        for t in &slopes {
            slopes_checked += 1;
            let [a, b, c] = [0, 1, 2].map(|i| polys[i].f_star(t).length);
            if a + b != c {
                failures.push(format!("p={p} t={t}: f*={a} g*={b} (fg)*={c}"));
            }
        }
    }
    Outcome::new(
        failures,
        format!("100 pairs, {slopes_checked} negative slopes additive"),
    )
}

/// Independent O(n³) lower-hull oracle: endpoints of maximal segments with
/// every point on or above the supporting line, cut at the rightmost point of
/// least valuation.
fn brute_force_hull(points: &[NPPoint]) -> Vec<NPPoint> {
    let side = |a: NPPoint, b: NPPoint, c: NPPoint| {
        (b.i as i128 - a.i as i128) * (c.v as i128 - a.v as i128)
            - (b.v as i128 - a.v as i128) * (c.i as i128 - a.i as i128)
    };
    let mut vs = BTreeSet::new();
    if points.len() == 1 {
        vs.insert((points[0].i, points[0].v));
    }
    for (x, &a) in points.iter().enumerate() {
        for &b in &points[x + 1..] {
            let supporting = points.iter().all(|&c| side(a, b, c) >= 0);
            let maximal = points.iter().all(|&c| side(a, b, c) != 0 || (a.i <= c.i && c.i <= b.i));
            if supporting && maximal {
                vs.insert((a.i, a.v));
                vs.insert((b.i, b.v));
            }
        }
    }
    let min_v = vs.iter().map(|&(_, v)| v).min().unwrap();
    let last_i = vs.iter().filter(|&&(_, v)| v == min_v).map(|&(i, _)| i).max().unwrap();
    vs.into_iter()
        .filter(|&(i, _)| i <= last_i)
        .map(|(i, v)| NPPoint::new(i, v))
        .collect()
}

/// 5. Monotone chain versus the brute-force oracle on 500 point sets.
fn hull_oracle() -> Outcome {
    let mut rng = rng(5);
    let mut failures = Vec::new();
    for _ in 0..500 {
        let size = rng.gen_range(1..=12);
        let mut idx = BTreeSet::new();
        while idx.len() < size {
            idx.insert(rng.gen_range(0..30u64));
        }
        let pts: Vec<NPPoint> = idx
            .into_iter()
            .map(|i| NPPoint::new(i, rng.gen_range(0..=20)))
            .collect();
        let (fast, slow) = (lower_hull(&pts), brute_force_hull(&pts));
        if fast != slow {
            failures.push(format!("{pts:?}: chain {fast:?} oracle {slow:?}"));
        }
    }
    Outcome::new(failures, "500 random point sets agree".into())
}

fn small_config() -> Config {
    Config {
        valuation_search: 32,
        pattern_search: 8,
        dumas_search: 64,
        probe: 64,
        ..Config::default()
    }
}

/// Random inputs biased towards the shapes the criteria recognize.
fn consistency_input(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let p = [2i64, 3, 5, 7][rng.gen_range(0..4)];
    let unit = |rng: &mut ChaCha8Rng| loop {
        let c = rng.gen_range(-9..=9i64);
        if c % p != 0 {
            return c;
        }
    };
    let k = rng.gen_range(1..=4u32);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut a0 = sign * p.pow(k);
    let mut coeffs: Vec<i64> = Vec::new();
    match rng.gen_range(0..5) {
        0 => {
            // staircase of width m
            let m = rng.gen_range(1..=3u32);
            for t in 1..=k * m {
                let l = k - (t - 1) / m;
                coeffs.push(p.pow(l) * unit(rng));
            }
            coeffs.push(unit(rng));
        }
        1 => {
            // Eisenstein-type prefix
            let j = rng.gen_range(1..=6);
            for _ in 1..j {
                coeffs.push(if rng.gen_bool(0.3) {
                    0
                } else {
                    p.pow(k + rng.gen_range(0..=1)) * unit(rng)
                });
            }
            coeffs.push(unit(rng));
        }
        2 => {
            // several primes
            let q = [2i64, 3, 5, 7, 11].into_iter().find(|&q| q != p).unwrap();
            a0 *= q.pow(rng.gen_range(1..=3));
            for _ in 0..rng.gen_range(1..=6) {
                coeffs.push((p * q).pow(rng.gen_range(0..=2)) * rng.gen_range(-6..=6));
            }
        }
        3 => {
            // general valuation profile
            for _ in 0..rng.gen_range(1..=8) {
                coeffs.push(if rng.gen_bool(0.2) {
                    0
                } else {
                    p.pow(rng.gen_range(0..=k + 1)) * unit(rng)
                });
            }
        }
        _ => {
            a0 = rng.gen_range(-500..=500);
            for _ in 0..rng.gen_range(0..=8) {
                coeffs.push(rng.gen_range(-50..=50));
            }
        }
    }
    if !coeffs.is_empty() && rng.gen_bool(0.15) {
        // perturb one coefficient
        let at = rng.gen_range(0..coeffs.len());
        coeffs[at] = if rng.gen_bool(0.5) {
            coeffs[at] * p
        } else {
            rng.gen_range(-20..=20)
        };
    }
    let mut out = vec![0; if rng.gen_bool(0.1) { rng.gen_range(1..=3) } else { 0 }];
    out.push(a0);
    out.extend(coeffs);
    out
}

/// 6. Consistency over 10,000 random inputs.
fn consistency_suite() -> Outcome {
    let mut rng = rng(6);
    let cfg = small_config();
    let mut failures = Vec::new();
    let (mut staircase_hits, mut eisenstein_hits, mut dumas_hits, mut splits, mut skipped) = (0, 0, 0, 0, 0);
    for _ in 0..10_000 {
        let coeffs = consistency_input(&mut rng);
        if coeffs.iter().all(|&c| c == 0) {
            skipped += 1;
            continue;
        }
        let mut f = Series::from_ints(&coeffs);
        if rng.gen_bool(0.3) {
            let tail = Series::from_ints(&[0; 12]).add(&int_series("z^12*inv(1-z)")).unwrap();
            f = f.add(&tail).unwrap();
        }
        let v = match analyze(&f, &cfg) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{coeffs:?}: {e}"));
                continue;
            }
        };
        if let Err(e) = v.check_consistency() {
            failures.push(format!("{coeffs:?}: {e}"));
        }
        let (_, g) = f.strip_z(cfg.probe).unwrap();
        let a0 = g.coeff(0);
        if a0.is_unit() {
            continue;
        }
        let fact = factor_constant(&a0).unwrap();
        let r = fact.omega() as u64;
        let t = v.z_power as u64;
        if r >= 2 {
            let s = split_by_primes(&g, &fact).unwrap();
            if verify_product(&s.factors, &g, 16).unwrap() && s.factors.len() as u64 == r {
                splits += 1;
                if v.status == Status::Irreducible || v.lower < r + t {
                    failures.push(format!("{coeffs:?}: split into {r} but {}", describe(&v)));
                }
            } else {
                failures.push(format!("{coeffs:?}: split failed"));
            }
            for c in &v.criteria {
                if let Some(count) = c.exact_count() {
                    if count != r {
                        failures.push(format!("{coeffs:?}: {} says {count}, omega = {r}", c.name()));
                    }
                }
            }
            let multi_dumas = v.fired("multi_prime_dumas");
            if (v.fired("multi_prime_eisenstein") || v.fired("multi_prime_staircase")) && !multi_dumas {
                failures.push(format!("{coeffs:?}: preset without multi-prime Dumas"));
            }
        } else {
            let pp = PrimePower::from_factorization(&fact).unwrap();
            let staircase = check_pattern(&g, &pp, cfg.pattern_search).unwrap().is_some();
            let eisenstein = check_gcd_eisenstein(&g, &pp, cfg.valuation_search).unwrap().is_some();
            let dumas = matches!(
                check_dumas(&g, &pp, cfg.dumas_search).unwrap(),
                DumasOutcome::Fired { .. }
            );
            staircase_hits += staircase as usize;
            eisenstein_hits += eisenstein as usize;
            dumas_hits += dumas as usize;
            if (staircase || eisenstein) && !dumas {
                failures.push(format!(
                    "{coeffs:?}: staircase={staircase} eisenstein={eisenstein} without Dumas"
                ));
            }
            if pp.k == 1 && v.status != Status::Irreducible && t == 0 {
                failures.push(format!("{coeffs:?}: prime constant term but {}", describe(&v)));
            }
        }
    }
    Outcome::new(
        failures,
        format!(
            "10000 inputs ({skipped} zero), {splits} verified splits, staircase {staircase_hits} / \
             gcd-Eisenstein {eisenstein_hits} / Dumas {dumas_hits} hits, no contradictions"
        ),
    )
}

/// 7. Base cases and the adversarial undecidable set.
fn base_cases() -> Outcome {
    let mut rng = rng(7);
    let cfg = Config::default();
    let mut failures = Vec::new();
    let gauss_primes = [
        (1, 1),
        (3, 0),
        (2, 1),
        (1, 2),
        (7, 0),
        (3, 2),
        (5, 2),
        (1, 4),
        (19, 0),
        (6, 5),
    ];
    for case in 0..300 {
        let gauss = case % 3 == 0;
        let f = if gauss {
            let (a, b) = gauss_primes[rng.gen_range(0..gauss_primes.len())];
            let unit = ["1", "-1", "i", "-i"][rng.gen_range(0..4)];
            let text = format!(
                "({a}+{b}i)*{unit} + ({}+{}i)*z + {}*z^2*inv(1-z)",
                rng.gen_range(-20..=20),
                rng.gen_range(-20..=20),
                rng.gen_range(-20..=20)
            );
            parse_series(&text, RingTag::Gauss).unwrap()
        } else {
            let p = loop {
                let c = rng.gen_range(2..1_000_000i64);
                if factor_constant(&RingElem::int(c)).unwrap().big_omega() == 1 {
                    break c;
                }
            };
            let mut coeffs = vec![if rng.gen_bool(0.5) { p } else { -p }];
            coeffs.extend((0..rng.gen_range(0..=6)).map(|_| rng.gen_range(-1000..=1000i64)));
            Series::from_ints(&coeffs)
        };
        let v = analyze(&f, &cfg).unwrap();
        if v.status != Status::Irreducible {
            failures.push(format!("prime constant {}: {}", f.coeff(0), describe(&v)));
        }
    }
    let mut squarefree = 0;
    while squarefree < 300 {
        let a0 = rng.gen_range(6..=1_000_000i64);
        let fact = factor_constant(&RingElem::int(a0)).unwrap();
        if fact.omega() < 2 || !fact.is_squarefree() {
            continue;
        }
        squarefree += 1;
        let mut coeffs = vec![a0];
        coeffs.extend((0..rng.gen_range(0..=6)).map(|_| rng.gen_range(-1000..=1000i64)));
        let f = Series::from_ints(&coeffs);
        let v = analyze(&f, &cfg).unwrap();
        let s = split_by_primes(&f, &fact).unwrap();
        let verified = s.factors.len() == fact.omega() && verify_product(&s.factors, &f, 32).unwrap();
        if !(v.status == Status::ExactCount && v.lower == fact.omega() as u64 && verified) {
            failures.push(format!("square-free {coeffs:?}: {} verified={verified}", describe(&v)));
        }
    }
    // true factor counts known by hand; the verdict must stay undecided
    // (Bounds, i.e. "unknown with bounds", or Unknown) and contain them
    let adversarial: [(&str, RingTag, u64); 9] = [
        ("(2+z)^2", RingTag::Int, 2),
        ("4+2*z+z^2", RingTag::Int, 1),
        ("(3-z)^3", RingTag::Int, 3),
        ("9+3*z", RingTag::Int, 2),
        ("(2+z)*(2+3*z)", RingTag::Int, 2),
        ("(2+z)^2*inv(1-z)", RingTag::Int, 2),
        ("(2+z)^4", RingTag::Int, 4),
        ("25+5*z", RingTag::Int, 2),
        ("(1+i+z)^2", RingTag::Gauss, 2),
    ];
    for (text, ring, truth) in adversarial {
        let v = analyze(&parse_series(text, ring).unwrap(), &cfg).unwrap();
        if !(matches!(v.status, Status::Bounds | Status::Unknown) && v.lower <= truth && truth <= v.upper) {
            failures.push(format!("adversarial {text} (true count {truth}): {}", describe(&v)));
        }
    }
    Outcome::new(
        failures,
        "300 prime constants irreducible, 300 square-free constants exact and split, 9 adversarial inputs open".into(),
    )
}

/// A criterion's description and runner.
type Named = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Named; 7] = [
        ("constructive coprime split of 1000 random series", constructive_split),
        ("section 4 example corpus", example_corpus),
        (
            "Newton polygon additivity failure at t = S",
            additivity_failure_regression,
        ),
        ("Newton polygon additivity below S", additivity_property),
        ("monotone chain hull vs brute-force oracle", hull_oracle),
        ("criteria consistency on 10000 random inputs", consistency_suite),
        ("prime, square-free and adversarial base cases", base_cases),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "acceptance criterion {}: {verdict} — {name}: {} [{:.1} s]",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        for f in outcome.failures.iter().take(20) {
            println!("    failing case: {f}");
        }
        if outcome.failures.len() > 20 {
            println!("    … {} more", outcome.failures.len() - 20);
        }
        failed += !outcome.pass as usize;
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
