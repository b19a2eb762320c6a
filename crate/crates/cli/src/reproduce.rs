//! Bundled end-to-end recipes. Each prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use reclab_core::intersectivity::density_f64;
use reclab_core::*;

use crate::config::{parse_pairs, RunConfig};
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Recipe {
    #[value(name = "thmA")]
    ThmA,
    #[value(name = "thmB")]
    ThmB,
    Intersective,
}

impl Recipe {
    fn name(self) -> &'static str {
        match self {
            Recipe::ThmA => "thmA",
            Recipe::ThmB => "thmB",
            Recipe::Intersective => "intersective",
        }
    }

    fn bundled(self) -> &'static str {
        match self {
            Recipe::ThmA => include_str!("../recipes/thmA.conf"),
            Recipe::ThmB => include_str!("../recipes/thmB.conf"),
            Recipe::Intersective => include_str!("../recipes/intersective.conf"),
        }
    }
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    recipe: Recipe,
    /// Use this recipe file instead of the bundled one.
    #[arg(long, value_name = "PATH")]
    recipe_file: Option<PathBuf>,
}

/// Recipe keys beyond the shared run configuration.
struct Params {
    pairs: BTreeMap<String, String>,
    used: Vec<(String, String)>,
}

impl Params {
    fn get<T: FromStr + ToString>(&mut self, key: &str, default: T) -> Result<T> {
        match self.pairs.remove(key) {
            Some(v) => {
                let parsed = v.parse().map_err(|_| {
                    Error::Parse(format!("recipe key `{key}`: invalid value `{v}`"))
                })?;
                self.used.push((key.to_string(), v));
                Ok(parsed)
            }
            None => {
                self.used.push((key.to_string(), default.to_string()));
                Ok(default)
            }
        }
    }

    fn rational(&mut self, key: &str, default: Rational) -> Result<Rational> {
        let text = self.get(key, default.to_string())?;
        parse_rational(&text)
    }

    fn pair(&mut self, key: &str, default: &str) -> Result<(Rational, Rational)> {
        let text = self.get(key, default.to_string())?;
        let (lo, hi) = text
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("recipe key `{key}`: expected lo,hi")))?;
        Ok((parse_rational(lo)?, parse_rational(hi)?))
    }

    fn finish(&self) -> Result<()> {
        match self.pairs.keys().next() {
            Some(key) => Err(Error::Parse(format!("unknown recipe key `{key}`"))),
            None => Ok(()),
        }
    }
}

struct Report {
    lines: String,
    failed: Vec<&'static str>,
}

impl Report {
    fn check(&mut self, name: &'static str, ok: bool, detail: String) {
        let status = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(self.lines, "{status} {name}: {detail}");
        if !ok {
            self.failed.push(name);
        }
    }

    fn info(&mut self, name: &str, detail: String) {
        let _ = writeln!(self.lines, "INFO {name}: {detail}");
    }
}

fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn run(user: &RunConfig, args: &ReproduceArgs) -> Result<Outcome> {
    let text = match &args.recipe_file {
        Some(path) => std::fs::read_to_string(path)?,
        None => args.recipe.bundled().to_string(),
    };
    let mut pairs = parse_pairs(&text)?;
    let cfg = RunConfig::take_from(&mut pairs)?.overlay(user.clone());
    let mut params = Params { pairs, used: Vec::new() };
    let mut report = Report { lines: String::new(), failed: Vec::new() };
    match args.recipe {
        Recipe::ThmA => thm_a(&cfg, &mut params, &mut report)?,
        Recipe::ThmB => thm_b(&cfg, &mut params, &mut report)?,
        Recipe::Intersective => intersective(&cfg, &mut params, &mut report)?,
    }
    params.finish()?;

    let mut body = format!("# config: command=reproduce recipe={} {cfg}", args.recipe.name());
    for (k, v) in &params.used {
        let _ = write!(body, " {k}={}", v.replace(' ', ""));
    }
    body.push('\n');
    body.push_str(&report.lines);
    if report.failed.is_empty() {
        body.push_str("result: PASS\n");
    } else {
        let _ = writeln!(body, "result: FAIL ({})", report.failed.join(", "));
    }
    Ok(Outcome { body, failed: !report.failed.is_empty(), plot: None })
}

fn thm_a(cfg: &RunConfig, p: &mut Params, r: &mut Report) -> Result<()> {
    let k = cfg.k();
    let alpha = cfg.alpha();
    let n = cfg.nmax(1_000_000);
    let eps = cfg.epsilon.unwrap_or(Rational::new(1, 10));
    let samples: u64 = p.get("mc_samples", 10_000)?;
    let members: usize = p.get("mc_members", 100)?;
    let density_tol = p.rational("density_tol", Rational::new(1, 100))?;
    let beta: AlphaSpec = p.get("beta", AlphaSpec::sqrt3())?;
    let arc = p.pair("arc", "0,3/10")?;
    let average_n: u64 = p.get("average_n", 100_000)?;
    let min_average = p.rational("min_average", Rational::new(1, 100))?;

    let prec = cfg.precision_for(k, n)?;
    let set = gen_sk(k, &alpha, n, prec)?;
    let cert = nonrecurrence_certificate(k, &alpha, &set, eps, n, prec)?;
    r.check(
        "certificate",
        cert.all_certified() && set.uncertain_count == 0,
        format!(
            "certified={} total={} uncertain={} epsilon={eps} system_alpha={} min_distance={}",
            cert.certified_count(),
            cert.entries.len(),
            set.uncertain_count,
            cert.system_alpha,
            cert.min_distance().unwrap_or(f64::NAN)
        ),
    );

    let d = density(&set, n)?;
    let dev = (ratio_f64(d) - 0.5).abs();
    r.check(
        "density",
        dev <= ratio_f64(density_tol),
        format!("density(S_{k}, {n})={} deviation={dev} tolerance={density_tol}", ratio_f64(d)),
    );

    if samples > 0 && !set.is_empty() {
        let extra = 64 - (cert.solution.m as u64).leading_zeros();
        let sys_bits = cfg.precision_for(k, n.saturating_mul(2 * k as u64))?.bits() + extra;
        let sys = SkewSystem::from_spec(k, &cert.system_alpha, Precision::new(sys_bits)?)?;
        let ball = EpsilonBall::new(eps, &cert.solution)?;
        let picks = members.min(set.len()).max(1);
        let mut returns = 0;
        for i in 0..picks {
            let m = set.elements()[i * set.len() / picks];
            returns += monte_carlo_return_check(&sys, &ball, m, samples, cfg.seed() ^ m)?;
        }
        r.check(
            "monte-carlo",
            returns == 0,
            format!("returns={returns} members={picks} samples={samples} radius={}", ball.radius()),
        );
    }

    let avg_prec = cfg.precision_for(k, average_n)?;
    let avg = recurrence_average(k, &alpha, &beta, arc, average_n, avg_prec)?;
    r.check(
        "recurrence-average",
        avg >= ratio_f64(min_average),
        format!("average={avg} N={average_n} beta={beta} threshold={min_average}"),
    );
    Ok(())
}

fn thm_b(cfg: &RunConfig, p: &mut Params, r: &mut Report) -> Result<()> {
    let k = cfg.k();
    let jmax: u32 = p.get("jmax", 20)?;
    let gap_from: u32 = p.get("gap_from", 10)?;
    let min_gap = p.rational("min_gap", Rational::new(1, 10))?;
    let density_from: u32 = p.get("density_from", 10)?;
    let density_tol = p.rational("density_tol", Rational::new(2, 100))?;
    let max_residual = p.rational("max_residual", Rational::new(1, 1_000_000_000_000))?;
    if jmax >= 62 {
        return Err(Error::InvalidParameter(format!("jmax={jmax} too large")));
    }

    let prec = cfg.precision_for(k, 1u64 << (jmax + 1))?;
    let report = block_sign_report(k, &cfg.alpha(), jmax, prec)?;
    let violations: Vec<u32> = report.violations().iter().map(|b| b.j).collect();
    r.check(
        "block-bounds",
        violations.is_empty() && report.uncertain_count == 0,
        format!(
            "blocks={} empty={:?} violations={violations:?} uncertain={}",
            report.blocks.len(),
            report.empty_blocks(),
            report.uncertain_count
        ),
    );

    let worst = report
        .blocks
        .iter()
        .filter(|b| b.j >= density_from && b.len > 0)
        .map(|b| (b.len as f64 / (b.hi - b.lo + 1) as f64 - 0.1).abs())
        .fold(0.0, f64::max);
    r.check(
        "block-density",
        worst <= ratio_f64(density_tol),
        format!("max |density - 1/10| over j >= {density_from} is {worst}"),
    );

    let gap = report.min_gap_from(gap_from);
    r.check(
        "non-cauchy",
        gap.is_some_and(|g| g >= ratio_f64(min_gap)),
        format!(
            "min gap between block-aligned A_N for j >= {gap_from} is {}",
            gap.unwrap_or(f64::NAN)
        ),
    );

    let residual = report.max_identity_residual();
    r.check(
        "window-identity",
        residual <= ratio_f64(max_residual),
        format!("max |B_N - (2 A_2N - A_N)| = {residual}"),
    );
    Ok(())
}

fn naive_has_ap(set: &DenseSet, diffs: &[u64], k: u64) -> bool {
    let n = set.upper();
    (1..=n).any(|a| {
        diffs
            .iter()
            .take_while(|&&d| a + k * d <= n)
            .any(|&d| (0..=k).all(|j| set.contains(a + j * d)))
    })
}

fn intersective(cfg: &RunConfig, p: &mut Params, r: &mut Report) -> Result<()> {
    let k = cfg.k();
    let alpha = cfg.alpha();
    let n = cfg.nmax(20_000);
    let naive_n: u64 = p.get("naive_n", 2000)?;
    let controls: u64 = p.get("controls", 20)?;
    let control_density = p.rational("control_density", Rational::new(1, 2))?;
    let min_controls: u64 = p.get("min_controls", 19)?;
    let delta = match cfg.delta {
        Some(d) => d,
        None if k + 3 < 64 => Rational::new(1, 1u64 << (k + 3)),
        None => return Err(Error::OrderOutOfRange(k)),
    };

    let prec = cfg.precision_for(k, n)?;
    let diffs = gen_sk(k, &alpha, n, prec)?;
    let witness = build_witness(k, &alpha, delta, n, prec)?;
    let found = find_ap(&witness, diffs.elements(), k);
    r.check(
        "witness",
        found.is_none(),
        format!(
            "N={n} delta={delta} |witness|={} density={} result={}",
            witness.count(),
            density_f64(&witness),
            found.map_or("NOTFOUND".to_string(), |w| format!("FOUND {} {}", w.start, w.diff))
        ),
    );

    let small = naive_n.min(n);
    let w_small = build_witness(k, &alpha, delta, small, cfg.precision_for(k, small)?)?;
    let d_small = diffs.prefix_up_to(small);
    let naive = naive_has_ap(&w_small, d_small, k as u64);
    let fast = find_ap(&w_small, d_small, k).is_some();
    r.check(
        "naive-cross-check",
        naive == fast && !naive,
        format!("N={small} naive={} bitmap={}", found_word(naive), found_word(fast)),
    );

    if k >= 2 {
        let shorter = find_ap(&witness, diffs.elements(), k - 1);
        r.info(
            "shorter-progressions",
            format!(
                "{k}-term progressions with difference in S_{k}: {}",
                shorter
                    .map_or("none".to_string(), |w| format!("first at n={} d={}", w.start, w.diff))
            ),
        );
    }

    let mut hits = 0;
    for i in 0..controls {
        let set = DenseSet::random(n, ratio_f64(control_density), cfg.seed().wrapping_add(i));
        if intersectivity_scan(&set, diffs.elements(), k).progressions > 0 {
            hits += 1;
        }
    }
    r.check(
        "positive-control",
        hits >= min_controls,
        format!("{hits}/{controls} random sets of density {control_density} contain a progression"),
    );
    Ok(())
}

fn found_word(found: bool) -> &'static str {
    if found {
        "FOUND"
    } else {
        "NOTFOUND"
    }
}
