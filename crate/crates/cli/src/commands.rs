//! One function per subcommand. Each returns its full output as a string so
//! that identical inputs give byte-identical results.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use reclab_core::averages::Elements;
use reclab_core::intersectivity::{density_f64, witness_threshold_ok};
use reclab_core::*;

use crate::config::{Format, RunConfig};
use crate::output::{PlotSpec, Table};
use crate::Outcome;

/// Bits added above policy when 30 decimal digits are printed.
const DECIMAL_BITS: u32 = 40;

fn config_line(name: &str, cfg: &RunConfig, extra: &[(&str, String)]) -> String {
    let mut s = format!("command={name} {cfg}");
    for (k, v) in extra {
        let _ = write!(s, " {k}={v}");
    }
    s
}

/// Policy precision widened so that printed 30-digit decimals are exact.
fn decimal_precision(cfg: &RunConfig, k: u32, n_max: u64) -> Result<Precision> {
    let base = cfg.precision_for(k, n_max)?;
    let wide = Precision::policy(k, n_max)?.bits() + DECIMAL_BITS;
    Precision::new(base.bits().max(wide))
}

/// `1, ..., len` on a log grid with `per_decade` points per decade, always
/// ending at `len`.
pub fn checkpoints(len: u64, per_decade: u32) -> Vec<u64> {
    if len == 0 {
        return Vec::new();
    }
    let decades = (len as f64).log10().ceil() as u32;
    let mut out: Vec<u64> = log_grid(0, decades, per_decade.max(1))
        .into_iter()
        .filter(|&n| n >= 1 && n < len)
        .collect();
    out.push(len);
    out.dedup();
    out
}

fn complex_row(id: usize, n: u64, a: &ComplexAvg) -> Vec<String> {
    vec![id.to_string(), n.to_string(), a.re.to_string(), a.im.to_string(), a.modulus().to_string()]
}

fn series_outcome(table: Table, cfg: &RunConfig, config: &str, plot: PlotSpec) -> Outcome {
    let format = cfg.format();
    Outcome { body: table.render(format, config), failed: false, plot: Some((plot, table, format)) }
}

fn parse_pair(text: &str) -> Result<(Rational, Rational)> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected `lo,hi`, got `{text}`")))?;
    Ok((parse_rational(lo)?, parse_rational(hi)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Sk,
    Skprime,
}

/// `j_max` with `2^(j_max + 1) <= n`.
fn jmax_for(n: u64) -> u32 {
    (63 - n.max(1).leading_zeros()).saturating_sub(1)
}

fn generate(
    cfg: &RunConfig,
    kind: KindArg,
    n: u64,
    jmax: Option<u32>,
    prec: Precision,
) -> Result<SetStream> {
    match kind {
        KindArg::Sk => gen_sk(cfg.k(), &cfg.alpha(), n, prec),
        KindArg::Skprime => {
            gen_skprime(cfg.k(), &cfg.alpha(), jmax.unwrap_or_else(|| jmax_for(n)), prec)
        }
    }
}

fn set_bound(kind: KindArg, n: u64, jmax: Option<u32>) -> u64 {
    match (kind, jmax) {
        (KindArg::Skprime, Some(j)) => 1u64 << (j + 1).min(62),
        _ => n,
    }
}

#[derive(Debug, Args)]
pub struct SolveLemmaArgs {
    #[arg(long, value_enum, default_value = "canonical")]
    method: LemmaMethod,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LemmaMethod {
    Canonical,
    Elimination,
}

pub fn solve_lemma(cfg: &RunConfig, args: &SolveLemmaArgs) -> Result<Outcome> {
    let k = cfg.k();
    let sol = match args.method {
        LemmaMethod::Canonical => solve_canonical(k)?,
        LemmaMethod::Elimination => solve_by_elimination(k)?,
    };
    let l: Vec<String> = sol.l.iter().map(|x| x.to_string()).collect();
    let body = match cfg.format() {
        Format::Text => format!("l: {}\nm: {}\nM: {}\n", l.join(" "), sol.m, sol.total),
        Format::Csv => {
            let mut t = Table::new(&["j", "l"]);
            for (j, x) in l.iter().enumerate() {
                t.push(vec![(j + 1).to_string(), x.clone()]);
            }
            let mut body = t.render(Format::Csv, &config_line("solve-lemma", cfg, &[]));
            let _ = writeln!(body, "# m={} M={}", sol.m, sol.total);
            body
        }
    };
    Ok(Outcome::ok(body))
}

#[derive(Debug, Args)]
pub struct GenSetArgs {
    #[arg(long, value_enum, default_value = "sk")]
    kind: KindArg,
    /// Last dyadic block for `skprime` (default: largest with 2^(j+1) <= nmax).
    #[arg(long)]
    jmax: Option<u32>,
    /// Emit a^p for each member a.
    #[arg(long, value_name = "P")]
    power: Option<u32>,
    /// Also write a reloadable checkpoint of the set.
    #[arg(long, value_name = "PATH")]
    save: Option<PathBuf>,
}

pub fn gen_set(cfg: &RunConfig, args: &GenSetArgs) -> Result<Outcome> {
    let k = cfg.k();
    let n = cfg.nmax(100);
    let bound = set_bound(args.kind, n, args.jmax);
    let prec = match cfg.format() {
        Format::Text => cfg.precision_for(k, bound)?,
        Format::Csv => decimal_precision(cfg, k, bound)?,
    };
    let set = generate(cfg, args.kind, n, args.jmax, prec)?;
    if let Some(path) = &args.save {
        set.save(path)?;
    }
    eprintln!("reclab: {} members, {} uncertain", set.len(), set.uncertain_count);
    let out = match args.power {
        Some(p) => power_set(&set, p)?,
        None => set.clone(),
    };
    let body = match cfg.format() {
        Format::Text => {
            let mut s = String::with_capacity(out.len() * 8);
            for x in out.iter() {
                let _ = writeln!(s, "{x}");
            }
            s
        }
        Format::Csv => {
            let a = cfg.alpha().realize(prec);
            let columns: &[&'static str] =
                if args.power.is_some() { &["n", "a", "frac"] } else { &["n", "frac"] };
            let mut t = Table::new(columns);
            for (x, base) in out.iter().zip(set.iter()) {
                let frac = frac_npow(base, k, &a)?.to_decimal(30);
                let mut row = vec![x.to_string()];
                if args.power.is_some() {
                    row.push(base.to_string());
                }
                row.push(frac);
                t.push(row);
            }
            let extra = [
                ("kind", format!("{:?}", args.kind).to_lowercase()),
                ("bits", prec.bits().to_string()),
                ("power", args.power.map_or("-".into(), |p| p.to_string())),
            ];
            t.render(Format::Csv, &config_line("gen-set", cfg, &extra))
        }
    };
    Ok(Outcome::ok(body))
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Starting point `t1,...,tk` (decimals or fractions); default the origin.
    #[arg(long, value_name = "T1,...,TK")]
    point: Option<String>,
    /// Number of applications of the map.
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "closed")]
    method: OrbitMethod,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrbitMethod {
    Closed,
    Iterate,
}

pub fn simulate(cfg: &RunConfig, args: &SimulateArgs) -> Result<Outcome> {
    let k = cfg.k();
    let prec = decimal_precision(cfg, k, args.n.max(2))?;
    let sys = SkewSystem::from_spec(k, &cfg.alpha(), prec)?;
    let p = match &args.point {
        Some(text) => TorusPoint::parse(text, prec)?,
        None => TorusPoint::origin(k, prec),
    };
    let q = match args.method {
        OrbitMethod::Closed => sys.orbit(&p, args.n)?,
        OrbitMethod::Iterate => sys.iterate(&p, args.n)?,
    };
    let body = match cfg.format() {
        Format::Text => q.coords().iter().map(|c| c.to_decimal(30) + "\n").collect(),
        Format::Csv => {
            let mut t = Table::new(&["i", "value", "err"]);
            for (i, c) in q.coords().iter().enumerate() {
                t.push(vec![(i + 1).to_string(), c.to_decimal(30), c.err_f64().to_string()]);
            }
            let extra = [
                ("n", args.n.to_string()),
                ("point", args.point.clone().unwrap_or_else(|| "origin".into())),
                ("bits", prec.bits().to_string()),
            ];
            t.render(Format::Csv, &config_line("simulate", cfg, &extra))
        }
    };
    Ok(Outcome::ok(body))
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Certify the members of this set file instead of generating S_k.
    #[arg(long, value_name = "PATH")]
    set_file: Option<PathBuf>,
    /// Print only the summary.
    #[arg(long)]
    summary_only: bool,
    /// Monte Carlo samples per member (0 disables the check).
    #[arg(long, default_value_t = 0)]
    mc_samples: u64,
    /// Members checked by Monte Carlo, spread evenly through the set.
    #[arg(long, default_value_t = 100)]
    mc_members: usize,
}

pub fn certify(cfg: &RunConfig, args: &CertifyArgs) -> Result<Outcome> {
    let k = cfg.k();
    let alpha = cfg.alpha();
    let eps = cfg.epsilon.unwrap_or(Rational::new(1, 10));
    let (set, n) = match &args.set_file {
        Some(path) => {
            let set = SetStream::load(path)?;
            let n = cfg.nmax.unwrap_or(set.bound);
            (set, n)
        }
        None => {
            let n = cfg.nmax(10_000);
            (gen_sk(k, &alpha, n, cfg.precision_for(k, n)?)?, n)
        }
    };
    let prec = cfg.precision_for(k, n.max(set.bound))?;
    let report = nonrecurrence_certificate(k, &alpha, &set, eps, n, prec)?;

    let format = cfg.format();
    let mut body = String::new();
    let extra = [("epsilon", eps.to_string()), ("mc_samples", args.mc_samples.to_string())];
    if format == Format::Csv {
        let _ = writeln!(body, "# config: {}", config_line("certify", cfg, &extra));
        body.push_str("n,distance,certified\n");
    }
    if !args.summary_only {
        for e in &report.entries {
            match format {
                Format::Text => {
                    let verdict = if e.certified { "PASS" } else { "FAIL" };
                    let _ = writeln!(body, "{} {} {verdict}", e.n, e.distance);
                }
                Format::Csv => {
                    let _ = writeln!(body, "{},{},{}", e.n, e.distance, e.certified);
                }
            }
        }
    }

    let mut returns = 0;
    let mut mc_line = None;
    if args.mc_samples > 0 && !report.entries.is_empty() {
        let sys_prec = cfg.precision_for(k, n.saturating_mul(2 * k as u64).max(2))?;
        let extra_bits = 64 - (report.solution.m as u64).leading_zeros();
        let sys_prec = Precision::new(sys_prec.bits() + extra_bits)?;
        let sys = SkewSystem::from_spec(k, &report.system_alpha, sys_prec)?;
        let ball = EpsilonBall::new(eps, &report.solution)?;
        let members: Vec<u64> = report.entries.iter().map(|e| e.n).collect();
        let picks = args.mc_members.min(members.len()).max(1);
        for i in 0..picks {
            let m = members[i * members.len() / picks];
            returns += monte_carlo_return_check(&sys, &ball, m, args.mc_samples, cfg.seed() ^ m)?;
        }
        mc_line = Some(format!(
            "monte-carlo: members={picks} samples={} returns={returns}",
            args.mc_samples
        ));
    }

    let certified = report.certified_count();
    let total = report.entries.len();
    let prefix = if format == Format::Csv { "# " } else { "" };
    let min = report.min_distance().map_or("-".to_string(), |d| d.to_string());
    let _ = writeln!(
        body,
        "{prefix}summary: certified={certified} total={total} uncertain={} epsilon={eps} radius={} system_alpha={} min_distance={min}",
        set.uncertain_count,
        report.radius(),
        report.system_alpha
    );
    if let Some(line) = mc_line {
        let _ = writeln!(body, "{prefix}{line}");
    }
    let failed = certified != total || set.uncertain_count != 0 || returns != 0;
    Ok(Outcome { body, failed, plot: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqKind {
    /// 1, 2, ..., nmax.
    Int,
    Sk,
    Skprime,
}

#[derive(Debug, Args)]
pub struct WeylSumArgs {
    #[arg(long, value_enum, default_value = "int")]
    kind: SeqKind,
    #[arg(long)]
    jmax: Option<u32>,
    /// Checkpoints per decade of N.
    #[arg(long, default_value_t = 10)]
    points: u32,
}

pub fn weyl_sum(cfg: &RunConfig, args: &WeylSumArgs) -> Result<Outcome> {
    let k = cfg.k();
    let alpha = cfg.alpha();
    let n = cfg.nmax(100_000);
    let (profile, grid) = match args.kind {
        SeqKind::Int => {
            let prec = cfg.precision_for(k, n)?;
            let grid = checkpoints(n, args.points);
            (weyl_profile(Elements::Range { start: 1, len: n }, k, &alpha, &grid, prec)?, grid)
        }
        SeqKind::Sk | SeqKind::Skprime => {
            let kind = if args.kind == SeqKind::Sk { KindArg::Sk } else { KindArg::Skprime };
            let prec = cfg.precision_for(k, set_bound(kind, n, args.jmax))?;
            let set = generate(cfg, kind, n, args.jmax, prec)?;
            let grid = checkpoints(set.len() as u64, args.points);
            (weyl_profile(Elements::Slice(set.elements()), k, &alpha, &grid, prec)?, grid)
        }
    };
    let mut t = Table::new(&["id", "N", "re", "im", "modulus"]);
    for (i, (n, a)) in grid.iter().zip(&profile).enumerate() {
        t.push(complex_row(i + 1, *n, a));
    }
    let extra =
        [("kind", format!("{:?}", args.kind).to_lowercase()), ("points", args.points.to_string())];
    let config = config_line("weyl-sum", cfg, &extra);
    let plot = PlotSpec {
        title: "Weyl averages".into(),
        x: "N",
        ys: vec!["re", "im", "modulus"],
        log_x: true,
    };
    Ok(series_outcome(t, cfg, &config, plot))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Series {
    Blocks,
    Trajectory,
    Windows,
}

#[derive(Debug, Args)]
pub struct BlockReportArgs {
    #[arg(long, default_value_t = 16)]
    jmax: u32,
    #[arg(long, value_enum, default_value = "blocks")]
    series: Series,
}

pub fn block_report(cfg: &RunConfig, args: &BlockReportArgs) -> Result<Outcome> {
    let k = cfg.k();
    if args.jmax >= 62 {
        return Err(Error::InvalidParameter(format!("jmax={} too large", args.jmax)));
    }
    let prec = cfg.precision_for(k, 1u64 << (args.jmax + 1))?;
    let report = block_sign_report(k, &cfg.alpha(), args.jmax, prec)?;
    let nan = f64::NAN.to_string();
    let t = match args.series {
        Series::Blocks => {
            let mut t = Table::new(&["id", "N", "re", "im", "modulus", "lo", "hi", "status"]);
            for b in &report.blocks {
                let mut row = match &b.avg {
                    Some(a) => complex_row(b.j as usize, b.len as u64, a),
                    None => {
                        vec![b.j.to_string(), "0".into(), nan.clone(), nan.clone(), nan.clone()]
                    }
                };
                let status = if b.len == 0 {
                    "empty"
                } else if b.within_bounds() {
                    "ok"
                } else {
                    "violation"
                };
                row.extend([b.lo.to_string(), b.hi.to_string(), status.to_string()]);
                t.push(row);
            }
            t
        }
        Series::Trajectory => {
            let mut t = Table::new(&["id", "N", "re", "im", "modulus", "gap"]);
            for p in &report.trajectory {
                let mut row = complex_row(p.j as usize, p.n, &p.avg);
                row.push(p.gap.map_or(nan.clone(), |g| g.to_string()));
                t.push(row);
            }
            t
        }
        Series::Windows => {
            let mut t = Table::new(&["id", "N", "re", "im", "modulus", "residual"]);
            for (i, w) in report.windows.iter().enumerate() {
                let mut row = complex_row(i + 1, w.n, &w.b_n);
                row.push(w.residual.to_string());
                t.push(row);
            }
            t
        }
    };
    let extra =
        [("jmax", args.jmax.to_string()), ("series", format!("{:?}", args.series).to_lowercase())];
    let config = config_line("block-report", cfg, &extra);
    let plot = match args.series {
        Series::Blocks => {
            PlotSpec { title: "block averages".into(), x: "id", ys: vec!["re", "im"], log_x: false }
        }
        _ => PlotSpec {
            title: "averages".into(),
            x: "N",
            ys: vec!["re", "im", "modulus"],
            log_x: true,
        },
    };
    let mut out = series_outcome(t, cfg, &config, plot);
    let violations = report.violations();
    if !violations.is_empty() {
        eprintln!("reclab: {} blocks escape the cosine bounds", violations.len());
        out.failed = true;
    }
    Ok(out)
}

#[derive(Debug, Args)]
pub struct AvgDiffArgs {
    /// Rotation number of the circle rotation.
    #[arg(long, value_name = "SPEC")]
    beta: Option<AlphaSpec>,
    /// Interval whose indicator weights the average.
    #[arg(long, value_name = "LO,HI", default_value = "1/4,3/4")]
    window: String,
    /// Character exponents m_1,...,m_{k-1}.
    #[arg(long, value_name = "M1,...", default_value = "1", allow_hyphen_values = true)]
    chars: String,
    /// Averages run over n = start + 1, ..., N.
    #[arg(long, default_value_t = 0)]
    start: u64,
    #[arg(long, default_value_t = 10)]
    points: u32,
}

pub fn avg_diff(cfg: &RunConfig, args: &AvgDiffArgs) -> Result<Outcome> {
    let k = cfg.k();
    let n = cfg.nmax(100_000);
    let characters = args
        .chars
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim().parse().map_err(|_| Error::Parse(format!("bad character exponent `{s}`")))
        })
        .collect::<Result<Vec<i64>>>()?;
    let beta = args.beta.clone().unwrap_or_else(AlphaSpec::golden);
    let params = WeightedDiff {
        k,
        alpha: cfg.alpha(),
        beta: beta.clone(),
        window: parse_pair(&args.window)?,
        characters,
        start: args.start,
        end: n,
    };
    let grid: Vec<u64> =
        checkpoints(n, args.points).into_iter().filter(|&x| x > args.start).collect();
    let profile = weighted_average_diff_profile(&params, &grid, cfg.precision_for(k, n)?)?;
    let mut t = Table::new(&["id", "N", "re", "im", "modulus"]);
    for (i, (n, a)) in grid.iter().zip(&profile).enumerate() {
        t.push(complex_row(i + 1, *n, a));
    }
    let extra = [
        ("beta", beta.to_string()),
        ("window", args.window.clone()),
        ("chars", args.chars.clone()),
        ("start", args.start.to_string()),
    ];
    let config = config_line("avg-diff", cfg, &extra);
    let plot = PlotSpec { title: "D(M, N)".into(), x: "N", ys: vec!["modulus"], log_x: true };
    Ok(series_outcome(t, cfg, &config, plot))
}

#[derive(Debug, Args)]
pub struct RecurrenceAvgArgs {
    #[arg(long, value_name = "SPEC")]
    beta: Option<AlphaSpec>,
    /// Arc `[lo, hi)` of the circle.
    #[arg(long, value_name = "LO,HI", default_value = "0,3/10")]
    arc: String,
    /// Checkpoints per decade (0 reports only N).
    #[arg(long, default_value_t = 0)]
    points: u32,
}

pub fn recurrence_avg(cfg: &RunConfig, args: &RecurrenceAvgArgs) -> Result<Outcome> {
    let k = cfg.k();
    let n = cfg.nmax(100_000);
    let beta = args.beta.clone().unwrap_or_else(AlphaSpec::sqrt3);
    let arc = parse_pair(&args.arc)?;
    let prec = cfg.precision_for(k, n)?;
    let grid = if args.points == 0 { vec![n] } else { checkpoints(n, args.points) };
    let mut t = Table::new(&["id", "N", "re", "im", "modulus"]);
    for (i, &m) in grid.iter().enumerate() {
        let v = recurrence_average(k, &cfg.alpha(), &beta, arc, m, prec)?;
        t.push(vec![
            (i + 1).to_string(),
            m.to_string(),
            v.to_string(),
            "0".into(),
            v.abs().to_string(),
        ]);
    }
    let extra = [("beta", beta.to_string()), ("arc", args.arc.clone())];
    let config = config_line("recurrence-avg", cfg, &extra);
    let plot = PlotSpec { title: "recurrence average".into(), x: "N", ys: vec!["re"], log_x: true };
    Ok(series_outcome(t, cfg, &config, plot))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiffKind {
    Sk,
    Skprime,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Found,
    Notfound,
}

#[derive(Debug, Args)]
pub struct FindApArgs {
    /// Set to search: one integer per line or `a..b` runs.
    #[arg(long, value_name = "PATH")]
    set_file: PathBuf,
    #[arg(long, value_enum, default_value = "sk")]
    diff_kind: DiffKind,
    /// Differences for `--diff-kind file`.
    #[arg(long, value_name = "PATH")]
    diff_file: Option<PathBuf>,
    /// Progressions have ap-k + 1 terms (default k).
    #[arg(long)]
    ap_k: Option<u32>,
    /// Exit with status 2 unless the result matches.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    /// Also count every progression.
    #[arg(long)]
    scan: bool,
}

pub fn find_ap(cfg: &RunConfig, args: &FindApArgs) -> Result<Outcome> {
    let k = cfg.k();
    let members = SetStream::load(&args.set_file)?;
    let n = cfg.nmax.unwrap_or(members.bound);
    let set = DenseSet::from_elements(n, members.iter());
    let diffs: Vec<u64> = match args.diff_kind {
        DiffKind::File => {
            let path = args.diff_file.as_ref().ok_or_else(|| {
                Error::InvalidParameter("--diff-kind file needs --diff-file".into())
            })?;
            reclab_core::sequences::read_set_file(path)?
        }
        DiffKind::Sk => gen_sk(k, &cfg.alpha(), n, cfg.precision_for(k, n)?)?.elements().to_vec(),
        DiffKind::Skprime => {
            let j = (64 - n.max(2).leading_zeros()).saturating_sub(1);
            let set = gen_skprime(k, &cfg.alpha(), j, cfg.precision_for(k, 1u64 << (j + 1))?)?;
            set.prefix_up_to(n).to_vec()
        }
    };
    let ap_k = args.ap_k.unwrap_or(k);
    let found = reclab_core::find_ap(&set, &diffs, ap_k);
    let mut body = match found {
        Some(w) => format!("FOUND {} {}\n", w.start, w.diff),
        None => "NOTFOUND\n".to_string(),
    };
    if args.scan {
        let s = intersectivity_scan(&set, &diffs, ap_k);
        let _ = writeln!(
            body,
            "progressions={} differences_tested={} differences_with_progression={}",
            s.progressions, s.differences_tested, s.differences_with_progression
        );
    }
    let failed = match args.expect {
        Some(Expect::Found) => found.is_none(),
        Some(Expect::Notfound) => found.is_some(),
        None => false,
    };
    Ok(Outcome { body, failed, plot: None })
}

#[derive(Debug, Args)]
pub struct BuildWitnessArgs {}

pub fn build_witness(cfg: &RunConfig, _args: &BuildWitnessArgs) -> Result<Outcome> {
    let k = cfg.k();
    let n = cfg.nmax(20_000);
    let delta = match cfg.delta {
        Some(d) => d,
        None if k + 3 < 64 => Rational::new(1, 1u64 << (k + 3)),
        None => return Err(Error::OrderOutOfRange(k)),
    };
    if !witness_threshold_ok(k, delta) {
        return Err(Error::InvalidParameter(format!("delta {delta} violates 2^{k} * delta < 1/4")));
    }
    let set = reclab_core::build_witness(k, &cfg.alpha(), delta, n, cfg.precision_for(k, n)?)?;
    eprintln!("reclab: {} members, density {}", set.count(), density_f64(&set));
    let effective = RunConfig { delta: Some(delta), ..cfg.clone() };
    let mut body = format!("# config: {}\n", config_line("build-witness", &effective, &[]));
    for x in set.elements() {
        let _ = writeln!(body, "{x}");
    }
    Ok(Outcome::ok(body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoints_end_at_len() {
        assert_eq!(checkpoints(1, 10), vec![1]);
        let c = checkpoints(1000, 1);
        assert_eq!(c, vec![1, 10, 100, 1000]);
        let c = checkpoints(1500, 2);
        assert_eq!(c.last(), Some(&1500));
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert!(checkpoints(0, 3).is_empty());
    }

    #[test]
    fn jmax_from_nmax() {
        assert_eq!(jmax_for(4), 1);
        assert_eq!(jmax_for(7), 1);
        assert_eq!(jmax_for(8), 2);
        assert_eq!(jmax_for(1 << 21), 20);
    }
}
