//! `reclab`: recurrence sets, skew products, Weyl sums and AP search from the
//! command line.
//!
//! Exit status: 0 on success, 1 on a usage or input error, 2 when a
//! mathematical assertion (certificate, block bound, expected search result,
//! recipe criterion) fails.

mod commands;
mod config;
mod output;
mod reproduce;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reclab_core::{parse_rational, with_workers, AlphaSpec, Rational};

use config::{Format, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "reclab",
    version,
    about = "Recurrence and intersectivity experiments on explicit integer sets"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// key=value config file; flags given on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Irrational parameter, `surd:p,q,r,d` for (p + q sqrt d) / r.
    #[arg(long, global = true, value_name = "SPEC")]
    alpha: Option<AlphaSpec>,
    /// Polynomial degree / recurrence order.
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Upper end of the integer range [1, N].
    #[arg(long, global = true, value_name = "N")]
    nmax: Option<u64>,
    /// Mantissa bits; must not undercut the policy for the run.
    #[arg(long, global = true, value_name = "BITS")]
    precision: Option<u32>,
    /// Neighbourhood size for certificates, as a decimal or p/q.
    #[arg(long, global = true, value_name = "E", value_parser = rational)]
    eps: Option<Rational>,
    /// Window width for witness sets, as a decimal or p/q.
    #[arg(long, global = true, value_name = "D", value_parser = rational)]
    delta: Option<Rational>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sampling and random sets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Also write a gnuplot script for the table in `--output`.
    #[arg(long, global = true, value_name = "PATH", requires = "output")]
    plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integer solution of the power-sum system for order k.
    SolveLemma(commands::SolveLemmaArgs),
    /// Generate S_k or S'_k (optionally raised to a power).
    GenSet(commands::GenSetArgs),
    /// Orbit of a torus point under the skew product.
    Simulate(commands::SimulateArgs),
    /// Certify non-recurrence of the twisted skew product along S_k.
    Certify(commands::CertifyArgs),
    /// Weyl averages of e(a_n^k alpha) along a sequence.
    WeylSum(commands::WeylSumArgs),
    /// Per-block averages and A_N trajectory along S'_k.
    BlockReport(commands::BlockReportArgs),
    /// Weighted minus unweighted character averages, D(M, N).
    AvgDiff(commands::AvgDiffArgs),
    /// Average return measure of an arc along S_k under a rotation.
    RecurrenceAvg(commands::RecurrenceAvgArgs),
    /// First (k+1)-term progression in a set with difference in S_k.
    FindAp(commands::FindApArgs),
    /// The set of n with {n^k alpha / k!} in [0, delta].
    BuildWitness(commands::BuildWitnessArgs),
    /// Run a bundled recipe and report each criterion.
    Reproduce(reproduce::ReproduceArgs),
}

/// Result of a subcommand: its output and whether an assertion failed.
pub struct Outcome {
    pub body: String,
    pub failed: bool,
    pub plot: Option<(output::PlotSpec, output::Table, Format)>,
}

impl Outcome {
    pub fn ok(body: String) -> Self {
        Self { body, failed: false, plot: None }
    }
}

impl Common {
    fn run_config(&self) -> reclab_core::Result<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            alpha: self.alpha.clone(),
            k: self.k,
            nmax: self.nmax,
            precision: self.precision,
            epsilon: self.eps,
            delta: self.delta,
            format: self.format.map(|f| match f {
                FormatArg::Text => Format::Text,
                FormatArg::Csv => Format::Csv,
            }),
            workers: self.workers,
            seed: self.seed,
        };
        base.overlay(flags).with_env()
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> reclab_core::Result<Outcome> {
    match command {
        Command::SolveLemma(a) => commands::solve_lemma(cfg, a),
        Command::GenSet(a) => commands::gen_set(cfg, a),
        Command::Simulate(a) => commands::simulate(cfg, a),
        Command::Certify(a) => commands::certify(cfg, a),
        Command::WeylSum(a) => commands::weyl_sum(cfg, a),
        Command::BlockReport(a) => commands::block_report(cfg, a),
        Command::AvgDiff(a) => commands::avg_diff(cfg, a),
        Command::RecurrenceAvg(a) => commands::recurrence_avg(cfg, a),
        Command::FindAp(a) => commands::find_ap(cfg, a),
        Command::BuildWitness(a) => commands::build_witness(cfg, a),
        Command::Reproduce(a) => reproduce::run(cfg, a),
    }
}

fn execute(cli: &Cli) -> reclab_core::Result<Outcome> {
    let cfg = cli.common.run_config()?;
    match cfg.workers {
        Some(w) => with_workers(w, || dispatch(&cli.command, &cfg))?,
        None => dispatch(&cli.command, &cfg),
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> std::io::Result<()> {
    match &cli.common.output {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes())?,
    }
    if let (Some(script), Some(data)) = (&cli.common.plot, &cli.common.output) {
        let Some((spec, table, format)) = &outcome.plot else {
            eprintln!("reclab: this subcommand has no plottable table; no script written");
            return Ok(());
        };
        let text = output::gnuplot_script(spec, table, &data.display().to_string(), *format);
        std::fs::write(script, text)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("reclab: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("reclab: {e}");
        return ExitCode::from(1);
    }
    if outcome.failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
