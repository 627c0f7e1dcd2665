//! The `crush-count` command line.
//!
//! ```text
//! crush-count estimate   --rows 9 --cols 9 --k 3 --colors 6 --samples-per-level 10000
//! crush-count mc         --rows 9 --cols 9 --k 3 --colors 6 --samples 10000000
//! crush-count exact      --rows 2 --cols 3 --k 3 --colors 2
//! crush-count region     --k 2:8 --colors 2:16
//! crush-count uniformity --rows 1 --cols 3 --k 3 --colors 2 --samples 60000
//! ```
//!
//! JSON is written to stdout unless `--output` is given. Exit status: 0 on
//! success, 2 for invalid configuration, 3 when the sampler exceeds its
//! resampling budget, 4 when the enumeration oracle refuses an instance.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::{monte_carlo_estimate, splitting_estimate, with_workers, SplittingOptions};
use crate::grid::{build_candy_grid, parse_hypergraph, GridSpec, Hypergraph};
use crate::lll::{check_fpras_condition, scan_region};
use crate::oracle::{exact_count, DEFAULT_ENUMERATION_BUDGET};
use crate::sampler::SelectionRule;
use crate::uniformity::{uniformity_test, UniformityOptions};

#[derive(Debug, Parser)]
#[command(
    name = "crush-count",
    version,
    about = "Count stable Candy Crush colourings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multilevel splitting estimate of the stable fraction and count.
    Estimate(EstimateArgs),
    /// Naive Monte Carlo estimate from uniform colourings.
    Mc(McArgs),
    /// Exact count by exhaustive enumeration.
    Exact(ExactArgs),
    /// Local-lemma feasibility over a range of colour counts and run lengths.
    Region(RegionArgs),
    /// Chi-square test of sampler output against uniform.
    Uniformity(UniformityArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Run length (edge size) of the grid.
    #[arg(long)]
    pub k: Option<usize>,
    /// Hypergraph file (`V n` / `E ids` lines) instead of a grid.
    #[arg(long, conflicts_with_all = ["rows", "cols", "k"])]
    pub hypergraph: Option<PathBuf>,
    #[arg(long)]
    pub colors: u32,
}

impl InstanceArgs {
    pub fn load(&self) -> Result<Hypergraph> {
        match (&self.hypergraph, self.rows, self.cols, self.k) {
            (Some(path), None, None, None) => parse_hypergraph(&fs::read_to_string(path)?),
            (None, Some(rows), Some(cols), Some(k)) => {
                build_candy_grid(GridSpec::new(rows, cols, k)?)
            }
            _ => Err(Error::InvalidParameter(
                "give either --rows, --cols and --k, or --hypergraph".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, env = "CRUSH_COUNT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Samples per level; defaults to the Chernoff schedule.
    #[arg(long)]
    pub samples_per_level: Option<u64>,
    /// Resampling steps allowed per sample.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = RuleArg::Lexicographic)]
    pub rule: RuleArg,
    /// Refuse colour counts outside the local-lemma region.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Largest number of colourings to enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// Run lengths, `lo:hi` or a single value.
    #[arg(long, default_value = "2:8")]
    pub k: Span,
    /// Colour counts, `lo:hi` or a single value.
    #[arg(long, default_value = "2:16")]
    pub colors: Span,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct UniformityArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Sampler outputs; defaults to 50 per stable colouring.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = RuleArg::Lexicographic)]
    pub rule: RuleArg,
    /// Largest number of colourings the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub oracle_budget: u64,
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    /// First monochromatic edge in lexicographic order.
    Lexicographic,
    /// First monochromatic edge in storage order.
    FirstFound,
    /// Lexicographic, also redrawing every earlier edge.
    Closure,
}

impl From<RuleArg> for SelectionRule {
    fn from(rule: RuleArg) -> Self {
        match rule {
            RuleArg::Lexicographic => SelectionRule::LexicographicFirst,
            RuleArg::FirstFound => SelectionRule::FirstFound,
            RuleArg::Closure => SelectionRule::LexicographicClosure,
        }
    }
}

/// Inclusive integer range written `lo:hi`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn range(self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |part: &str| {
            part.trim()
                .parse::<u32>()
                .map_err(|e| format!("`{part}`: {e}"))
        };
        let (lo, hi) = match s.split_once(':') {
            Some((lo, hi)) => (parse(lo)?, parse(hi)?),
            None => (parse(s)?, parse(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {lo}:{hi}"));
        }
        Ok(Span { lo, hi })
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Estimate(args) => cmd_estimate(&args),
        Command::Mc(args) => cmd_mc(&args),
        Command::Exact(args) => cmd_exact(&args),
        Command::Region(args) => cmd_region(&args),
        Command::Uniformity(args) => cmd_uniformity(&args),
    }
}

pub fn cmd_estimate(args: &EstimateArgs) -> Result<()> {
    let h = args.instance.load()?;
    let c = args.instance.colors;
    feasibility_banner(&h, c, args.strict)?;
    let report = splitting_estimate(
        &h,
        c,
        args.epsilon,
        args.delta,
        args.run.seed,
        &SplittingOptions {
            samples_per_level: args.samples_per_level,
            budget: args.budget,
            workers: args.run.workers,
            rule: args.rule.into(),
        },
    )?;
    log::info!(
        "ell ~ {}, count ~ {}",
        report.ell_mantissa_exp,
        report.count_mantissa_exp
    );
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&report, args.output.output.as_deref()),
        Format::Csv => emit(&report.levels_csv(), args.output.output.as_deref()),
    }
}

pub fn cmd_mc(args: &McArgs) -> Result<()> {
    json_only(&args.output)?;
    let h = args.instance.load()?;
    let report = monte_carlo_estimate(
        &h,
        args.instance.colors,
        args.samples,
        args.run.seed,
        args.run.workers,
    )?;
    emit_json(&report, args.output.output.as_deref())
}

pub fn cmd_exact(args: &ExactArgs) -> Result<()> {
    json_only(&args.output)?;
    let h = args.instance.load()?;
    let count = with_workers(args.workers, || {
        exact_count(&h, args.instance.colors, args.budget)
    })??;
    emit_json(&count, args.output.output.as_deref())
}

pub fn cmd_region(args: &RegionArgs) -> Result<()> {
    let k = args.k.lo as usize..=args.k.hi as usize;
    let report = scan_region(args.colors.range(), k)?;
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Json => emit_json(&report, args.output.output.as_deref()),
        Format::Csv => emit(&report.to_csv(), args.output.output.as_deref()),
    }
}

pub fn cmd_uniformity(args: &UniformityArgs) -> Result<()> {
    json_only(&args.output)?;
    let h = args.instance.load()?;
    let c = args.instance.colors;
    feasibility_banner(&h, c, args.strict)?;
    let samples = match args.samples {
        Some(n) => n,
        None => {
            let stable = exact_count(&h, c, args.oracle_budget)?.stable_count;
            u64::try_from(stable * 50u32).map_err(|_| {
                Error::InvalidParameter("stable set too large to sample 50 times over".into())
            })?
        }
    };
    let report = uniformity_test(
        &h,
        c,
        samples,
        args.run.seed,
        &UniformityOptions {
            rule: args.rule.into(),
            budget: args.budget,
            oracle_budget: args.oracle_budget,
            workers: args.run.workers,
        },
    )?;
    emit_json(&report, args.output.output.as_deref())
}

fn feasibility_banner(h: &Hypergraph, c: u32, strict: bool) -> Result<()> {
    if h.k() < 2 || h.edge_count() == 0 {
        return Ok(());
    }
    let feasible = check_fpras_condition(c, h.k()).is_ok_and(|v| v.feasible);
    if feasible {
        return Ok(());
    }
    let msg = format!(
        "c = {c}, k = {} is outside the local-lemma region; the sampler carries no running-time or accuracy guarantee",
        h.k()
    );
    if strict {
        return Err(Error::InvalidParameter(format!(
            "{msg} (refused by --strict)"
        )));
    }
    eprintln!("warning: {msg}");
    Ok(())
}

fn json_only(output: &OutputArgs) -> Result<()> {
    if output.format == Some(Format::Csv) {
        return Err(Error::InvalidParameter(
            "CSV is only available for `estimate` (level table) and `region`".into(),
        ));
    }
    Ok(())
}

fn emit_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(&text, path)
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
