//! wcite: batch pipeline for citation prestige analytics.
//!
//! Subcommands wire file ingest, decay fitting, weighted scoring, ranking
//! alignment, and report rendering into reproducible runs: identical
//! inputs produce byte-identical outputs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wcite_core::Error;

mod commands;
mod render;

#[derive(Parser)]
#[command(
    name = "wcite",
    version,
    about = "Citation prestige analytics: weighted citation scoring and rank comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the input files and report malformed rows and unscored journals.
    Validate(InputArgs),
    /// Compute per-article weighted citation scores and a corpus summary.
    Score(ScoreArgs),
    /// Fit the decay constant to the corpus citation-age histogram.
    FitDecay(FitDecayArgs),
    /// Align the citation-count and weighted rankings and emit per-article deltas.
    Crsm(CrsmArgs),
    /// Render human-readable top-N tables (two-decimal reals).
    Report(CrsmArgs),
    /// Generate a synthetic corpus with known ground truth.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Citation events file.
    #[arg(long)]
    events: PathBuf,
    /// Journal score table file.
    #[arg(long)]
    scores: PathBuf,
    /// Optional journal alias file (raw, canonical).
    #[arg(long)]
    aliases: Option<PathBuf>,
    /// Field delimiter: a single character, or "tab".
    #[arg(long, default_value = "tab", value_parser = parse_delimiter)]
    delimiter: u8,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Decay constant.
    #[arg(long, default_value_t = wcite_core::decay::DEFAULT_LAMBDA)]
    lambda: f64,
    /// Missing-score policy: "zero" or "nearest:K" (max year gap K).
    #[arg(long, default_value = "zero", value_parser = parse_policy)]
    missing_policy: wcite_core::scoring::MissingScorePolicy,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FitDecayArgs {
    /// Citation events file.
    #[arg(long)]
    events: PathBuf,
    /// Optional journal alias file.
    #[arg(long)]
    aliases: Option<PathBuf>,
    /// First age of the fit: "auto" (histogram peak) or an integer.
    #[arg(long, default_value = "auto", value_parser = parse_start_age)]
    start_age: wcite_core::decay::StartAge,
    /// Optional output directory for the fit file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "tab", value_parser = parse_delimiter)]
    delimiter: u8,
}

#[derive(Args)]
struct CrsmArgs {
    /// Citation events file (with --scores; or use --score-file).
    #[arg(long, requires = "scores", conflicts_with = "score_file")]
    events: Option<PathBuf>,
    /// Journal score table file.
    #[arg(long, requires = "events")]
    scores: Option<PathBuf>,
    /// Optional journal alias file.
    #[arg(long)]
    aliases: Option<PathBuf>,
    /// Precomputed article score table (bypasses scoring).
    #[arg(long, conflicts_with = "events")]
    score_file: Option<PathBuf>,
    #[arg(long, default_value_t = wcite_core::decay::DEFAULT_LAMBDA)]
    lambda: f64,
    #[arg(long, default_value = "zero", value_parser = parse_policy)]
    missing_policy: wcite_core::scoring::MissingScorePolicy,
    /// Rows per top-N table.
    #[arg(long, default_value_t = 20)]
    top: usize,
    /// Popularity cut for the quadrants (default: median citation count).
    #[arg(long)]
    pop_threshold: Option<f64>,
    /// Prestige cut for the quadrants (default: median weighted citation).
    #[arg(long)]
    prestige_threshold: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "tab", value_parser = parse_delimiter)]
    delimiter: u8,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    articles: u32,
    #[arg(long)]
    journals: u32,
    /// Publication year range as MIN:MAX.
    #[arg(long, value_parser = parse_years)]
    years: (i32, i32),
    /// True decay constant for citation ages.
    #[arg(long, default_value_t = wcite_core::decay::DEFAULT_LAMBDA)]
    lambda_true: f64,
    /// Journal AI distribution: "uniform:LO:HI" or "twopoint:LOW:HIGH:P".
    #[arg(long, value_parser = parse_ai_dist)]
    ai_dist: wcite_core::synthgen::AiDistribution,
    /// Citations per article: "const:K" or "uniform:LO:HI".
    #[arg(long, value_parser = parse_citations)]
    citations: wcite_core::synthgen::CitationCount,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "tab", value_parser = parse_delimiter)]
    delimiter: u8,
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s {
        "tab" | "\\t" => Ok(b'\t'),
        _ => {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii() && c != '\n' => Ok(c as u8),
                _ => Err(format!(
                    "delimiter must be a single ASCII character or \"tab\", got {s:?}"
                )),
            }
        }
    }
}

fn parse_policy(s: &str) -> Result<wcite_core::scoring::MissingScorePolicy, String> {
    use wcite_core::scoring::MissingScorePolicy;
    if s == "zero" {
        return Ok(MissingScorePolicy::Zero);
    }
    if let Some(gap) = s.strip_prefix("nearest:") {
        let max_year_gap: u32 = gap
            .parse()
            .map_err(|_| format!("invalid year gap in {s:?}"))?;
        return Ok(MissingScorePolicy::NearestYear { max_year_gap });
    }
    Err(format!(
        "missing policy must be \"zero\" or \"nearest:K\", got {s:?}"
    ))
}

fn parse_start_age(s: &str) -> Result<wcite_core::decay::StartAge, String> {
    use wcite_core::decay::StartAge;
    if s == "auto" {
        return Ok(StartAge::Auto);
    }
    s.parse::<u32>()
        .map(StartAge::From)
        .map_err(|_| format!("start age must be \"auto\" or an integer, got {s:?}"))
}

fn parse_years(s: &str) -> Result<(i32, i32), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(format!("years must be MIN:MAX, got {s:?}"));
    }
    let min = parts[0]
        .parse()
        .map_err(|_| format!("invalid year {:?}", parts[0]))?;
    let max = parts[1]
        .parse()
        .map_err(|_| format!("invalid year {:?}", parts[1]))?;
    Ok((min, max))
}

fn parse_ai_dist(s: &str) -> Result<wcite_core::synthgen::AiDistribution, String> {
    use wcite_core::synthgen::AiDistribution;
    let parts: Vec<&str> = s.split(':').collect();
    let num = |v: &str| -> Result<f64, String> {
        v.parse()
            .map_err(|_| format!("invalid number {v:?} in {s:?}"))
    };
    match parts.as_slice() {
        ["uniform", lo, hi] => Ok(AiDistribution::Uniform {
            lo: num(lo)?,
            hi: num(hi)?,
        }),
        ["twopoint", low, high, p] => Ok(AiDistribution::TwoPoint {
            low: num(low)?,
            high: num(high)?,
            p_high: num(p)?,
        }),
        _ => Err(format!(
            "AI distribution must be uniform:LO:HI or twopoint:LOW:HIGH:P, got {s:?}"
        )),
    }
}

fn parse_citations(s: &str) -> Result<wcite_core::synthgen::CitationCount, String> {
    use wcite_core::synthgen::CitationCount;
    let parts: Vec<&str> = s.split(':').collect();
    let num = |v: &str| -> Result<u32, String> {
        v.parse()
            .map_err(|_| format!("invalid count {v:?} in {s:?}"))
    };
    match parts.as_slice() {
        ["const", k] => Ok(CitationCount::Constant(num(k)?)),
        ["uniform", lo, hi] => Ok(CitationCount::Uniform {
            min: num(lo)?,
            max: num(hi)?,
        }),
        _ => Err(format!(
            "citations must be const:K or uniform:LO:HI, got {s:?}"
        )),
    }
}

/// Unreadable or unwritable files exit with 2, every other failure with 1.
fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::FileUnreadable { .. } | Error::FileUnwritable { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate(args) => commands::validate(&args),
        Command::Score(args) => commands::score(&args),
        Command::FitDecay(args) => commands::fit_decay(&args),
        Command::Crsm(args) => commands::crsm(&args, false),
        Command::Report(args) => commands::crsm(&args, true),
        Command::Generate(args) => commands::generate(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
