//! Command implementations. Each returns the process exit code on success;
//! errors bubble to `main` for uniform reporting.

use std::path::Path;

use wcite_core::analytics::{
    classify_quadrants, corpus_summary, linear_r2, qq_points, top_n_report, Threshold, TopOrder,
};
use wcite_core::corpus::{ArticleId, ArticleScore, Corpus};
use wcite_core::crsm::{crsm as run_crsm, delta_distribution};
use wcite_core::decay::{fit_lambda, AgeHistogram, DecayParams};
use wcite_core::ingest::{self, AliasTable};
use wcite_core::scoring::{read_score_table, score_all, write_score_table};
use wcite_core::synthgen;
use wcite_core::{Error, Result};

use crate::render;
use crate::{CrsmArgs, FitDecayArgs, GenerateArgs, InputArgs, ScoreArgs};

fn load_aliases(path: Option<&Path>, delimiter: u8) -> Result<AliasTable> {
    match path {
        Some(path) => AliasTable::from_path(path, delimiter),
        None => Ok(AliasTable::empty()),
    }
}

fn load_corpus(input: &InputArgs) -> Result<Corpus> {
    let aliases = load_aliases(input.aliases.as_deref(), input.delimiter)?;
    let (events, _) = ingest::parse_events(&input.events, &aliases, input.delimiter)?;
    let scores = ingest::parse_scores(&input.scores, &aliases, input.delimiter)?;
    Corpus::build(events, scores)
}

pub fn validate(args: &InputArgs) -> Result<u8> {
    let aliases = load_aliases(args.aliases.as_deref(), args.delimiter)?;
    let (events, mut report) = ingest::parse_events(&args.events, &aliases, args.delimiter)?;
    let scores = ingest::parse_scores(&args.scores, &aliases, args.delimiter)?;
    report.journals_unmatched = ingest::unmatched_journals(&events, &scores);

    println!("rows read: {}", report.rows_read);
    println!("rows accepted: {}", report.rows_accepted());
    println!("rows rejected: {}", report.rows_rejected);
    for (line, reason) in &report.rejects {
        println!("  line {line}: {reason}");
    }
    println!(
        "journals without a score row for a needed year: {}",
        report.journals_unmatched.len()
    );
    for journal in &report.journals_unmatched {
        println!("  {journal}");
    }
    Ok(if report.rows_rejected > 0 { 1 } else { 0 })
}

pub fn score(args: &ScoreArgs) -> Result<u8> {
    let corpus = load_corpus(&args.input)?;
    let params = DecayParams::new(args.lambda)?;
    let clamped = corpus.negative_interval_events();
    if clamped > 0 {
        eprintln!("warning: {clamped} citation(s) predate publication; intervals clamped to 0");
    }
    let scores = score_all(&corpus, params, args.missing_policy);

    render::ensure_dir(&args.out)?;
    let mut score_out = render::create(&args.out.join("scores.tsv"))?;
    write_score_table(&mut score_out, &scores, args.input.delimiter)?;

    // The summary universe is the cited-article set; never-cited articles
    // are not recoverable from an events file.
    let universe: Vec<ArticleId> = corpus.articles().map(|(a, _)| a.clone()).collect();
    let summary = corpus_summary(&corpus, &universe)?;
    render::write_summary(&args.out.join("summary.tsv"), &summary, args.input.delimiter)?;

    println!(
        "scored {} article(s) from {} event(s)",
        scores.len(),
        corpus.events().len()
    );
    println!("wrote scores.tsv, summary.tsv");
    Ok(0)
}

pub fn fit_decay(args: &FitDecayArgs) -> Result<u8> {
    let aliases = load_aliases(args.aliases.as_deref(), args.delimiter)?;
    let (events, _) = ingest::parse_events(&args.events, &aliases, args.delimiter)?;
    let hist = AgeHistogram::from_events(&events);
    let fit = fit_lambda(&hist, args.start_age)?;
    if fit.lambda <= 0.0 {
        eprintln!(
            "warning: fitted lambda {:.6} is not positive; the histogram does not decay",
            fit.lambda
        );
    }
    println!("lambda: {:.6}", fit.lambda);
    println!("r_squared: {:.6}", fit.r_squared);
    println!("start_age: {}", fit.start_age);
    println!("points_used: {}", fit.points_used);
    if let Some(out) = &args.out {
        render::ensure_dir(out)?;
        render::write_decay_fit(&out.join("decay_fit.tsv"), &fit, args.delimiter)?;
        println!("wrote decay_fit.tsv");
    }
    Ok(0)
}

/// The score table either comes precomputed from --score-file (no corpus
/// available) or is computed from the corpus inputs.
fn load_score_table(args: &CrsmArgs) -> Result<(Vec<ArticleScore>, Option<Corpus>)> {
    if let Some(score_file) = &args.score_file {
        return Ok((read_score_table(score_file, args.delimiter)?, None));
    }
    let (events, scores) = match (&args.events, &args.scores) {
        (Some(events), Some(scores)) => (events.clone(), scores.clone()),
        _ => {
            return Err(Error::InvalidSpec(
                "either --score-file or both --events and --scores are required".to_string(),
            ))
        }
    };
    let input = InputArgs {
        events,
        scores,
        aliases: args.aliases.clone(),
        delimiter: args.delimiter,
    };
    let corpus = load_corpus(&input)?;
    let params = DecayParams::new(args.lambda)?;
    let table = score_all(&corpus, params, args.missing_policy);
    Ok((table, Some(corpus)))
}

fn threshold_from(value: Option<f64>) -> Threshold {
    match value {
        Some(v) => Threshold::Value(v),
        None => Threshold::Median,
    }
}

/// Shared body of `crsm` (machine tables, six decimals) and `report`
/// (human tables, two decimals).
pub fn crsm(args: &CrsmArgs, human_report: bool) -> Result<u8> {
    let (scores, corpus) = load_score_table(args)?;
    let output = run_crsm(&scores)?;
    for group in &output.zero_weight_groups {
        eprintln!(
            "warning: citation rank {} ({} article(s) with count {}) has zero weighted mass; deltas fall back to the raw count",
            group.citation_rank, group.size, group.citation_count
        );
    }
    render::ensure_dir(&args.out)?;
    let delim = args.delimiter;

    if human_report {
        render::write_top_table(
            &args.out.join("top_citation.tsv"),
            &top_n_report(&output.rows, args.top, TopOrder::Citation),
            delim,
        )?;
        render::write_top_table(
            &args.out.join("top_weighted.tsv"),
            &top_n_report(&output.rows, args.top, TopOrder::Weighted),
            delim,
        )?;
        render::write_top_table(
            &args.out.join("top_delta_desc.tsv"),
            &top_n_report(&output.rows, args.top, TopOrder::DeltaDesc),
            delim,
        )?;
        render::write_top_table(
            &args.out.join("top_delta_asc.tsv"),
            &top_n_report(&output.rows, args.top, TopOrder::DeltaAsc),
            delim,
        )?;
        let mut written =
            "top_citation.tsv, top_weighted.tsv, top_delta_desc.tsv, top_delta_asc.tsv".to_string();
        if let Some(corpus) = &corpus {
            let universe: Vec<ArticleId> = corpus.articles().map(|(a, _)| a.clone()).collect();
            let summary = corpus_summary(corpus, &universe)?;
            render::write_summary(&args.out.join("summary.tsv"), &summary, delim)?;
            written.push_str(", summary.tsv");
        }
        println!("wrote {written}");
        return Ok(0);
    }

    render::write_crsm(&args.out.join("crsm.tsv"), &output.rows, delim)?;
    let dist = delta_distribution(&output.rows, 1.0)?;
    render::write_delta_distribution(&args.out.join("delta_distribution.tsv"), &dist, delim)?;
    render::write_crsm(
        &args.out.join("top_delta_desc.tsv"),
        &top_n_report(&output.rows, args.top, TopOrder::DeltaDesc),
        delim,
    )?;
    render::write_crsm(
        &args.out.join("top_delta_asc.tsv"),
        &top_n_report(&output.rows, args.top, TopOrder::DeltaAsc),
        delim,
    )?;
    let labels = classify_quadrants(
        &scores,
        threshold_from(args.pop_threshold),
        threshold_from(args.prestige_threshold),
    )?;
    render::write_quadrants(&args.out.join("quadrants.tsv"), &scores, &labels, delim)?;
    let deltas: Vec<f64> = output.rows.iter().map(|r| r.delta).collect();
    render::write_qq(&args.out.join("qq.tsv"), &qq_points(&deltas), delim)?;
    // Count-vs-weighted regression; degenerate inputs render as NA.
    let points: Vec<(f64, f64)> = scores
        .iter()
        .map(|s| (s.weighted_citation, f64::from(s.citation_count)))
        .collect();
    let r2 = linear_r2(&points).ok();
    render::write_regression(&args.out.join("regression.tsv"), r2, points.len(), delim)?;
    println!(
        "wrote crsm.tsv, delta_distribution.tsv, top_delta_desc.tsv, top_delta_asc.tsv, quadrants.tsv, qq.tsv, regression.tsv"
    );
    Ok(0)
}

pub fn generate(args: &GenerateArgs) -> Result<u8> {
    let spec = synthgen::GenSpec {
        seed: args.seed,
        n_articles: args.articles,
        n_journals: args.journals,
        pub_year_range: args.years,
        lambda_true: args.lambda_true,
        ai_distribution: args.ai_dist,
        citations_per_article: args.citations,
    };
    let generated = synthgen::generate(&spec)?;
    render::ensure_dir(&args.out)?;
    synthgen::emit(&generated, &args.out, args.delimiter)?;
    println!(
        "generated {} article(s), {} event(s)",
        generated.corpus.article_count(),
        generated.corpus.events().len()
    );
    println!("wrote events.tsv, scores.tsv, ground_truth.tsv");
    Ok(0)
}
