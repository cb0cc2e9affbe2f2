//! Corpus summaries, count-vs-score regression, popularity/prestige
//! quadrants, and top-N report tables.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{ArticleId, ArticleScore, Corpus};
use crate::crsm::CrsmRow;
use crate::error::{Error, Result};
use crate::stats;

/// Headline statistics of a corpus against a full article universe
/// (the universe includes never-cited articles).
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSummary {
    pub total_articles: u64,
    pub cited_articles: u64,
    /// cited_articles / total_articles, as a fraction.
    pub cited_ratio: f64,
    pub total_citations: u64,
    pub mean_citations_per_cited_article: f64,
    pub citing_articles: u64,
    /// total_citations / citing_articles.
    pub cited_per_citing: f64,
    pub citing_journals: u64,
}

impl CorpusSummary {
    /// Pure arithmetic over pre-counted inputs. Ratios are kept at full
    /// precision; rendering rounds to two decimals.
    pub fn from_counts(
        total_articles: u64,
        cited_articles: u64,
        total_citations: u64,
        citing_articles: u64,
        citing_journals: u64,
    ) -> Result<Self> {
        if cited_articles > total_articles {
            return Err(Error::InvalidSummaryCounts(format!(
                "cited articles ({cited_articles}) exceed the universe ({total_articles})"
            )));
        }
        let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        Ok(CorpusSummary {
            total_articles,
            cited_articles,
            cited_ratio: ratio(cited_articles, total_articles),
            total_citations,
            mean_citations_per_cited_article: ratio(total_citations, cited_articles),
            citing_articles,
            cited_per_citing: ratio(total_citations, citing_articles),
            citing_journals,
        })
    }
}

/// Counts a corpus against the supplied universe. Every cited article must
/// be part of the universe.
pub fn corpus_summary(corpus: &Corpus, universe: &[ArticleId]) -> Result<CorpusSummary> {
    let universe_set: BTreeSet<&ArticleId> = universe.iter().collect();
    let mut cited = BTreeSet::new();
    let mut citing = BTreeSet::new();
    let mut journals = BTreeSet::new();
    for event in corpus.events() {
        if !universe_set.contains(&event.cited) {
            return Err(Error::CitedArticleOutsideUniverse(event.cited.to_string()));
        }
        cited.insert(&event.cited);
        citing.insert(&event.citing_article);
        journals.insert(event.citing_journal.as_str());
    }
    CorpusSummary::from_counts(
        universe_set.len() as u64,
        cited.len() as u64,
        corpus.events().len() as u64,
        citing.len() as u64,
        journals.len() as u64,
    )
}

/// Coefficient of determination of the ordinary least squares regression
/// of y on x. Defined as 0 when y has zero variance; errors when all x
/// coincide (or fewer than two points are given).
pub fn linear_r2(points: &[(f64, f64)]) -> Result<f64> {
    match stats::least_squares(points) {
        Some(fit) => Ok(fit.r_squared),
        None => Err(Error::DegenerateX),
    }
}

/// Popularity/prestige quadrant of an article.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrantLabel {
    LowPopLowPrestige,
    LowPopHighPrestige,
    HighPopLowPrestige,
    HighPopHighPrestige,
}

impl QuadrantLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuadrantLabel::LowPopLowPrestige => "LowPop_LowPrestige",
            QuadrantLabel::LowPopHighPrestige => "LowPop_HighPrestige",
            QuadrantLabel::HighPopLowPrestige => "HighPop_LowPrestige",
            QuadrantLabel::HighPopHighPrestige => "HighPop_HighPrestige",
        }
    }
}

/// Cut point for one axis of the quadrant classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// Median of the observed values; for an even count, the mean of the
    /// two central values.
    Median,
    Value(f64),
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

fn resolve_threshold(threshold: Threshold, values: &mut [f64]) -> f64 {
    match threshold {
        Threshold::Value(v) => v,
        Threshold::Median => {
            values.sort_by(f64::total_cmp);
            median(values)
        }
    }
}

/// Labels every article: "high" on an axis means strictly greater than the
/// threshold for that axis.
pub fn classify_quadrants(
    scores: &[ArticleScore],
    pop_threshold: Threshold,
    prestige_threshold: Threshold,
) -> Result<BTreeMap<ArticleId, QuadrantLabel>> {
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut counts: Vec<f64> = scores.iter().map(|s| f64::from(s.citation_count)).collect();
    let mut weights: Vec<f64> = scores.iter().map(|s| s.weighted_citation).collect();
    let pop_cut = resolve_threshold(pop_threshold, &mut counts);
    let prestige_cut = resolve_threshold(prestige_threshold, &mut weights);

    Ok(scores
        .iter()
        .map(|score| {
            let high_pop = f64::from(score.citation_count) > pop_cut;
            let high_prestige = score.weighted_citation > prestige_cut;
            let label = match (high_pop, high_prestige) {
                (false, false) => QuadrantLabel::LowPopLowPrestige,
                (false, true) => QuadrantLabel::LowPopHighPrestige,
                (true, false) => QuadrantLabel::HighPopLowPrestige,
                (true, true) => QuadrantLabel::HighPopHighPrestige,
            };
            (score.article.clone(), label)
        })
        .collect())
}

/// Ordering for the top-N report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopOrder {
    /// Descending citation count.
    Citation,
    /// Descending weighted citation.
    Weighted,
    /// Descending delta (popularity outweighing prestige first).
    DeltaDesc,
    /// Ascending delta (prestige outweighing popularity first).
    DeltaAsc,
}

/// Top `n` alignment rows under the chosen order, ties broken by ascending
/// article id. `n` past the table length yields the full table.
pub fn top_n_report(rows: &[CrsmRow], n: usize, order: TopOrder) -> Vec<CrsmRow> {
    let mut sorted: Vec<CrsmRow> = rows.to_vec();
    sorted.sort_by(|a, b| {
        let primary = match order {
            TopOrder::Citation => b.citation_count.cmp(&a.citation_count),
            TopOrder::Weighted => b.weighted_citation.total_cmp(&a.weighted_citation),
            TopOrder::DeltaDesc => b.delta.total_cmp(&a.delta),
            TopOrder::DeltaAsc => a.delta.total_cmp(&b.delta),
        };
        primary.then_with(|| a.article.cmp(&b.article))
    });
    sorted.truncate(n);
    sorted
}

/// Sorted deltas paired with standard normal quantiles at plotting
/// positions (i - 0.5)/n, for quantile-quantile inspection of the delta
/// distribution. Returns (theoretical quantile, observed delta) pairs.
pub fn qq_points(deltas: &[f64]) -> Vec<(f64, f64)> {
    let n = deltas.len();
    let mut sorted = deltas.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, delta)| {
            let p = (i as f64 + 0.5) / n as f64;
            (normal_quantile(p), delta)
        })
        .collect()
}

/// Inverse standard normal CDF via the Acklam rational approximation
/// (relative error below ~1.2e-9 over (0, 1)).
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "p must be in (0, 1), got {p}");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}
