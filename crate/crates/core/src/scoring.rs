//! Weighted citation scoring: Article Influence arithmetic, per-article
//! prestige scores, and author-level aggregates.
//!
//! An article's weighted citation is the sum over its citing events of
//! `e^(-lambda * age) * AI(citing journal, citation year)`, where the AI is
//! looked up in the corpus score table under a missing-score policy.
//! Negative citation ages clamp to zero so no single citation can weigh
//! more than its journal's AI. Citations from the cited journal itself are
//! scored like any other citation; self-citations carry no special weight.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use crate::corpus::{ArticleId, ArticleScore, Corpus};
use crate::decay::{weight, DecayParams};
use crate::error::{Error, Result};

/// How to resolve a citing (journal, year) with no score row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingScorePolicy {
    /// Treat the journal's AI as zero for that event (the event is counted
    /// in `missing_journal_events`).
    #[default]
    Zero,
    /// Substitute the journal's AI from the closest scored year within
    /// `max_year_gap`, preferring the earlier year on ties; beyond the gap
    /// the event resolves to zero and counts as missing.
    NearestYear { max_year_gap: u32 },
}

/// Author-level aggregate over a caller-supplied publication list.
#[derive(Debug, Clone, PartialEq)]
pub struct AuthorScore {
    pub author: String,
    pub publications: Vec<ArticleId>,
    pub weighted_citation_total: f64,
    pub weighted_h_index: u32,
}

/// Article Influence from the eigenfactor/alpha pair: `0.01 * ef / alpha`.
pub fn article_influence(eigenfactor: f64, alpha: f64) -> Result<f64> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::NonPositiveAlpha {
            journal: String::new(),
            year: 0,
        });
    }
    Ok(0.01 * eigenfactor / alpha)
}

/// AI for one citing event, or `None` when the policy resolves it as
/// missing.
fn event_ai(corpus: &Corpus, journal: &str, year: i32, policy: MissingScorePolicy) -> Option<f64> {
    if let Some(row) = corpus.score(journal, year) {
        return Some(row.ai());
    }
    match policy {
        MissingScorePolicy::Zero => None,
        MissingScorePolicy::NearestYear { max_year_gap } => {
            let mut best: Option<(u32, i32)> = None;
            for candidate in corpus.scored_years(journal) {
                let gap = candidate.abs_diff(year);
                if gap > max_year_gap {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((best_gap, best_year)) => {
                        gap < best_gap || (gap == best_gap && candidate < best_year)
                    }
                };
                if better {
                    best = Some((gap, candidate));
                }
            }
            best.and_then(|(_, year)| corpus.score(journal, year)).map(|row| row.ai())
        }
    }
}

fn score_events(
    article: &ArticleId,
    events: &[&crate::corpus::CitationEvent],
    corpus: &Corpus,
    params: DecayParams,
    policy: MissingScorePolicy,
) -> ArticleScore {
    let mut weighted = 0.0;
    let mut missing = 0u32;
    for event in events {
        let interval = event.interval().max(0) as u32;
        match event_ai(corpus, &event.citing_journal, event.citation_year, policy) {
            Some(ai) => weighted += weight(interval, params) * ai,
            None => missing += 1,
        }
    }
    ArticleScore {
        article: article.clone(),
        citation_count: events.len() as u32,
        weighted_citation: weighted,
        missing_journal_events: missing,
    }
}

/// Weighted citation score for a single article of the corpus.
pub fn weighted_citation(
    article: &ArticleId,
    corpus: &Corpus,
    params: DecayParams,
    policy: MissingScorePolicy,
) -> Result<ArticleScore> {
    if corpus.pub_year(article).is_none() {
        return Err(Error::UnknownArticle(article.to_string()));
    }
    let events: Vec<&crate::corpus::CitationEvent> = corpus
        .events()
        .iter()
        .filter(|e| e.cited == *article)
        .collect();
    Ok(score_events(article, &events, corpus, params, policy))
}

/// Scores every article of the corpus (including registered never-cited
/// articles, which get zero rows), in ascending article order.
pub fn score_all(
    corpus: &Corpus,
    params: DecayParams,
    policy: MissingScorePolicy,
) -> Vec<ArticleScore> {
    let mut by_article: BTreeMap<&ArticleId, Vec<&crate::corpus::CitationEvent>> = corpus
        .articles()
        .map(|(id, _)| (id, Vec::new()))
        .collect();
    for event in corpus.events() {
        by_article
            .get_mut(&event.cited)
            .expect("corpus invariant: every event's cited article is registered")
            .push(event);
    }
    by_article
        .iter()
        .map(|(article, events)| score_events(article, events, corpus, params, policy))
        .collect()
}

/// Largest `h` such that at least `h` scores are `>= h`.
pub fn weighted_h_index(scores: &[f64]) -> u32 {
    let mut sorted: Vec<f64> = scores.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut h = 0u32;
    for (i, score) in sorted.iter().enumerate() {
        if *score >= (i + 1) as f64 {
            h = (i + 1) as u32;
        } else {
            break;
        }
    }
    h
}

/// Accumulates an author's weighted citation total and weighted h-index
/// over their publications. Every publication must have a score row;
/// never-cited publications are expected as zero rows.
pub fn author_weighted_citation(
    author: &str,
    publications: &[ArticleId],
    scores: &[ArticleScore],
) -> Result<AuthorScore> {
    let by_article: BTreeMap<&ArticleId, &ArticleScore> =
        scores.iter().map(|s| (&s.article, s)).collect();
    let mut total = 0.0;
    let mut values = Vec::with_capacity(publications.len());
    for publication in publications {
        let score = by_article
            .get(publication)
            .ok_or_else(|| Error::UnknownArticle(publication.to_string()))?;
        total += score.weighted_citation;
        values.push(score.weighted_citation);
    }
    Ok(AuthorScore {
        author: author.to_string(),
        publications: publications.to_vec(),
        weighted_citation_total: total,
        weighted_h_index: weighted_h_index(&values),
    })
}

pub const SCORE_TABLE_HEADER: [&str; 4] = [
    "cited_id",
    "citation_count",
    "weighted_citation",
    "missing_journal_events",
];

/// Writes the score table: one row per article with the weighted citation
/// in fixed 6-decimal notation.
pub fn write_score_table<W: Write>(
    out: &mut W,
    scores: &[ArticleScore],
    delimiter: u8,
) -> Result<()> {
    let delim = delimiter as char;
    let mut buf = String::new();
    buf.push_str(&SCORE_TABLE_HEADER.join(&delim.to_string()));
    buf.push('\n');
    for score in scores {
        if score.article.as_str().contains(delim) {
            return Err(Error::DelimiterInField {
                field: score.article.to_string(),
            });
        }
        buf.push_str(&format!(
            "{}{d}{}{d}{:.6}{d}{}\n",
            score.article,
            score.citation_count,
            score.weighted_citation,
            score.missing_journal_events,
            d = delim,
        ));
    }
    out.write_all(buf.as_bytes()).map_err(|source| Error::FileUnwritable {
        path: "<writer>".into(),
        source,
    })
}

/// Reads a score table written by [`write_score_table`] (or any file in
/// that format, e.g. an externally assembled score list).
pub fn read_score_table(path: &Path, delimiter: u8) -> Result<Vec<ArticleScore>> {
    let content = std::fs::read_to_string(path).map_err(|source| Error::FileUnreadable {
        path: path.to_path_buf(),
        source,
    })?;
    read_score_table_str(&content, delimiter)
}

pub fn read_score_table_str(content: &str, delimiter: u8) -> Result<Vec<ArticleScore>> {
    let delim = delimiter as char;
    let mut lines = content.lines();
    let header = lines.next().unwrap_or("").trim_end_matches('\r');
    let expected = SCORE_TABLE_HEADER.join(&delim.to_string());
    if header != expected {
        return Err(Error::HeaderMismatch {
            expected,
            found: header.to_string(),
        });
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx as u64 + 2;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(delim).collect();
        if fields.len() != 4 {
            return Err(Error::MalformedScoreRow {
                line: line_no,
                reason: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let article = ArticleId::new(fields[0]).map_err(|_| Error::MalformedScoreRow {
            line: line_no,
            reason: "empty cited_id".to_string(),
        })?;
        let citation_count = fields[1].trim().parse().map_err(|_| Error::MalformedScoreRow {
            line: line_no,
            reason: format!("invalid citation_count: {:?}", fields[1]),
        })?;
        let weighted_citation = fields[2].trim().parse().map_err(|_| Error::MalformedScoreRow {
            line: line_no,
            reason: format!("invalid weighted_citation: {:?}", fields[2]),
        })?;
        let missing_journal_events =
            fields[3].trim().parse().map_err(|_| Error::MalformedScoreRow {
                line: line_no,
                reason: format!("invalid missing_journal_events: {:?}", fields[3]),
            })?;
        rows.push(ArticleScore {
            article,
            citation_count,
            weighted_citation,
            missing_journal_events,
        });
    }
    Ok(rows)
}
