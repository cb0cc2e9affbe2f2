//! In-memory model of a citation corpus: citation events, journal score
//! tables, and per-article score records. Every other module consumes these
//! types.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Relative tolerance for checking a stored Article Influence value against
/// the 0.01 * eigenfactor / alpha form when a row carries both.
const AI_CONSISTENCY_RTOL: f64 = 1e-9;

/// Collapses whitespace runs to single spaces, trims, and uppercases.
/// This is the normalization applied to article identifiers and journal
/// names; identity is exact string equality afterwards.
pub fn normalize_key(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ").to_uppercase()
}

fn validate_year(year: i32) -> Result<()> {
    if (1000..=9999).contains(&year) {
        Ok(())
    } else {
        Err(Error::InvalidYear {
            value: year.to_string(),
        })
    }
}

/// Opaque article identifier, e.g. a cited-reference key such as
/// `"SPINK A, 2001, JASIST, V52, P226"`. Normalized on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArticleId(String);

impl ArticleId {
    pub fn new(raw: &str) -> Result<Self> {
        let key = normalize_key(raw);
        if key.is_empty() {
            return Err(Error::EmptyArticleId);
        }
        Ok(ArticleId(key))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArticleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One citing article referencing one cited article.
///
/// The citation age (citation year minus publication year) is never stored;
/// it is recomputed wherever needed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CitationEvent {
    pub cited: ArticleId,
    pub cited_pub_year: i32,
    pub citing_article: ArticleId,
    pub citing_journal: String,
    pub citation_year: i32,
}

impl CitationEvent {
    pub fn new(
        cited: ArticleId,
        cited_pub_year: i32,
        citing_article: ArticleId,
        citing_journal: &str,
        citation_year: i32,
    ) -> Result<Self> {
        validate_year(cited_pub_year)?;
        validate_year(citation_year)?;
        Ok(CitationEvent {
            cited,
            cited_pub_year,
            citing_article,
            citing_journal: normalize_key(citing_journal),
            citation_year,
        })
    }

    /// Citation age in years; negative when the citation predates the
    /// formal publication year (preprints and the like).
    pub fn interval(&self) -> i32 {
        self.citation_year - self.cited_pub_year
    }
}

/// Per-journal, per-year prestige scores. A row carries an Article
/// Influence score directly, or the eigenfactor/alpha pair it derives
/// from, or all three.
#[derive(Debug, Clone, PartialEq)]
pub struct JournalYearScore {
    pub journal: String,
    pub year: i32,
    pub eigenfactor: Option<f64>,
    pub alpha: Option<f64>,
    pub article_influence: Option<f64>,
}

impl JournalYearScore {
    /// Builds and validates a row. When `article_influence` is absent it is
    /// filled in as 0.01 * eigenfactor / alpha; when all three are supplied
    /// they must agree to 1e-9 relative.
    pub fn new(
        journal: &str,
        year: i32,
        eigenfactor: Option<f64>,
        alpha: Option<f64>,
        article_influence: Option<f64>,
    ) -> Result<Self> {
        validate_year(year)?;
        let journal = normalize_key(journal);
        if let Some(ef) = eigenfactor {
            if ef < 0.0 {
                return Err(Error::NegativeScore {
                    journal,
                    year,
                    field: "eigenfactor",
                });
            }
        }
        if let Some(ai) = article_influence {
            if ai < 0.0 {
                return Err(Error::NegativeScore {
                    journal,
                    year,
                    field: "article_influence",
                });
            }
        }
        if let Some(a) = alpha {
            if a <= 0.0 {
                return Err(Error::NonPositiveAlpha { journal, year });
            }
        }
        let derived = match (eigenfactor, alpha) {
            (Some(ef), Some(a)) => Some(0.01 * ef / a),
            _ => None,
        };
        let article_influence = match (article_influence, derived) {
            (Some(ai), Some(d)) => {
                let scale = ai.abs().max(d.abs());
                if (ai - d).abs() > AI_CONSISTENCY_RTOL * scale.max(1.0) {
                    return Err(Error::InconsistentArticleInfluence { journal, year });
                }
                Some(ai)
            }
            (Some(ai), None) => Some(ai),
            (None, Some(d)) => Some(d),
            (None, None) => return Err(Error::MissingBothScoreForms { journal, year }),
        };
        Ok(JournalYearScore {
            journal,
            year,
            eigenfactor,
            alpha,
            article_influence,
        })
    }

    /// The Article Influence value for this row. Always present after
    /// construction through [`JournalYearScore::new`].
    pub fn ai(&self) -> f64 {
        self.article_influence
            .expect("validated row always carries an article_influence")
    }
}

/// Per-article outcome of scoring: popularity (citation count) next to
/// prestige (weighted citation).
///
/// `missing_journal_events` counts citing events whose journal-year had no
/// score row under the active missing-score policy; such events contribute
/// zero to the weighted score.
#[derive(Debug, Clone, PartialEq)]
pub struct ArticleScore {
    pub article: ArticleId,
    pub citation_count: u32,
    pub weighted_citation: f64,
    pub missing_journal_events: u32,
}

/// Immutable citation corpus. Construction validates cross-record
/// invariants; afterwards the corpus is safe to share read-only.
///
/// Each `CitationEvent` row counts as one citation: the same citing article
/// citing the same cited article twice contributes two events.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    events: Vec<CitationEvent>,
    scores: BTreeMap<(String, i32), JournalYearScore>,
    article_pub_year: BTreeMap<ArticleId, i32>,
}

impl Corpus {
    /// Builds a corpus from events and a journal score table.
    ///
    /// The article table is exactly the set of cited articles appearing in
    /// the events. Use [`Corpus::build_with_universe`] to also register
    /// never-cited articles.
    pub fn build(events: Vec<CitationEvent>, scores: Vec<JournalYearScore>) -> Result<Self> {
        Self::build_with_universe(events, scores, Vec::new())
    }

    /// Like [`Corpus::build`], with extra `(article, publication year)`
    /// entries merged into the article table. Publication years must agree
    /// wherever an article appears more than once.
    pub fn build_with_universe(
        mut events: Vec<CitationEvent>,
        scores: Vec<JournalYearScore>,
        universe: Vec<(ArticleId, i32)>,
    ) -> Result<Self> {
        let mut score_map = BTreeMap::new();
        for row in scores {
            let key = (row.journal.clone(), row.year);
            if score_map.insert(key, row.clone()).is_some() {
                return Err(Error::DuplicateScoreRow {
                    journal: row.journal,
                    year: row.year,
                });
            }
        }

        let mut pub_year: BTreeMap<ArticleId, i32> = BTreeMap::new();
        let mut register = |article: &ArticleId, year: i32| -> Result<()> {
            validate_year(year)?;
            match pub_year.get(article) {
                Some(&existing) if existing != year => Err(Error::InconsistentPubYear {
                    article: article.to_string(),
                    first: existing.min(year),
                    second: existing.max(year),
                }),
                Some(_) => Ok(()),
                None => {
                    pub_year.insert(article.clone(), year);
                    Ok(())
                }
            }
        };
        for (article, year) in &universe {
            register(article, *year)?;
        }
        for event in &events {
            register(&event.cited, event.cited_pub_year)?;
        }

        // Canonical event order makes corpus construction independent of
        // input ordering and gives deterministic serialization.
        events.sort();

        Ok(Corpus {
            events,
            scores: score_map,
            article_pub_year: pub_year,
        })
    }

    pub fn events(&self) -> &[CitationEvent] {
        &self.events
    }

    pub fn score(&self, journal: &str, year: i32) -> Option<&JournalYearScore> {
        self.scores.get(&(journal.to_string(), year))
    }

    pub fn score_rows(&self) -> impl Iterator<Item = &JournalYearScore> {
        self.scores.values()
    }

    /// Years for which the given journal has a score row, ascending.
    pub fn scored_years(&self, journal: &str) -> Vec<i32> {
        self.scores
            .range((journal.to_string(), i32::MIN)..=(journal.to_string(), i32::MAX))
            .map(|((_, year), _)| *year)
            .collect()
    }

    /// Cited articles (plus any registered universe extras) with their
    /// publication years, in ascending article order.
    pub fn articles(&self) -> impl Iterator<Item = (&ArticleId, i32)> {
        self.article_pub_year.iter().map(|(id, year)| (id, *year))
    }

    pub fn pub_year(&self, article: &ArticleId) -> Option<i32> {
        self.article_pub_year.get(article).copied()
    }

    pub fn article_count(&self) -> usize {
        self.article_pub_year.len()
    }

    /// Events whose citation year precedes the cited publication year.
    /// Scoring clamps these to a zero interval; the count feeds warnings.
    pub fn negative_interval_events(&self) -> usize {
        self.events.iter().filter(|e| e.interval() < 0).count()
    }
}
