//! Parsing and writing of the delimited interchange files: citation events,
//! journal score tables, and journal alias tables.
//!
//! All files are UTF-8, one record per line, with a mandatory header row.
//! The delimiter is configurable and defaults to tab. Malformed event rows
//! are rejected and reported, never silently dropped; malformed score rows
//! abort the parse.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::corpus::{normalize_key, ArticleId, CitationEvent, JournalYearScore};
use crate::error::{Error, Result};

pub const EVENTS_HEADER: [&str; 5] = [
    "cited_id",
    "cited_pub_year",
    "citing_id",
    "citing_journal",
    "citation_year",
];

pub const SCORES_HEADER: [&str; 5] = ["journal", "year", "eigenfactor", "alpha", "article_influence"];

pub const ALIAS_HEADER: [&str; 2] = ["raw", "canonical"];

/// Maps raw journal strings to canonical names. Keys and values are stored
/// normalized (whitespace-collapsed, uppercased) and every canonical name
/// maps to itself, so applying the table twice equals applying it once.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AliasTable {
    map: BTreeMap<String, String>,
}

impl AliasTable {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S, T>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (raw, canonical) in pairs {
            let raw = normalize_key(raw.as_ref());
            let canonical = normalize_key(canonical.as_ref());
            match map.get(&raw) {
                Some(existing) if *existing != canonical => {
                    return Err(Error::ConflictingAlias {
                        raw,
                        first: existing.clone(),
                        second: canonical,
                    });
                }
                _ => {
                    map.insert(raw, canonical);
                }
            }
        }
        // Close over canonical names so the table is idempotent.
        let canonicals: Vec<String> = map.values().cloned().collect();
        for canonical in canonicals {
            match map.get(&canonical) {
                Some(target) if *target != canonical => {
                    return Err(Error::AliasNotIdempotent {
                        name: canonical.clone(),
                        target: target.clone(),
                    });
                }
                Some(_) => {}
                None => {
                    map.insert(canonical.clone(), canonical);
                }
            }
        }
        Ok(AliasTable { map })
    }

    /// Parses a two-column alias file with header `raw<delim>canonical`.
    pub fn from_path(path: &Path, delimiter: u8) -> Result<Self> {
        let content = read_file(path)?;
        Self::from_str_content(&content, delimiter)
    }

    pub fn from_str_content(content: &str, delimiter: u8) -> Result<Self> {
        let delim = delimiter as char;
        let mut lines = content.lines();
        let header = lines.next().unwrap_or("");
        check_header(header, &ALIAS_HEADER, delim)?;
        let mut pairs = Vec::new();
        for (idx, line) in lines.enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(delim).collect();
            if fields.len() != 2 {
                return Err(Error::MalformedScoreRow {
                    line: idx as u64 + 2,
                    reason: format!("alias row: expected 2 fields, found {}", fields.len()),
                });
            }
            pairs.push((fields[0].to_string(), fields[1].to_string()));
        }
        Self::from_pairs(pairs)
    }

    pub fn resolve(&self, normalized: &str) -> Option<&str> {
        self.map.get(normalized).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Whitespace-collapses, uppercases, and alias-maps a journal name.
/// Unknown journals pass through unchanged. Idempotent.
pub fn normalize_journal(raw: &str, aliases: &AliasTable) -> String {
    let key = normalize_key(raw);
    match aliases.resolve(&key) {
        Some(canonical) => canonical.to_string(),
        None => key,
    }
}

/// Outcome of an event-file parse: row accounting plus the set of journals
/// that later turned out to have no usable score row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IngestReport {
    pub rows_read: u64,
    pub rows_rejected: u64,
    /// (1-based file line, reason) for each rejected row.
    pub rejects: Vec<(u64, String)>,
    /// Journals with no score row for a needed citation year; filled by
    /// [`unmatched_journals`], not by the parser itself.
    pub journals_unmatched: BTreeSet<String>,
}

impl IngestReport {
    pub fn rows_accepted(&self) -> u64 {
        self.rows_read - self.rows_rejected
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::FileUnreadable {
        path: path.to_path_buf(),
        source,
    })
}

fn check_header(line: &str, expected: &[&str], delim: char) -> Result<()> {
    let line = line.trim_end_matches('\r');
    let found: Vec<&str> = line.split(delim).collect();
    if found != expected {
        return Err(Error::HeaderMismatch {
            expected: expected.join(&delim.to_string()),
            found: line.to_string(),
        });
    }
    Ok(())
}

fn parse_year_field(field: &str) -> std::result::Result<i32, String> {
    let trimmed = field.trim();
    if trimmed.len() == 4 && trimmed.chars().all(|c| c.is_ascii_digit()) {
        Ok(trimmed.parse().expect("4 ascii digits parse as i32"))
    } else {
        Err(format!("invalid year: {trimmed:?} (expected a 4-digit year)"))
    }
}

/// Parses a citation-event file. Well-formed rows become events with their
/// citing journal passed through the alias table; malformed rows are
/// recorded in the report and skipped.
pub fn parse_events(
    path: &Path,
    aliases: &AliasTable,
    delimiter: u8,
) -> Result<(Vec<CitationEvent>, IngestReport)> {
    let content = read_file(path)?;
    parse_events_str(&content, aliases, delimiter)
}

pub fn parse_events_str(
    content: &str,
    aliases: &AliasTable,
    delimiter: u8,
) -> Result<(Vec<CitationEvent>, IngestReport)> {
    let delim = delimiter as char;
    let mut lines = content.lines();
    let header = lines.next().unwrap_or("");
    check_header(header, &EVENTS_HEADER, delim)?;

    let mut events = Vec::new();
    let mut report = IngestReport::default();
    for (idx, line) in lines.enumerate() {
        let line_no = idx as u64 + 2;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        report.rows_read += 1;
        match parse_event_row(line, aliases, delim) {
            Ok(event) => events.push(event),
            Err(reason) => {
                report.rows_rejected += 1;
                report.rejects.push((line_no, reason));
            }
        }
    }
    Ok((events, report))
}

fn parse_event_row(
    line: &str,
    aliases: &AliasTable,
    delim: char,
) -> std::result::Result<CitationEvent, String> {
    let fields: Vec<&str> = line.split(delim).collect();
    if fields.len() != 5 {
        return Err(format!("expected 5 fields, found {}", fields.len()));
    }
    let cited = ArticleId::new(fields[0]).map_err(|_| "empty cited_id".to_string())?;
    let cited_pub_year = parse_year_field(fields[1])?;
    let citing = ArticleId::new(fields[2]).map_err(|_| "empty citing_id".to_string())?;
    let journal = normalize_journal(fields[3], aliases);
    if journal.is_empty() {
        return Err("empty citing_journal".to_string());
    }
    let citation_year = parse_year_field(fields[4])?;
    CitationEvent::new(cited, cited_pub_year, citing, &journal, citation_year)
        .map_err(|e| e.to_string())
}

/// Parses a journal score file. Any malformed row aborts the parse with a
/// typed error; the Article Influence column is filled in from the
/// eigenfactor/alpha pair when absent.
pub fn parse_scores(
    path: &Path,
    aliases: &AliasTable,
    delimiter: u8,
) -> Result<Vec<JournalYearScore>> {
    let content = read_file(path)?;
    parse_scores_str(&content, aliases, delimiter)
}

pub fn parse_scores_str(
    content: &str,
    aliases: &AliasTable,
    delimiter: u8,
) -> Result<Vec<JournalYearScore>> {
    let delim = delimiter as char;
    let mut lines = content.lines();
    let header = lines.next().unwrap_or("");
    check_header(header, &SCORES_HEADER, delim)?;

    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx as u64 + 2;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(delim).collect();
        if fields.len() != 5 {
            return Err(Error::MalformedScoreRow {
                line: line_no,
                reason: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let journal = normalize_journal(fields[0], aliases);
        if journal.is_empty() {
            return Err(Error::MalformedScoreRow {
                line: line_no,
                reason: "empty journal".to_string(),
            });
        }
        let year = parse_year_field(fields[1]).map_err(|reason| Error::MalformedScoreRow {
            line: line_no,
            reason,
        })?;
        let eigenfactor = parse_optional_f64(fields[2], "eigenfactor", line_no)?;
        let alpha = parse_optional_f64(fields[3], "alpha", line_no)?;
        let article_influence = parse_optional_f64(fields[4], "article_influence", line_no)?;
        rows.push(JournalYearScore::new(
            &journal,
            year,
            eigenfactor,
            alpha,
            article_influence,
        )?);
    }
    Ok(rows)
}

fn parse_optional_f64(field: &str, name: &str, line: u64) -> Result<Option<f64>> {
    let trimmed = field.trim();
    if trimmed.is_empty() {
        return Ok(None);
    }
    trimmed
        .parse::<f64>()
        .map(Some)
        .map_err(|_| Error::MalformedScoreRow {
            line,
            reason: format!("invalid {name}: {trimmed:?}"),
        })
}

/// Journals cited by at least one event but lacking a score row for that
/// event's citation year.
pub fn unmatched_journals(
    events: &[CitationEvent],
    scores: &[JournalYearScore],
) -> BTreeSet<String> {
    let scored: BTreeSet<(&str, i32)> = scores
        .iter()
        .map(|row| (row.journal.as_str(), row.year))
        .collect();
    events
        .iter()
        .filter(|e| !scored.contains(&(e.citing_journal.as_str(), e.citation_year)))
        .map(|e| e.citing_journal.clone())
        .collect()
}

fn check_field(field: &str, delim: char) -> Result<&str> {
    if field.contains(delim) || field.contains('\n') {
        return Err(Error::DelimiterInField {
            field: field.to_string(),
        });
    }
    Ok(field)
}

fn fmt_optional(value: Option<f64>) -> String {
    match value {
        // `{}` is shortest round-trip notation, so re-parsing is exact.
        Some(v) => format!("{v}"),
        None => String::new(),
    }
}

/// Writes events in the interchange format, one row per event, in the
/// given order.
pub fn write_events<W: Write>(
    out: &mut W,
    events: &[CitationEvent],
    delimiter: u8,
) -> Result<()> {
    let delim = delimiter as char;
    let mut buf = String::new();
    buf.push_str(&EVENTS_HEADER.join(&delim.to_string()));
    buf.push('\n');
    for e in events {
        let row = [
            check_field(e.cited.as_str(), delim)?.to_string(),
            e.cited_pub_year.to_string(),
            check_field(e.citing_article.as_str(), delim)?.to_string(),
            check_field(&e.citing_journal, delim)?.to_string(),
            e.citation_year.to_string(),
        ];
        buf.push_str(&row.join(&delim.to_string()));
        buf.push('\n');
    }
    out.write_all(buf.as_bytes()).map_err(io_write_error)
}

/// Writes score rows in the interchange format, sorted by (journal, year).
pub fn write_scores<W: Write>(
    out: &mut W,
    rows: &[JournalYearScore],
    delimiter: u8,
) -> Result<()> {
    let delim = delimiter as char;
    let mut sorted: Vec<&JournalYearScore> = rows.iter().collect();
    sorted.sort_by(|a, b| (&a.journal, a.year).cmp(&(&b.journal, b.year)));
    let mut buf = String::new();
    buf.push_str(&SCORES_HEADER.join(&delim.to_string()));
    buf.push('\n');
    for row in sorted {
        let fields = [
            check_field(&row.journal, delim)?.to_string(),
            row.year.to_string(),
            fmt_optional(row.eigenfactor),
            fmt_optional(row.alpha),
            fmt_optional(row.article_influence),
        ];
        buf.push_str(&fields.join(&delim.to_string()));
        buf.push('\n');
    }
    out.write_all(buf.as_bytes()).map_err(io_write_error)
}

fn io_write_error(source: std::io::Error) -> Error {
    Error::FileUnwritable {
        path: "<writer>".into(),
        source,
    }
}
