use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
#[derive(Error, Debug)]
pub enum Error {
    // --- corpus model ---
    #[error("article identifier is empty after normalization")]
    EmptyArticleId,

    #[error("year {value} is not a 4-digit year")]
    InvalidYear { value: String },

    #[error("duplicate score row for journal {journal:?} in {year}")]
    DuplicateScoreRow { journal: String, year: i32 },

    #[error("article {article} appears with publication years {first} and {second}")]
    InconsistentPubYear {
        article: String,
        first: i32,
        second: i32,
    },

    // --- journal score rows ---
    #[error("score row for {journal} {year} has neither article_influence nor the eigenfactor/alpha pair")]
    MissingBothScoreForms { journal: String, year: i32 },

    #[error("score row for {journal} {year} has non-positive alpha")]
    NonPositiveAlpha { journal: String, year: i32 },

    #[error("score row for {journal} {year}: {field} must be non-negative")]
    NegativeScore {
        journal: String,
        year: i32,
        field: &'static str,
    },

    #[error("score row for {journal} {year}: article_influence disagrees with 0.01*eigenfactor/alpha")]
    InconsistentArticleInfluence { journal: String, year: i32 },

    // --- ingest ---
    #[error("cannot read {path}: {source}")]
    FileUnreadable {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    FileUnwritable {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("header mismatch: expected {expected:?}, found {found:?}")]
    HeaderMismatch { expected: String, found: String },

    #[error("malformed score row at line {line}: {reason}")]
    MalformedScoreRow { line: u64, reason: String },

    #[error("alias table maps {raw:?} to both {first:?} and {second:?}")]
    ConflictingAlias {
        raw: String,
        first: String,
        second: String,
    },

    #[error("alias table is not idempotent: {name:?} is a canonical name but maps to {target:?}")]
    AliasNotIdempotent { name: String, target: String },

    #[error("field {field:?} contains the output delimiter")]
    DelimiterInField { field: String },

    // --- decay ---
    #[error("lambda must be positive, got {value}")]
    NonPositiveLambda { value: f64 },

    #[error("decay fit needs at least two usable points, got {usable}")]
    InsufficientData { usable: usize },

    // --- scoring ---
    #[error("unknown article {0}")]
    UnknownArticle(String),

    // --- ranking / crsm ---
    #[error("duplicate article {0} in ranking input")]
    DuplicateArticle(String),

    #[error("input is empty")]
    EmptyInput,

    #[error("bin width must be positive, got {0}")]
    InvalidBinWidth(f64),

    // --- analytics ---
    #[error("x values are degenerate: regression needs at least two distinct x")]
    DegenerateX,

    #[error("cited article {0} is not in the supplied universe")]
    CitedArticleOutsideUniverse(String),

    #[error("invalid summary counts: {0}")]
    InvalidSummaryCounts(String),

    // --- synthgen ---
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("internal consistency violation: {0}")]
    Internal(&'static str),
}
