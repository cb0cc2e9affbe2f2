//! Citation prestige analytics.
//!
//! Raw citation counts measure an article's popularity: every citation
//! counts as one. This crate also computes a prestige score, the weighted
//! citation, where each citing event is weighted by the Article Influence
//! of the citing journal in the citation year and by an exponential decay
//! in the citation age. The two rankings are then compared positionally,
//! giving each article a variance that says how far its popularity and
//! prestige diverge.
//!
//! Module map:
//!
//! - [`corpus`] — citation events, journal score tables, the corpus type;
//! - [`ingest`] — delimited-file parsing, journal alias normalization;
//! - [`decay`] — citation-age weight and decay-constant fitting;
//! - [`scoring`] — weighted citation scores and author aggregates;
//! - [`crsm`] — citation ranking similarity measure and delta statistics;
//! - [`analytics`] — corpus summaries, regression, quadrants, top-N tables;
//! - [`synthgen`] — seeded synthetic corpora with ground-truth scores.

pub mod analytics;
pub mod corpus;
pub mod crsm;
pub mod decay;
pub mod error;
pub mod ingest;
pub mod scoring;
pub mod synthgen;

mod stats;

pub use error::{Error, Result};
