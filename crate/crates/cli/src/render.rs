//! Output-file rendering. Machine tables carry reals in fixed six-decimal
//! notation; human report tables round to two decimals.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use wcite_core::analytics::{CorpusSummary, QuadrantLabel};
use wcite_core::corpus::{ArticleId, ArticleScore};
use wcite_core::crsm::{CrsmRow, DeltaDistribution};
use wcite_core::decay::DecayFit;
use wcite_core::{Error, Result};

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::FileUnwritable {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| Error::FileUnwritable {
            path: path.to_path_buf(),
            source,
        })
}

fn write_all(path: &Path, content: &str) -> Result<()> {
    let mut out = create(path)?;
    out.write_all(content.as_bytes())
        .map_err(|source| Error::FileUnwritable {
            path: path.to_path_buf(),
            source,
        })
}

/// Fixed two decimals, with negative zero flattened to "0.00".
pub fn fmt2(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Fixed six decimals, with negative zero flattened.
pub fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn write_summary(path: &Path, summary: &CorpusSummary, delimiter: u8) -> Result<()> {
    let d = delimiter as char;
    let content = format!(
        "total_articles{d}{}\n\
         cited_articles{d}{}\n\
         cited_ratio_pct{d}{}\n\
         total_citations{d}{}\n\
         mean_citations_per_cited_article{d}{}\n\
         citing_articles{d}{}\n\
         cited_per_citing{d}{}\n\
         citing_journals{d}{}\n",
        summary.total_articles,
        summary.cited_articles,
        fmt2(summary.cited_ratio * 100.0),
        summary.total_citations,
        fmt2(summary.mean_citations_per_cited_article),
        summary.citing_articles,
        fmt2(summary.cited_per_citing),
        summary.citing_journals,
    );
    write_all(path, &content)
}

pub fn write_decay_fit(path: &Path, fit: &DecayFit, delimiter: u8) -> Result<()> {
    let d = delimiter as char;
    let content = format!(
        "lambda{d}{}\nr_squared{d}{}\nstart_age{d}{}\npoints_used{d}{}\n",
        fmt6(fit.lambda),
        fmt6(fit.r_squared),
        fit.start_age,
        fit.points_used,
    );
    write_all(path, &content)
}

const CRSM_HEADER: [&str; 8] = [
    "cited_id",
    "citation_count",
    "weighted_citation",
    "citation_rank",
    "weighted_rank",
    "factor",
    "intermedium",
    "delta",
];

/// Machine alignment table, six-decimal reals, sortable into either
/// delta-extreme report.
pub fn write_crsm(path: &Path, rows: &[CrsmRow], delimiter: u8) -> Result<()> {
    let d = delimiter as char;
    let mut content = CRSM_HEADER.join(&d.to_string());
    content.push('\n');
    for row in rows {
        content.push_str(&format!(
            "{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}\n",
            row.article,
            row.citation_count,
            fmt6(row.weighted_citation),
            row.citation_rank,
            row.weighted_rank,
            fmt6(row.factor),
            fmt6(row.intermedium),
            fmt6(row.delta),
        ));
    }
    write_all(path, &content)
}

/// Human report table, two-decimal reals.
pub fn write_top_table(path: &Path, rows: &[CrsmRow], delimiter: u8) -> Result<()> {
    let d = delimiter as char;
    let mut content = CRSM_HEADER.join(&d.to_string());
    content.push('\n');
    for row in rows {
        content.push_str(&format!(
            "{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}{d}{}\n",
            row.article,
            row.citation_count,
            fmt2(row.weighted_citation),
            row.citation_rank,
            row.weighted_rank,
            fmt2(row.factor),
            fmt2(row.intermedium),
            fmt2(row.delta),
        ));
    }
    write_all(path, &content)
}

pub fn write_delta_distribution(
    path: &Path,
    dist: &DeltaDistribution,
    delimiter: u8,
) -> Result<()> {
    let d = delimiter as char;
    let kurtosis = match dist.excess_kurtosis {
        Some(v) => fmt6(v),
        None => "NA".to_string(),
    };
    let mut content = format!(
        "mean{d}{}\nstd_dev{d}{}\nexcess_kurtosis{d}{}\nbin_width{d}{}\n",
        fmt6(dist.mean),
        fmt6(dist.std_dev),
        kurtosis,
        fmt6(dist.bin_width),
    );
    content.push_str(&format!("bin_center{d}count\n"));
    for (bin, count) in &dist.histogram {
        content.push_str(&format!(
            "{}{d}{count}\n",
            fmt6(*bin as f64 * dist.bin_width)
        ));
    }
    write_all(path, &content)
}

pub fn write_quadrants(
    path: &Path,
    scores: &[ArticleScore],
    labels: &BTreeMap<ArticleId, QuadrantLabel>,
    delimiter: u8,
) -> Result<()> {
    let d = delimiter as char;
    let mut content = format!("cited_id{d}citation_count{d}weighted_citation{d}quadrant\n");
    let mut sorted: Vec<&ArticleScore> = scores.iter().collect();
    sorted.sort_by(|a, b| a.article.cmp(&b.article));
    for score in sorted {
        let label = labels
            .get(&score.article)
            .expect("classification covers every scored article");
        content.push_str(&format!(
            "{}{d}{}{d}{}{d}{}\n",
            score.article,
            score.citation_count,
            fmt6(score.weighted_citation),
            label.as_str(),
        ));
    }
    write_all(path, &content)
}

pub fn write_qq(path: &Path, points: &[(f64, f64)], delimiter: u8) -> Result<()> {
    let d = delimiter as char;
    let mut content = format!("normal_quantile{d}delta\n");
    for (quantile, delta) in points {
        content.push_str(&format!("{}{d}{}\n", fmt6(*quantile), fmt6(*delta)));
    }
    write_all(path, &content)
}

pub fn write_regression(
    path: &Path,
    r_squared: Option<f64>,
    n_points: usize,
    delimiter: u8,
) -> Result<()> {
    let d = delimiter as char;
    let value = match r_squared {
        Some(v) => fmt6(v),
        None => "NA".to_string(),
    };
    let content = format!("r_squared_count_vs_weighted{d}{value}\nn_points{d}{n_points}\n");
    write_all(path, &content)
}
