//! Citation ranking similarity measure: aligns the discrete citation-count
//! ranking with the continuous weighted-citation ranking and assigns each
//! article a variance `delta = citation count - intermedium`.
//!
//! The alignment walks both rankings positionally. Citation counts are
//! competition-ranked: a tie group occupying positions `p..p+k-1` shares
//! rank `p`. Weighted scores get strict positions `1..N` (ties broken by
//! ascending article id). Each weighted-list position `q` receives a factor
//! from the count-side tie group covering position `q`:
//!
//! - singleton group: `F = count at position q / weighted value at q`;
//! - group of size k >= 2: `F = k * group count / sum of the group
//!   members' own weighted scores`.
//!
//! The intermedium at position `q` is the weighted value at `q` times that
//! factor, and an article's delta subtracts the intermedium at its own
//! weighted position from its citation count. An article whose citation
//! rank equals its weighted position (and whose count is untied) therefore
//! lands exactly at delta 0.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{ArticleId, ArticleScore};
use crate::error::{Error, Result};

/// Articles ordered descending by one metric, with competition-ranked tie
/// groups over exactly equal values.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedTable {
    rows: Vec<(ArticleId, f64)>,
    groups: Vec<TieGroup>,
    rank_of: BTreeMap<ArticleId, usize>,
}

/// A run of consecutive positions sharing one value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TieGroup {
    /// 0-based index of the first row of the group.
    pub start: usize,
    pub len: usize,
    pub value: f64,
    /// 1-based competition rank (`start + 1`).
    pub rank: usize,
}

impl RankedTable {
    /// Rows in descending value order.
    pub fn rows(&self) -> &[(ArticleId, f64)] {
        &self.rows
    }

    pub fn groups(&self) -> &[TieGroup] {
        &self.groups
    }

    /// 1-based competition rank of an article.
    pub fn rank_of(&self, article: &ArticleId) -> Option<usize> {
        self.rank_of.get(article).copied()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Sorts `(article, value)` pairs descending by value and groups exactly
/// equal values into competition-ranked tie groups. Within a group, rows
/// follow the supplied tiebreak; the groups themselves do not depend on it.
pub fn rank_descending<F>(values: Vec<(ArticleId, f64)>, tiebreak: F) -> Result<RankedTable>
where
    F: Fn(&ArticleId, &ArticleId) -> Ordering,
{
    let mut seen = BTreeSet::new();
    for (article, _) in &values {
        if !seen.insert(article.clone()) {
            return Err(Error::DuplicateArticle(article.to_string()));
        }
    }
    let mut rows = values;
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| tiebreak(&a.0, &b.0)));

    let mut groups = Vec::new();
    let mut rank_of = BTreeMap::new();
    let mut start = 0;
    while start < rows.len() {
        let value = rows[start].1;
        let mut end = start + 1;
        while end < rows.len() && rows[end].1 == value {
            end += 1;
        }
        let group = TieGroup {
            start,
            len: end - start,
            value,
            rank: start + 1,
        };
        for row in &rows[start..end] {
            rank_of.insert(row.0.clone(), group.rank);
        }
        groups.push(group);
        start = end;
    }
    Ok(RankedTable {
        rows,
        groups,
        rank_of,
    })
}

/// One article's alignment record.
#[derive(Debug, Clone, PartialEq)]
pub struct CrsmRow {
    pub article: ArticleId,
    pub citation_count: u32,
    pub weighted_citation: f64,
    /// Competition rank in the citation-count ordering.
    pub citation_rank: usize,
    /// Strict position in the weighted-citation ordering.
    pub weighted_rank: usize,
    pub factor: f64,
    pub intermedium: f64,
    /// `citation_count - intermedium`.
    pub delta: f64,
}

/// A citation-count tie group whose factor denominator was zero (all-zero
/// prestige). Rows at the affected positions get factor and intermedium 0,
/// so their delta equals the citation count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroWeightGroup {
    pub citation_rank: usize,
    pub citation_count: u32,
    pub size: usize,
}

/// Full alignment result: one row per article, ordered by weighted
/// position, plus any zero-denominator groups encountered.
#[derive(Debug, Clone, PartialEq)]
pub struct CrsmOutput {
    pub rows: Vec<CrsmRow>,
    pub zero_weight_groups: Vec<ZeroWeightGroup>,
}

/// Computes the citation ranking similarity measure over a score table.
pub fn crsm(scores: &[ArticleScore]) -> Result<CrsmOutput> {
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    let by_article: BTreeMap<&ArticleId, &ArticleScore> =
        scores.iter().map(|s| (&s.article, s)).collect();
    if by_article.len() != scores.len() {
        for score in scores {
            if !std::ptr::eq(*by_article.get(&score.article).unwrap(), score) {
                return Err(Error::DuplicateArticle(score.article.to_string()));
            }
        }
    }

    let count_table = rank_descending(
        scores
            .iter()
            .map(|s| (s.article.clone(), f64::from(s.citation_count)))
            .collect(),
        ArticleId::cmp,
    )?;

    // Strict weighted positions 1..N, ties broken by ascending article id.
    let mut weighted_order: Vec<(ArticleId, f64)> = scores
        .iter()
        .map(|s| (s.article.clone(), s.weighted_citation))
        .collect();
    weighted_order.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    let n = weighted_order.len();

    // Factor per weighted position, from the count-side group structure.
    let mut factors = vec![0.0f64; n];
    let mut zero_weight_groups = Vec::new();
    for group in count_table.groups() {
        let span_end = group.start + group.len;
        if span_end > n {
            return Err(Error::Internal(
                "count tie group spans past the weighted table",
            ));
        }
        let group_count = group.value;
        let denominator = if group.len == 1 {
            weighted_order[group.start].1
        } else {
            count_table.rows()[group.start..span_end]
                .iter()
                .map(|(article, _)| by_article[article].weighted_citation)
                .sum()
        };
        if denominator == 0.0 {
            zero_weight_groups.push(ZeroWeightGroup {
                citation_rank: group.rank,
                citation_count: group_count as u32,
                size: group.len,
            });
            continue; // factors stay 0; deltas fall back to the raw count
        }
        let factor = (group.len as f64 * group_count) / denominator;
        for slot in &mut factors[group.start..span_end] {
            *slot = factor;
        }
    }

    let rows = weighted_order
        .iter()
        .enumerate()
        .map(|(idx, (article, weighted))| {
            let score = by_article[article];
            let intermedium = weighted * factors[idx];
            CrsmRow {
                article: article.clone(),
                citation_count: score.citation_count,
                weighted_citation: *weighted,
                citation_rank: count_table
                    .rank_of(article)
                    .expect("every article is count-ranked"),
                weighted_rank: idx + 1,
                factor: factors[idx],
                intermedium,
                delta: f64::from(score.citation_count) - intermedium,
            }
        })
        .collect();

    Ok(CrsmOutput {
        rows,
        zero_weight_groups,
    })
}

/// Summary moments of the delta values plus a histogram of bins centered
/// at integer multiples of `bin_width`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaDistribution {
    pub mean: f64,
    /// Population standard deviation.
    pub std_dev: f64,
    /// Population excess kurtosis; `None` when the variance is zero.
    pub excess_kurtosis: Option<f64>,
    pub bin_width: f64,
    /// (bin index, count); the bin center is `index * bin_width`.
    pub histogram: Vec<(i64, u64)>,
}

pub fn delta_distribution(rows: &[CrsmRow], bin_width: f64) -> Result<DeltaDistribution> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bin_width <= 0.0 || !bin_width.is_finite() {
        return Err(Error::InvalidBinWidth(bin_width));
    }
    let n = rows.len() as f64;
    let mean = rows.iter().map(|r| r.delta).sum::<f64>() / n;
    let mut m2 = 0.0;
    let mut m4 = 0.0;
    for row in rows {
        let d = row.delta - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m4 /= n;
    let std_dev = m2.sqrt();
    let excess_kurtosis = if m2 > 0.0 { Some(m4 / (m2 * m2) - 3.0) } else { None };

    let mut bins: BTreeMap<i64, u64> = BTreeMap::new();
    for row in rows {
        let bin = (row.delta / bin_width).round() as i64;
        *bins.entry(bin).or_insert(0) += 1;
    }
    Ok(DeltaDistribution {
        mean,
        std_dev,
        excess_kurtosis,
        bin_width,
        histogram: bins.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(raw: &str) -> ArticleId {
        ArticleId::new(raw).unwrap()
    }

    fn score(article: &str, count: u32, weighted: f64) -> ArticleScore {
        ArticleScore {
            article: id(article),
            citation_count: count,
            weighted_citation: weighted,
            missing_journal_events: 0,
        }
    }

    /// Top-20-by-citation-count score list. Three weighted values are not
    /// published anywhere, so placeholders consistent with the published
    /// weighted ranks are used; the asserted rows do not depend on them.
    fn top20_fixture() -> Vec<ArticleScore> {
        vec![
            score("SPINK A, 2001, JASIST, V52, P226", 152, 76.71),
            score("WHITE HD, 1998, JASIS, V49, P327", 140, 56.90),
            score("SMALL H, 1999, JASIS, V50, P799", 91, 36.40),
            score("CHEN HC, 1998, JASIS, V49, P582", 90, 34.24),
            score("JANSEN BJ, 2001, JASIST, V52, P235", 88, 41.27),
            score("FIDEL R, 1999, JASIS, V50, P24", 84, 36.81),
            score("KLING R, 2000, JASIS, V51, P1306", 84, 34.26),
            score("BILAL D, 2000, JASIS, V51, P646", 73, 28.55),
            score("THELWALL M, 2001, JASIST, V52, P1157", 66, 25.01),
            score("SCHACTER J, 1998, JASIS, V49, P840", 62, 23.28),
            score("CRONIN B, 1998, JASIS, V49, P1319", 58, 23.02),
            score("BATES MJ, 1998, JASIS, V49, P1185", 57, 17.55),
            score("LAZONDER AW, 2000, JASIS, V51, P576", 55, 24.77),
            score("HIRSH SG, 1999, JASIS, V50, P1265", 52, 19.03),
            score("HAYTHORNTHWAITE C, 1998, JASIS, V49, P1101", 47, 29.93),
            score("BILAL D, 2001, JASIST, V52, P118", 45, 17.37),
            score("WANG PL, 1998, JASIS, V49, P115", 45, 15.00),
            score("AHLGREN P, 2003, JASIST, V54, P550", 44, 28.32),
            score("HARTER SP, 1998, JASIS, V49, P507", 44, 21.50),
            score("PALMQUIST RA, 2000, JASIS, V51, P558", 44, 21.00),
        ]
    }

    fn delta_of(output: &CrsmOutput, article: &str) -> f64 {
        output
            .rows
            .iter()
            .find(|r| r.article == id(article))
            .unwrap()
            .delta
    }

    fn round2(v: f64) -> f64 {
        (v * 100.0).round() / 100.0
    }

    #[test]
    fn rank_descending_competition_ranks() {
        let table = rank_descending(
            vec![(id("A"), 5.0), (id("B"), 5.0), (id("C"), 3.0)],
            ArticleId::cmp,
        )
        .unwrap();
        assert_eq!(table.rank_of(&id("A")), Some(1));
        assert_eq!(table.rank_of(&id("B")), Some(1));
        assert_eq!(table.rank_of(&id("C")), Some(3));
        assert_eq!(table.groups().len(), 2);
        assert_eq!(table.groups()[0].len, 2);
    }

    #[test]
    fn rank_descending_single_row() {
        let table = rank_descending(vec![(id("A"), 76.71)], ArticleId::cmp).unwrap();
        assert_eq!(table.rank_of(&id("A")), Some(1));
    }

    #[test]
    fn rank_descending_distinct_values_are_a_permutation() {
        let values: Vec<(ArticleId, f64)> = (0..10)
            .map(|i| (id(&format!("A{i}")), f64::from((i * 7) % 10)))
            .collect();
        let table = rank_descending(values, ArticleId::cmp).unwrap();
        let mut ranks: Vec<usize> = (0..10)
            .map(|i| table.rank_of(&id(&format!("A{i}"))).unwrap())
            .collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn rank_descending_rejects_duplicates() {
        assert!(matches!(
            rank_descending(vec![(id("A"), 1.0), (id("A"), 2.0)], ArticleId::cmp),
            Err(Error::DuplicateArticle(_))
        ));
    }

    #[test]
    fn worked_deltas_on_top20_fixture() {
        let output = crsm(&top20_fixture()).unwrap();
        // Top article on both metrics lands exactly at zero.
        assert_eq!(round2(delta_of(&output, "SPINK A, 2001, JASIST, V52, P226")), 0.00);
        // Citation rank 3 vs weighted position 5: intermedium is the count
        // at position 5, so the delta is 91 - 88.
        assert_eq!(round2(delta_of(&output, "SMALL H, 1999, JASIS, V50, P799")), 3.00);
        // Two-way count tie at rank 6: the shared factor divides twice the
        // tied count by the members' weighted sum 36.81 + 34.26.
        assert_eq!(round2(delta_of(&output, "KLING R, 2000, JASIS, V51, P1306")), 3.01);
    }

    #[test]
    fn top20_fixture_ranks() {
        let output = crsm(&top20_fixture()).unwrap();
        let small = output
            .rows
            .iter()
            .find(|r| r.article == id("SMALL H, 1999, JASIS, V50, P799"))
            .unwrap();
        assert_eq!(small.citation_rank, 3);
        assert_eq!(small.weighted_rank, 5);
        let kling = output
            .rows
            .iter()
            .find(|r| r.article == id("KLING R, 2000, JASIS, V51, P1306"))
            .unwrap();
        assert_eq!(kling.citation_rank, 6);
        assert_eq!(kling.weighted_rank, 6);
    }

    #[test]
    fn single_article_has_zero_delta() {
        let output = crsm(&[score("ONLY", 7, 3.5)]).unwrap();
        assert_eq!(output.rows.len(), 1);
        assert!(output.rows[0].delta.abs() < 1e-12);
    }

    #[test]
    fn empty_input_errors() {
        assert!(matches!(crsm(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn zero_weight_group_falls_back_to_count() {
        let output = crsm(&[
            score("A", 5, 3.0),
            score("B", 2, 0.0),
            score("C", 2, 0.0),
        ])
        .unwrap();
        assert_eq!(output.zero_weight_groups.len(), 1);
        assert_eq!(output.zero_weight_groups[0].citation_rank, 2);
        assert_eq!(output.zero_weight_groups[0].size, 2);
        for name in ["B", "C"] {
            let row = output.rows.iter().find(|r| r.article == id(name)).unwrap();
            assert_eq!(row.delta, 2.0);
            assert_eq!(row.factor, 0.0);
            assert_eq!(row.intermedium, 0.0);
        }
        // The untied article is unaffected.
        assert!(delta_of(&output, "A").abs() < 1e-12);
    }

    #[test]
    fn output_is_permutation_invariant() {
        let mut scores = top20_fixture();
        let forward = crsm(&scores).unwrap();
        scores.reverse();
        scores.swap(0, 7);
        let shuffled = crsm(&scores).unwrap();
        assert_eq!(forward, shuffled);
    }

    #[test]
    fn deltas_invariant_under_weighted_scaling() {
        let base = crsm(&top20_fixture()).unwrap();
        for c in [0.5, 2.0, 10.0] {
            let scaled: Vec<ArticleScore> = top20_fixture()
                .into_iter()
                .map(|mut s| {
                    s.weighted_citation *= c;
                    s
                })
                .collect();
            let output = crsm(&scaled).unwrap();
            for (a, b) in base.rows.iter().zip(output.rows.iter()) {
                assert_eq!(a.article, b.article);
                assert!(
                    (a.delta - b.delta).abs() <= 1e-9,
                    "scale {c}: {} vs {}",
                    a.delta,
                    b.delta
                );
            }
        }
    }

    #[test]
    fn equal_weighted_values_inside_a_group_vanish() {
        // A three-way count tie whose members also share one weighted
        // value and occupy their own span: every delta in the group is 0.
        let output = crsm(&[
            score("TOP", 9, 8.0),
            score("TIE A", 4, 2.0),
            score("TIE B", 4, 2.0),
            score("TIE C", 4, 2.0),
        ])
        .unwrap();
        for name in ["TIE A", "TIE B", "TIE C"] {
            assert!(delta_of(&output, name).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_match_singletons_are_zero() {
        let output = crsm(&[
            score("A", 10, 5.0),
            score("B", 8, 4.0),
            score("C", 6, 3.0),
        ])
        .unwrap();
        for row in &output.rows {
            assert_eq!(row.citation_rank, row.weighted_rank);
            assert!(row.delta.abs() < 1e-12);
        }
    }

    #[test]
    fn delta_distribution_degenerate() {
        let rows = crsm(&[score("A", 3, 3.0)]).unwrap().rows;
        let dist = delta_distribution(&rows, 1.0).unwrap();
        assert_eq!(dist.mean, 0.0);
        assert_eq!(dist.std_dev, 0.0);
        assert!(dist.excess_kurtosis.is_none());
    }

    #[test]
    fn delta_distribution_hand_moments() {
        // Deltas -1, 0, 1: mean 0, population std sqrt(2/3), excess
        // kurtosis (2/3)/(4/9) - 3 = -3/2.
        let mut rows = crsm(&[
            score("A", 3, 3.0),
            score("B", 2, 2.0),
            score("C", 1, 1.0),
        ])
        .unwrap()
        .rows;
        rows[0].delta = -1.0;
        rows[1].delta = 0.0;
        rows[2].delta = 1.0;
        let dist = delta_distribution(&rows, 1.0).unwrap();
        assert!(dist.mean.abs() < 1e-12);
        assert!((dist.std_dev - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((dist.excess_kurtosis.unwrap() + 1.5).abs() < 1e-12);
        assert_eq!(dist.histogram, vec![(-1, 1), (0, 1), (1, 1)]);
    }

    #[test]
    fn outliers_give_positive_excess_kurtosis() {
        let mut rows = Vec::new();
        for i in 0..40 {
            rows.push(CrsmRow {
                article: id(&format!("A{i}")),
                citation_count: 1,
                weighted_citation: 1.0,
                citation_rank: 1,
                weighted_rank: i + 1,
                factor: 1.0,
                intermedium: 1.0,
                delta: 0.0,
            });
        }
        rows[0].delta = 12.0;
        rows[1].delta = -12.0;
        let dist = delta_distribution(&rows, 1.0).unwrap();
        assert!(dist.excess_kurtosis.unwrap() > 0.0);
    }
}
