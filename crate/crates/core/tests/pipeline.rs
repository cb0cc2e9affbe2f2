//! End-to-end library flow: parse -> corpus -> score -> align -> report,
//! plus the interchange round trip.

use wcite_core::analytics::{classify_quadrants, corpus_summary, Threshold};
use wcite_core::corpus::{ArticleId, Corpus};
use wcite_core::crsm::{crsm, delta_distribution};
use wcite_core::decay::DecayParams;
use wcite_core::ingest::{
    parse_events_str, parse_scores_str, unmatched_journals, write_events, write_scores,
    AliasTable,
};
use wcite_core::scoring::{score_all, MissingScorePolicy};

const EVENTS: &str = "\
cited_id\tcited_pub_year\tciting_id\tciting_journal\tcitation_year
WORKED A, 2005, JTEST, V1, P1\t2005\tCITE A1, 2005\tJ ALPHA\t2005
WORKED A, 2005, JTEST, V1, P1\t2005\tCITE B1, 2006\tJ BETA\t2006
WORKED A, 2005, JTEST, V1, P1\t2005\tCITE C1, 2007\tJ GAMMA\t2007
SECOND B, 2004, JTEST, V2, P5\t2004\tCITE D1, 2005\tJ ALPHA\t2005
SECOND B, 2004, JTEST, V2, P5\t2004\tCITE E1, 2006\tOBSCURE REV\t2006
THIRD C, 2006, JTEST, V3, P9\t2006\tCITE F1, 2006\tj am soc inform sci\t2006
THIRD C, 2006, JTEST, V3, P9\t2006\tCITE G1, 2007\tJ BETA\t2007
";

const SCORES: &str = "\
journal\tyear\teigenfactor\talpha\tarticle_influence
J ALPHA\t2005\t\t\t1.0
J BETA\t2006\t\t\t1.0
J BETA\t2007\t\t\t0.5
J GAMMA\t2007\t\t\t1.0
JASIST\t2006\t0.02\t0.001\t
";

fn aliases() -> AliasTable {
    AliasTable::from_pairs([("J AM SOC INFORM SCI", "JASIST")]).unwrap()
}

#[test]
fn full_pipeline_over_a_hand_built_corpus() {
    let (events, report) = parse_events_str(EVENTS, &aliases(), b'\t').unwrap();
    assert_eq!(report.rows_read, 7);
    assert_eq!(report.rows_rejected, 0);
    let score_rows = parse_scores_str(SCORES, &aliases(), b'\t').unwrap();

    let unmatched = unmatched_journals(&events, &score_rows);
    assert_eq!(
        unmatched.into_iter().collect::<Vec<_>>(),
        vec!["OBSCURE REV"]
    );

    let corpus = Corpus::build(events, score_rows).unwrap();
    let scores = score_all(&corpus, DecayParams::default(), MissingScorePolicy::Zero);
    assert_eq!(scores.len(), 3);

    let by_id = |needle: &str| {
        scores
            .iter()
            .find(|s| s.article == ArticleId::new(needle).unwrap())
            .unwrap()
    };
    let worked = by_id("WORKED A, 2005, JTEST, V1, P1");
    let expected = 1.0 + (-0.117f64).exp() + (-0.234f64).exp();
    assert!((worked.weighted_citation - expected).abs() < 1e-12);
    assert_eq!(worked.missing_journal_events, 0);

    let second = by_id("SECOND B, 2004, JTEST, V2, P5");
    assert!((second.weighted_citation - (-0.117f64).exp()).abs() < 1e-12);
    assert_eq!(second.missing_journal_events, 1);

    // Aliased journal resolves to the JASIST score row computed from the
    // eigenfactor/alpha pair (AI 0.2).
    let third = by_id("THIRD C, 2006, JTEST, V3, P9");
    let third_expected = 0.2 + 0.5 * (-0.117f64).exp();
    assert!((third.weighted_citation - third_expected).abs() < 1e-12);

    let output = crsm(&scores).unwrap();
    assert_eq!(output.rows.len(), 3);
    let dist = delta_distribution(&output.rows, 1.0).unwrap();
    assert_eq!(dist.histogram.iter().map(|(_, c)| c).sum::<u64>(), 3);

    let labels = classify_quadrants(&scores, Threshold::Median, Threshold::Median).unwrap();
    assert_eq!(labels.len(), 3);

    let universe: Vec<ArticleId> = corpus.articles().map(|(a, _)| a.clone()).collect();
    let summary = corpus_summary(&corpus, &universe).unwrap();
    assert_eq!(summary.cited_articles, 3);
    assert_eq!(summary.total_citations, 7);
    assert_eq!(summary.citing_articles, 7);
    assert_eq!(summary.citing_journals, 5);
}

#[test]
fn corpus_round_trips_through_the_interchange_format() {
    let (events, _) = parse_events_str(EVENTS, &aliases(), b'\t').unwrap();
    let score_rows = parse_scores_str(SCORES, &aliases(), b'\t').unwrap();
    let corpus = Corpus::build(events, score_rows).unwrap();

    let mut events_buf = Vec::new();
    write_events(&mut events_buf, corpus.events(), b'\t').unwrap();
    let rows: Vec<_> = corpus.score_rows().cloned().collect();
    let mut scores_buf = Vec::new();
    write_scores(&mut scores_buf, &rows, b'\t').unwrap();

    let (events2, report) = parse_events_str(
        std::str::from_utf8(&events_buf).unwrap(),
        &AliasTable::empty(),
        b'\t',
    )
    .unwrap();
    assert_eq!(report.rows_rejected, 0);
    let scores2 = parse_scores_str(
        std::str::from_utf8(&scores_buf).unwrap(),
        &AliasTable::empty(),
        b'\t',
    )
    .unwrap();
    let corpus2 = Corpus::build(events2, scores2).unwrap();
    assert_eq!(corpus, corpus2);
}
