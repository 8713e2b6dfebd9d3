//! Annotator agreement over Likert ratings: means and spread, pairwise exact
//! agreement, Cohen's kappa and Krippendorff's alpha.

mod matrix;
mod report;
mod stats;

use thiserror::Error;

pub use matrix::{load_ratings, read_ratings, Item, RatingsMatrix, MAX_SCORE, MIN_SCORE};
pub use report::{build_report, render_report, AgreementOptions, AgreementReport, AnnotatorMean, HeuristicStats};
pub use stats::{
    annotator_mean, cohen_kappa, cohen_kappa_pairwise, krippendorff_alpha, krippendorff_alpha_units, mean_sd,
    percent_agreement, Alpha, AlphaMetric, KappaTable, KappaWeighting, PairKappa, SdKind,
};

#[derive(Debug, Error)]
pub enum AgreementError {
    #[error("{0}")]
    Io(String),
    #[error("ratings CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("expected header item_id,heuristic,annotator,score, found {0:?}")]
    BadHeader(String),
    #[error("row {row}: score {value:?} is not an integer in 1..5")]
    BadScore { row: usize, value: String },
    #[error("item {item} scored twice by {annotator}")]
    DuplicateCell { item: String, annotator: String },
    #[error("item {item} listed under both {first} and {second}")]
    HeuristicMismatch { item: String, first: String, second: String },
    #[error("{0}")]
    Shape(String),
    #[error("no scores for {0}")]
    NoData(String),
    #[error("no two annotators share items of {0}")]
    NoOverlap(String),
    #[error("fewer than two pairable values for {0}")]
    NotPairable(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[(&str, &str, &[Option<u8>])], annotators: &[&str]) -> RatingsMatrix {
        let rows =
            rows.iter().map(|(id, h, s)| (Item { id: id.to_string(), heuristic: h.to_string() }, s.to_vec())).collect();
        RatingsMatrix::from_rows(annotators, rows).unwrap()
    }

    #[test]
    fn csv_loading() {
        let m = read_ratings("item_id,heuristic,annotator,score\nt1,FactualImpact,A1,4\n".as_bytes()).unwrap();
        assert_eq!((m.items().len(), m.annotators().len()), (1, 1));
        let dup = read_ratings("item_id,heuristic,annotator,score\nt1,H,A,4\nt1,H,A,5\n".as_bytes());
        assert!(matches!(dup, Err(AgreementError::DuplicateCell { .. })));
        let bad = read_ratings("item_id,heuristic,annotator,score\nt1,H,A,6\n".as_bytes());
        assert!(matches!(bad, Err(AgreementError::BadScore { row: 2, .. })));
        let missing = read_ratings("item_id,heuristic,annotator,score\nt1,H,A,\nt1,H,B,3\n".as_bytes()).unwrap();
        assert_eq!(missing.row(0), &[None, Some(3)]);
        assert!(matches!(read_ratings("a,b\n".as_bytes()), Err(AgreementError::BadHeader(_))));
    }

    #[test]
    fn mean_and_sd_by_hand() {
        let m = matrix(&[("t1", "H", &[Some(1), Some(5)])], &["A", "B"]);
        assert_eq!(mean_sd(&m, "H", SdKind::Population).unwrap(), (3.0, 2.0));
        let (_, sample) = mean_sd(&m, "H", SdKind::Sample).unwrap();
        assert!((sample - 8f64.sqrt()).abs() < 1e-12);
        let flat = matrix(&[("t1", "H", &[Some(4), Some(4)]), ("t2", "H", &[Some(4), None])], &["A", "B"]);
        assert_eq!(mean_sd(&flat, "H", SdKind::Population).unwrap(), (4.0, 0.0));
        assert!(matches!(mean_sd(&flat, "X", SdKind::Population), Err(AgreementError::NoData(_))));
    }

    #[test]
    fn perfect_agreement() {
        let m = matrix(
            &[("t1", "H", &[Some(2), Some(2), Some(2)]), ("t2", "H", &[Some(5), Some(5), Some(5)])],
            &["A", "B", "C"],
        );
        assert_eq!(percent_agreement(&m, "H").unwrap(), 1.0);
        let k = cohen_kappa_pairwise(&m, "H", KappaWeighting::Unweighted).unwrap();
        assert_eq!(k.pairs.len(), 3);
        assert!(k.pairs.iter().all(|p| p.kappa == Some(1.0)));
        let a = krippendorff_alpha(&m, "H", AlphaMetric::Ordinal).unwrap();
        assert_eq!(a.alpha, 1.0);
        assert!(!a.degenerate);
    }

    #[test]
    fn total_disagreement() {
        let m = matrix(&[("t1", "H", &[Some(1), Some(2)]), ("t2", "H", &[Some(3), Some(4)])], &["A", "B"]);
        assert_eq!(percent_agreement(&m, "H").unwrap(), 0.0);
    }

    #[test]
    fn chance_level_kappa() {
        // both raters use 1 and 2 half the time, agreeing on exactly half the items
        let pairs = [(1, 1), (1, 2), (2, 1), (2, 2)];
        assert!(cohen_kappa(&pairs, KappaWeighting::Unweighted).unwrap().abs() < 1e-12);
    }

    #[test]
    fn degenerate_cases() {
        let m = matrix(&[("t1", "H", &[Some(3), Some(3)]), ("t2", "H", &[Some(3), Some(3)])], &["A", "B"]);
        let k = cohen_kappa_pairwise(&m, "H", KappaWeighting::Unweighted).unwrap();
        assert_eq!(k.pairs[0].kappa, None);
        assert_eq!(k.mean, None);
        let a = krippendorff_alpha(&m, "H", AlphaMetric::Ordinal).unwrap();
        assert!(a.degenerate);
        assert_eq!(a.alpha, 1.0);
        let lonely = matrix(&[("t1", "H", &[Some(3), None])], &["A", "B"]);
        assert!(matches!(krippendorff_alpha(&lonely, "H", AlphaMetric::Ordinal), Err(AgreementError::NotPairable(_))));
        assert!(matches!(percent_agreement(&lonely, "H"), Err(AgreementError::NoOverlap(_))));
    }

    #[test]
    fn single_unit_extremes() {
        let a = krippendorff_alpha_units(&[vec![1, 5]], AlphaMetric::Ordinal).unwrap();
        // D_o = 1 and D_e = 1 by direct computation on the two-value unit
        assert!(a.alpha.abs() < 1e-12);
    }

    #[test]
    fn report_orders_by_registry() {
        let m = matrix(
            &[("t1", "Potential Non-events", &[Some(2), Some(3)]), ("t2", "Factual Impact", &[Some(5), Some(5)])],
            &["A", "B"],
        );
        let report = build_report(&m, AgreementOptions::default());
        assert_eq!(report.heuristics[0].heuristic, "Factual Impact");
        assert_eq!(report.annotator_means.len(), 4);
        let text = render_report(&report);
        assert!(text.contains("Potential Non-events"));
    }
}
