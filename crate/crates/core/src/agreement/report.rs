use serde::Serialize;

use super::stats::{
    annotator_mean, cohen_kappa_pairwise, krippendorff_alpha, mean_sd, percent_agreement, AlphaMetric, KappaWeighting,
    PairKappa, SdKind,
};
use super::RatingsMatrix;
use crate::enrichment::Heuristic;
use crate::validation::render_table;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AgreementOptions {
    pub sd: SdKind,
    pub kappa: KappaWeighting,
    pub alpha: AlphaMetric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeuristicStats {
    pub heuristic: String,
    pub items: usize,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    pub percent_agreement: Option<f64>,
    pub mean_kappa: Option<f64>,
    pub kappa_pairs: Vec<PairKappa>,
    pub alpha: Option<f64>,
    pub alpha_degenerate: bool,
    /// Statistics that could not be computed, with the reason.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnotatorMean {
    pub annotator: String,
    pub heuristic: String,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub options: AgreementOptions,
    pub heuristics: Vec<HeuristicStats>,
    pub annotator_means: Vec<AnnotatorMean>,
}

/// Heuristics in registry order; names outside the registry follow in order of
/// first appearance.
fn ordered_heuristics(matrix: &RatingsMatrix) -> Vec<&str> {
    let mut names = matrix.heuristics();
    names.sort_by_key(|name| Heuristic::lookup(name).map_or(usize::MAX, Heuristic::index));
    names
}

pub fn build_report(matrix: &RatingsMatrix, options: AgreementOptions) -> AgreementReport {
    let mut heuristics = Vec::new();
    let mut annotator_means = Vec::new();
    for name in ordered_heuristics(matrix) {
        let mut notes = Vec::new();
        let mut note = |e: super::AgreementError| notes.push(e.to_string());
        let (mean, sd) = match mean_sd(matrix, name, options.sd) {
            Ok((m, s)) => (Some(m), Some(s)),
            Err(e) => {
                note(e);
                (None, None)
            }
        };
        let percent = percent_agreement(matrix, name).map_err(&mut note).ok();
        let kappa = cohen_kappa_pairwise(matrix, name, options.kappa).map_err(&mut note).ok();
        let alpha = krippendorff_alpha(matrix, name, options.alpha).map_err(&mut note).ok();
        heuristics.push(HeuristicStats {
            heuristic: name.to_string(),
            items: matrix.items_of(name).len(),
            mean,
            sd,
            percent_agreement: percent,
            mean_kappa: kappa.as_ref().and_then(|k| k.mean),
            kappa_pairs: kappa.map(|k| k.pairs).unwrap_or_default(),
            alpha: alpha.map(|a| a.alpha),
            alpha_degenerate: alpha.is_some_and(|a| a.degenerate),
            notes,
        });
        for (a, annotator) in matrix.annotators().iter().enumerate() {
            if let Some(mean) = annotator_mean(matrix, name, a) {
                annotator_means.push(AnnotatorMean { annotator: annotator.clone(), heuristic: name.to_string(), mean });
            }
        }
    }
    AgreementReport { options, heuristics, annotator_means }
}

fn cell(value: Option<f64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

/// Text rendering: ratings (mean, SD), agreement measures, then per-annotator means.
pub fn render_report(report: &AgreementReport) -> String {
    let title = |name: &str| Heuristic::lookup(name).map_or(name.to_string(), |h| h.title().to_string());
    let ratings: Vec<Vec<String>> = report
        .heuristics
        .iter()
        .map(|h| vec![title(&h.heuristic), h.items.to_string(), cell(h.mean), cell(h.sd)])
        .collect();
    let agreement: Vec<Vec<String>> = report
        .heuristics
        .iter()
        .map(|h| {
            let alpha = match (h.alpha, h.alpha_degenerate) {
                (Some(a), true) => format!("{a:.2}*"),
                (a, _) => cell(a),
            };
            vec![title(&h.heuristic), cell(h.percent_agreement), cell(h.mean_kappa), alpha]
        })
        .collect();

    let annotators: Vec<&str> = {
        let mut seen: Vec<&str> = Vec::new();
        for m in &report.annotator_means {
            if !seen.contains(&m.annotator.as_str()) {
                seen.push(&m.annotator);
            }
        }
        seen
    };
    let mut by_annotator_header = vec!["Heuristic"];
    by_annotator_header.extend(annotators.iter().copied());
    let by_annotator: Vec<Vec<String>> = report
        .heuristics
        .iter()
        .map(|h| {
            let mut row = vec![title(&h.heuristic)];
            row.extend(annotators.iter().map(|a| {
                cell(
                    report
                        .annotator_means
                        .iter()
                        .find(|m| m.heuristic == h.heuristic && m.annotator == *a)
                        .map(|m| m.mean),
                )
            }));
            row
        })
        .collect();

    let mut out = String::from("Mean ratings\n");
    out.push_str(&render_table(&["Heuristic", "Items", "Mean", "SD"], &ratings));
    out.push_str("\nAgreement\n");
    out.push_str(&render_table(&["Heuristic", "Agreement", "Kappa", "Alpha"], &agreement));
    if report.heuristics.iter().any(|h| h.alpha_degenerate) {
        out.push_str("* every score identical; alpha reported as 1\n");
    }
    out.push_str("\nMean scores by annotator\n");
    out.push_str(&render_table(&by_annotator_header, &by_annotator));
    out
}
