use serde::Serialize;

use super::{AgreementError, RatingsMatrix, MAX_SCORE, MIN_SCORE};

const CATEGORIES: usize = (MAX_SCORE - MIN_SCORE + 1) as usize;

fn category(score: u8) -> usize {
    (score - MIN_SCORE) as usize
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SdKind {
    #[default]
    Population,
    Sample,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KappaWeighting {
    #[default]
    Unweighted,
    Quadratic,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaMetric {
    Nominal,
    #[default]
    Ordinal,
    Interval,
}

fn present_scores(matrix: &RatingsMatrix, heuristic: &str) -> Vec<u8> {
    matrix.items_of(heuristic).into_iter().flat_map(|i| matrix.row(i).iter().flatten().copied()).collect()
}

/// Mean and standard deviation over every present score of the heuristic. A
/// sample SD over a single score is reported as 0.
pub fn mean_sd(matrix: &RatingsMatrix, heuristic: &str, kind: SdKind) -> Result<(f64, f64), AgreementError> {
    let scores = present_scores(matrix, heuristic);
    if scores.is_empty() {
        return Err(AgreementError::NoData(heuristic.to_string()));
    }
    let n = scores.len() as f64;
    let mean = scores.iter().map(|&s| f64::from(s)).sum::<f64>() / n;
    let ss: f64 = scores.iter().map(|&s| (f64::from(s) - mean).powi(2)).sum();
    let denom = match kind {
        SdKind::Population => n,
        SdKind::Sample if scores.len() > 1 => n - 1.0,
        SdKind::Sample => return Ok((mean, 0.0)),
    };
    Ok((mean, (ss / denom).sqrt()))
}

/// Share of exactly matching pairs over all items and annotator pairs that both
/// scored the item.
pub fn percent_agreement(matrix: &RatingsMatrix, heuristic: &str) -> Result<f64, AgreementError> {
    let (mut equal, mut total) = (0usize, 0usize);
    for i in matrix.items_of(heuristic) {
        let present: Vec<u8> = matrix.row(i).iter().flatten().copied().collect();
        for a in 0..present.len() {
            for b in a + 1..present.len() {
                total += 1;
                equal += usize::from(present[a] == present[b]);
            }
        }
    }
    if total == 0 {
        return Err(AgreementError::NoOverlap(heuristic.to_string()));
    }
    Ok(equal as f64 / total as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairKappa {
    pub first: String,
    pub second: String,
    pub shared_items: usize,
    /// `None` when expected agreement is total and kappa is undefined.
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaTable {
    pub pairs: Vec<PairKappa>,
    /// Mean over pairs with a defined kappa.
    pub mean: Option<f64>,
}

/// Cohen's kappa from paired scores over the five Likert categories.
pub fn cohen_kappa(pairs: &[(u8, u8)], weighting: KappaWeighting) -> Option<f64> {
    if pairs.is_empty() {
        return None;
    }
    let n = pairs.len() as f64;
    let mut observed = [[0.0f64; CATEGORIES]; CATEGORIES];
    for &(a, b) in pairs {
        observed[category(a)][category(b)] += 1.0 / n;
    }
    let row: Vec<f64> = (0..CATEGORIES).map(|i| observed[i].iter().sum()).collect();
    let col: Vec<f64> = (0..CATEGORIES).map(|j| (0..CATEGORIES).map(|i| observed[i][j]).sum()).collect();
    let weight = |i: usize, j: usize| match weighting {
        KappaWeighting::Unweighted => f64::from(u8::from(i == j)),
        KappaWeighting::Quadratic => {
            let d = i as f64 - j as f64;
            1.0 - d * d / ((CATEGORIES - 1) as f64).powi(2)
        }
    };
    let (mut po, mut pe) = (0.0, 0.0);
    for i in 0..CATEGORIES {
        for j in 0..CATEGORIES {
            po += weight(i, j) * observed[i][j];
            pe += weight(i, j) * row[i] * col[j];
        }
    }
    if (1.0 - pe).abs() < 1e-12 {
        return None;
    }
    Some((po - pe) / (1.0 - pe))
}

/// Kappa for every annotator pair sharing at least two items of the heuristic.
pub fn cohen_kappa_pairwise(
    matrix: &RatingsMatrix,
    heuristic: &str,
    weighting: KappaWeighting,
) -> Result<KappaTable, AgreementError> {
    let items = matrix.items_of(heuristic);
    let annotators = matrix.annotators();
    let mut pairs = Vec::new();
    for a in 0..annotators.len() {
        for b in a + 1..annotators.len() {
            let shared: Vec<(u8, u8)> =
                items.iter().filter_map(|&i| Some((matrix.score(i, a)?, matrix.score(i, b)?))).collect();
            if shared.len() < 2 {
                continue;
            }
            pairs.push(PairKappa {
                first: annotators[a].clone(),
                second: annotators[b].clone(),
                shared_items: shared.len(),
                kappa: cohen_kappa(&shared, weighting),
            });
        }
    }
    if pairs.is_empty() {
        return Err(AgreementError::NoOverlap(heuristic.to_string()));
    }
    let defined: Vec<f64> = pairs.iter().filter_map(|p| p.kappa).collect();
    let mean = (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64);
    Ok(KappaTable { pairs, mean })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha {
    pub alpha: f64,
    /// Expected disagreement was zero (a single category used throughout).
    pub degenerate: bool,
    /// Number of pairable values.
    pub pairable: usize,
}

/// Krippendorff's alpha over units given as lists of present values. Units with
/// fewer than two values are not pairable and are ignored.
pub fn krippendorff_alpha_units(units: &[Vec<u8>], metric: AlphaMetric) -> Option<Alpha> {
    let mut coincidence = [[0.0f64; CATEGORIES]; CATEGORIES];
    let mut pairable = 0;
    for unit in units.iter().filter(|u| u.len() >= 2) {
        pairable += unit.len();
        let w = 1.0 / (unit.len() - 1) as f64;
        for (x, &a) in unit.iter().enumerate() {
            for (y, &b) in unit.iter().enumerate() {
                if x != y {
                    coincidence[category(a)][category(b)] += w;
                }
            }
        }
    }
    if pairable < 2 {
        return None;
    }
    let marginal: Vec<f64> = coincidence.iter().map(|row| row.iter().sum()).collect();
    let n: f64 = marginal.iter().sum();
    let delta = |c: usize, k: usize| -> f64 {
        match metric {
            AlphaMetric::Nominal => f64::from(u8::from(c != k)),
            AlphaMetric::Interval => (c as f64 - k as f64).powi(2),
            AlphaMetric::Ordinal => {
                let (lo, hi) = (c.min(k), c.max(k));
                let between: f64 = marginal[lo..=hi].iter().sum();
                (between - (marginal[c] + marginal[k]) / 2.0).powi(2)
            }
        }
    };
    let (mut observed, mut expected) = (0.0, 0.0);
    for c in 0..CATEGORIES {
        for k in 0..CATEGORIES {
            let d = delta(c, k);
            observed += coincidence[c][k] * d;
            expected += marginal[c] * marginal[k] * d;
        }
    }
    let d_o = observed / n;
    let d_e = expected / (n * (n - 1.0));
    if d_e.abs() < 1e-12 {
        return Some(Alpha { alpha: 1.0, degenerate: true, pairable });
    }
    Some(Alpha { alpha: 1.0 - d_o / d_e, degenerate: false, pairable })
}

pub fn krippendorff_alpha(
    matrix: &RatingsMatrix,
    heuristic: &str,
    metric: AlphaMetric,
) -> Result<Alpha, AgreementError> {
    let units: Vec<Vec<u8>> =
        matrix.items_of(heuristic).into_iter().map(|i| matrix.row(i).iter().flatten().copied().collect()).collect();
    krippendorff_alpha_units(&units, metric).ok_or_else(|| AgreementError::NotPairable(heuristic.to_string()))
}

/// Mean score of one annotator over one heuristic, if they scored any item.
pub fn annotator_mean(matrix: &RatingsMatrix, heuristic: &str, annotator: usize) -> Option<f64> {
    let scores: Vec<u8> = matrix.items_of(heuristic).into_iter().filter_map(|i| matrix.score(i, annotator)).collect();
    (!scores.is_empty()).then(|| scores.iter().map(|&s| f64::from(s)).sum::<f64>() / scores.len() as f64)
}
