//! Textbook formulas evaluated directly, with no coincidence or confusion
//! matrices shared with the library.

use rand::Rng;

/// Rows are items, columns annotators; `None` is a missing score.
pub type Ratings = Vec<Vec<Option<u8>>>;

pub fn random_ratings(rng: &mut impl Rng, max_raters: usize, max_items: usize, missing: f64) -> Ratings {
    let raters = rng.random_range(2..=max_raters);
    let items = rng.random_range(1..=max_items);
    (0..items)
        .map(|_| {
            let centre: i32 = rng.random_range(1..=5);
            (0..raters)
                .map(|_| {
                    if rng.random_bool(missing) {
                        None
                    } else {
                        Some((centre + rng.random_range(-1..=1)).clamp(1, 5) as u8)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn percent_agreement(ratings: &Ratings) -> Option<f64> {
    let (mut equal, mut total) = (0.0, 0.0);
    for row in ratings {
        for a in 0..row.len() {
            for b in a + 1..row.len() {
                if let (Some(x), Some(y)) = (row[a], row[b]) {
                    total += 1.0;
                    if x == y {
                        equal += 1.0;
                    }
                }
            }
        }
    }
    (total > 0.0).then(|| equal / total)
}

/// Unweighted Cohen's kappa: (p_o − p_e) / (1 − p_e) with p_e from the two
/// raters' category frequencies.
pub fn cohen_kappa(pairs: &[(u8, u8)]) -> Option<f64> {
    let n = pairs.len() as f64;
    if pairs.is_empty() {
        return None;
    }
    let po = pairs.iter().filter(|(a, b)| a == b).count() as f64 / n;
    let pe: f64 = (1..=5u8)
        .map(|c| {
            let fa = pairs.iter().filter(|(a, _)| *a == c).count() as f64 / n;
            let fb = pairs.iter().filter(|(_, b)| *b == c).count() as f64 / n;
            fa * fb
        })
        .sum();
    if (1.0 - pe).abs() < 1e-12 {
        None
    } else {
        Some((po - pe) / (1.0 - pe))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Nominal,
    Ordinal,
    Interval,
}

/// Krippendorff's alpha from its pairwise definition:
/// D_o averages δ² over ordered value pairs inside each unit (weighted by
/// 1/(m_u − 1)), D_e over all ordered pairs of pairable values.
pub fn krippendorff_alpha(ratings: &Ratings, metric: Metric) -> Option<f64> {
    let units: Vec<Vec<u8>> =
        ratings.iter().map(|r| r.iter().flatten().copied().collect::<Vec<u8>>()).filter(|u| u.len() >= 2).collect();
    let values: Vec<u8> = units.iter().flatten().copied().collect();
    let n = values.len() as f64;
    if values.len() < 2 {
        return None;
    }
    let count = |g: u8| values.iter().filter(|&&v| v == g).count() as f64;
    let delta2 = |c: u8, k: u8| -> f64 {
        match metric {
            Metric::Nominal => {
                if c == k {
                    0.0
                } else {
                    1.0
                }
            }
            Metric::Interval => (f64::from(c) - f64::from(k)).powi(2),
            Metric::Ordinal => {
                let (lo, hi) = (c.min(k), c.max(k));
                let sum: f64 = (lo..=hi).map(count).sum();
                (sum - (count(c) + count(k)) / 2.0).powi(2)
            }
        }
    };
    let mut d_o = 0.0;
    for unit in &units {
        let m = unit.len() as f64;
        for i in 0..unit.len() {
            for j in 0..unit.len() {
                if i != j {
                    d_o += delta2(unit[i], unit[j]) / (m - 1.0);
                }
            }
        }
    }
    d_o /= n;
    let mut d_e = 0.0;
    for i in 0..values.len() {
        for j in 0..values.len() {
            if i != j {
                d_e += delta2(values[i], values[j]);
            }
        }
    }
    d_e /= n * (n - 1.0);
    if d_e.abs() < 1e-12 {
        return Some(1.0);
    }
    Some(1.0 - d_o / d_e)
}
