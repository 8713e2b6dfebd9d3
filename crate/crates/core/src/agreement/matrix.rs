use std::collections::HashSet;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use super::AgreementError;

pub const MIN_SCORE: u8 = 1;
pub const MAX_SCORE: u8 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub id: String,
    pub heuristic: String,
}

/// Items × annotators Likert scores, `None` where a score is missing. Items and
/// annotators keep first-appearance order.
#[derive(Debug, Clone, Default)]
pub struct RatingsMatrix {
    items: Vec<Item>,
    annotators: Vec<String>,
    scores: Vec<Vec<Option<u8>>>,
    /// Cells present in the input, including blank (missing) ones.
    given: HashSet<(usize, usize)>,
}

impl RatingsMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn annotators(&self) -> &[String] {
        &self.annotators
    }

    pub fn score(&self, item: usize, annotator: usize) -> Option<u8> {
        self.scores[item][annotator]
    }

    /// Row of scores for one item, one entry per annotator.
    pub fn row(&self, item: usize) -> &[Option<u8>] {
        &self.scores[item]
    }

    fn item_index(&mut self, id: &str, heuristic: &str) -> Result<usize, AgreementError> {
        match self.items.iter().position(|i| i.id == id) {
            Some(i) if self.items[i].heuristic != heuristic => Err(AgreementError::HeuristicMismatch {
                item: id.to_string(),
                first: self.items[i].heuristic.clone(),
                second: heuristic.to_string(),
            }),
            Some(i) => Ok(i),
            None => {
                self.items.push(Item { id: id.to_string(), heuristic: heuristic.to_string() });
                self.scores.push(vec![None; self.annotators.len()]);
                Ok(self.items.len() - 1)
            }
        }
    }

    fn annotator_index(&mut self, name: &str) -> usize {
        match self.annotators.iter().position(|a| a == name) {
            Some(a) => a,
            None => {
                self.annotators.push(name.to_string());
                for row in &mut self.scores {
                    row.push(None);
                }
                self.annotators.len() - 1
            }
        }
    }

    /// Records one cell. A cell may be set once, even when its value is missing.
    pub fn set(
        &mut self,
        item: &str,
        heuristic: &str,
        annotator: &str,
        score: Option<u8>,
    ) -> Result<(), AgreementError> {
        if let Some(s) = score {
            if !(MIN_SCORE..=MAX_SCORE).contains(&s) {
                return Err(AgreementError::BadScore { row: 0, value: s.to_string() });
            }
        }
        let i = self.item_index(item, heuristic)?;
        let a = self.annotator_index(annotator);
        if !self.given.insert((i, a)) {
            return Err(AgreementError::DuplicateCell { item: item.to_string(), annotator: annotator.to_string() });
        }
        self.scores[i][a] = score;
        Ok(())
    }

    /// Heuristic names in first-appearance order.
    pub fn heuristics(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for item in &self.items {
            if !out.contains(&item.heuristic.as_str()) {
                out.push(&item.heuristic);
            }
        }
        out
    }

    /// Row indices of the items belonging to `heuristic`.
    pub fn items_of(&self, heuristic: &str) -> Vec<usize> {
        (0..self.items.len()).filter(|&i| self.items[i].heuristic == heuristic).collect()
    }

    /// Builds a matrix from dense rows; used by generators and tests.
    pub fn from_rows(annotators: &[&str], rows: Vec<(Item, Vec<Option<u8>>)>) -> Result<Self, AgreementError> {
        let mut m = RatingsMatrix::new();
        for a in annotators {
            m.annotator_index(a);
        }
        for (item, scores) in rows {
            if scores.len() != annotators.len() {
                return Err(AgreementError::Shape(format!("item {} has {} scores", item.id, scores.len())));
            }
            for (a, s) in annotators.iter().zip(scores) {
                m.set(&item.id, &item.heuristic, a, s)?;
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Deserialize)]
struct Row {
    item_id: String,
    heuristic: String,
    annotator: String,
    score: String,
}

const HEADER: [&str; 4] = ["item_id", "heuristic", "annotator", "score"];

pub fn read_ratings(reader: impl Read) -> Result<RatingsMatrix, AgreementError> {
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = csv.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(AgreementError::BadHeader(header.join(",")));
    }
    let mut m = RatingsMatrix::new();
    for (n, record) in csv.deserialize::<Row>().enumerate() {
        let row = record?;
        let line = n + 2;
        let score = if row.score.is_empty() {
            None
        } else {
            match row.score.parse::<u8>() {
                Ok(s) if (MIN_SCORE..=MAX_SCORE).contains(&s) => Some(s),
                _ => return Err(AgreementError::BadScore { row: line, value: row.score }),
            }
        };
        m.set(&row.item_id, &row.heuristic, &row.annotator, score)?;
    }
    Ok(m)
}

pub fn load_ratings(path: &Path) -> Result<RatingsMatrix, AgreementError> {
    let file = std::fs::File::open(path).map_err(|e| AgreementError::Io(format!("{}: {e}", path.display())))?;
    read_ratings(file)
}
