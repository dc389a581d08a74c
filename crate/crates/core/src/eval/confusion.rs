use std::fmt::Write as _;

use serde::Serialize;

use crate::model::Sentiment;

/// Row of a confusion table: the predicted (or proxy) class, or `Missed`
/// for gold entities with no matching prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PredRow {
    Mixed,
    Negative,
    Neutral,
    Positive,
    Missed,
}

impl PredRow {
    pub const ALL: [PredRow; 5] = [
        PredRow::Mixed,
        PredRow::Negative,
        PredRow::Neutral,
        PredRow::Positive,
        PredRow::Missed,
    ];

    fn index(self) -> usize {
        self as usize
    }

    fn short(self) -> &'static str {
        match self {
            PredRow::Mixed => "Mix",
            PredRow::Negative => "Neg",
            PredRow::Neutral => "Neu",
            PredRow::Positive => "Pos",
            PredRow::Missed => "Missed",
        }
    }
}

impl From<Sentiment> for PredRow {
    fn from(s: Sentiment) -> Self {
        match s {
            Sentiment::Mixed => PredRow::Mixed,
            Sentiment::Negative => PredRow::Negative,
            Sentiment::Neutral => PredRow::Neutral,
            Sentiment::Positive => PredRow::Positive,
        }
    }
}

/// Column: the gold class, or `FalsePositive` for unmatched predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GoldCol {
    Negative,
    Neutral,
    Positive,
    FalsePositive,
}

impl GoldCol {
    pub const GOLD: [GoldCol; 3] = [GoldCol::Negative, GoldCol::Neutral, GoldCol::Positive];

    /// Gold polarity column; `None` for Mixed, which is never a gold class.
    pub fn from_gold(s: Sentiment) -> Option<Self> {
        match s {
            Sentiment::Negative => Some(GoldCol::Negative),
            Sentiment::Neutral => Some(GoldCol::Neutral),
            Sentiment::Positive => Some(GoldCol::Positive),
            Sentiment::Mixed => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Counts of predicted class against gold class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfusionTable {
    cells: [[u64; 4]; 5],
}

impl ConfusionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, row: PredRow, col: GoldCol, count: u64) {
        self.cells[row.index()][col.index()] += count;
    }

    pub fn cell(&self, row: PredRow, col: GoldCol) -> u64 {
        self.cells[row.index()][col.index()]
    }

    /// Gold entities of one class, summed over every row including Missed.
    pub fn gold_count(&self, col: GoldCol) -> u64 {
        PredRow::ALL.iter().map(|&r| self.cell(r, col)).sum()
    }

    pub fn gold_total(&self) -> u64 {
        GoldCol::GOLD.iter().map(|&c| self.gold_count(c)).sum()
    }

    /// Diagonal restricted to Negative, Neutral and Positive.
    pub fn true_positives(&self) -> u64 {
        self.cell(PredRow::Negative, GoldCol::Negative)
            + self.cell(PredRow::Neutral, GoldCol::Neutral)
            + self.cell(PredRow::Positive, GoldCol::Positive)
    }

    pub fn false_positives(&self) -> u64 {
        self.gold_count(GoldCol::FalsePositive)
    }

    pub fn missed(&self) -> u64 {
        GoldCol::GOLD
            .iter()
            .map(|&c| self.cell(PredRow::Missed, c))
            .sum()
    }

    /// Every prediction: matched ones in any class plus false positives.
    pub fn predicted_total(&self) -> u64 {
        PredRow::ALL
            .iter()
            .filter(|&&r| r != PredRow::Missed)
            .map(|&r| self.row_total(r))
            .sum()
    }

    pub fn row_total(&self, row: PredRow) -> u64 {
        self.cells[row.index()].iter().sum()
    }

    /// Plain-text rendering in the layout of the published tables. The Mixed
    /// and Missed rows and the FP column appear only when they hold counts.
    pub fn render(&self, title: &str) -> String {
        let show_fp = self.false_positives() > 0;
        let rows: Vec<PredRow> = PredRow::ALL
            .iter()
            .copied()
            .filter(|&r| match r {
                PredRow::Mixed | PredRow::Missed => self.row_total(r) > 0,
                _ => true,
            })
            .collect();
        let mut cols: Vec<GoldCol> = GoldCol::GOLD.to_vec();
        if show_fp {
            cols.push(GoldCol::FalsePositive);
        }
        let width = 7;
        let mut out = String::new();
        let _ = write!(out, "{title:<8}");
        for c in &cols {
            let name = match c {
                GoldCol::Negative => "Neg",
                GoldCol::Neutral => "Neu",
                GoldCol::Positive => "Pos",
                GoldCol::FalsePositive => "FP",
            };
            let _ = write!(out, "{name:>width$}");
        }
        let _ = writeln!(out, "{:>width$}", "Tot.");
        for r in rows {
            let _ = write!(out, "{:<8}", r.short());
            for &c in &cols {
                let _ = write!(out, "{:>width$}", self.cell(r, c));
            }
            let _ = writeln!(out, "{:>width$}", self.row_total(r));
        }
        let _ = write!(out, "{:<8}", "Total");
        for &c in &cols {
            let _ = write!(out, "{:>width$}", self.gold_count(c));
        }
        let grand: u64 = cols.iter().map(|&c| self.gold_count(c)).sum();
        let _ = writeln!(out, "{grand:>width$}");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = PredRow::ALL
            .iter()
            .map(|&r| {
                serde_json::json!({
                    "pred": r,
                    "Negative": self.cell(r, GoldCol::Negative),
                    "Neutral": self.cell(r, GoldCol::Neutral),
                    "Positive": self.cell(r, GoldCol::Positive),
                    "FP": self.cell(r, GoldCol::FalsePositive),
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}
