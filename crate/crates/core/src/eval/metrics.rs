use std::collections::HashMap;

use crate::aggregate::AggregatedPolarity;
use crate::error::EvalError;
use crate::eval::confusion::{ConfusionTable, GoldCol, PredRow};
use crate::eval::matching::match_entities;
use crate::model::{Entity, Sentiment};
use crate::scalar::Score;

/// Accuracy of a proxy strategy over gold entities.
#[derive(Debug, Clone, PartialEq)]
pub struct Accuracy<S> {
    pub correct: u64,
    pub total: u64,
    /// Zero when there are no gold entities (see `undefined`).
    pub value: S,
    pub undefined: bool,
}

/// Precision, recall and F1 of entity-level predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct PrfScores<S> {
    pub tp: u64,
    pub fp: u64,
    pub missed: u64,
    pub predicted_total: u64,
    pub gold_total: u64,
    pub precision: S,
    pub recall: S,
    pub f1: S,
    /// Set when a denominator was zero and the metric was reported as 0.
    pub undefined: bool,
}

fn ratio_or_zero<S: Score>(num: u64, den: u64) -> (S, bool) {
    if den == 0 {
        (S::zero(), true)
    } else {
        (S::from_counts(num, den), false)
    }
}

impl<S: Score> PrfScores<S> {
    /// Scores from the counts held in a confusion table.
    pub fn from_table(table: &ConfusionTable) -> Self {
        let tp = table.true_positives();
        let predicted_total = table.predicted_total();
        let gold_total = table.gold_total();
        let (precision, p_undef) = ratio_or_zero::<S>(tp, predicted_total);
        let (recall, r_undef) = ratio_or_zero::<S>(tp, gold_total);
        let sum = precision + recall;
        let f1 = if sum > S::zero() {
            (S::one() + S::one()) * precision * recall / sum
        } else {
            S::zero()
        };
        PrfScores {
            tp,
            fp: table.false_positives(),
            missed: table.missed(),
            predicted_total,
            gold_total,
            precision,
            recall,
            f1,
            undefined: p_undef || r_undef,
        }
    }
}

impl<S: Score> Accuracy<S> {
    pub fn from_table(table: &ConfusionTable) -> Self {
        let correct = table.true_positives();
        let total = table.gold_total();
        let (value, undefined) = ratio_or_zero::<S>(correct, total);
        Accuracy {
            correct,
            total,
            value,
            undefined,
        }
    }
}

fn gold_col(entity: &Entity) -> Result<GoldCol, EvalError> {
    entity
        .polarity
        .and_then(GoldCol::from_gold)
        .ok_or_else(|| EvalError::Unlabeled {
            entity_id: entity.entity_id.clone(),
        })
}

/// Scores a proxy assignment keyed by gold entity id. Mixed proxy values
/// land in their own row and never count as correct.
pub fn proxy_accuracy<S: Score, H: std::hash::BuildHasher>(
    gold: &[Entity],
    proxy: &HashMap<String, AggregatedPolarity, H>,
) -> Result<(ConfusionTable, Accuracy<S>), EvalError> {
    let mut table = ConfusionTable::new();
    for g in gold {
        let predicted = proxy
            .get(&g.entity_id)
            .ok_or_else(|| EvalError::MissingProxy {
                entity_id: g.entity_id.clone(),
            })?;
        table.add(predicted.value.into(), gold_col(g)?, 1);
    }
    let acc = Accuracy::from_table(&table);
    Ok((table, acc))
}

/// Same as [`proxy_accuracy`] for plain polarity assignments.
pub fn proxy_accuracy_from_labels<S: Score, H: std::hash::BuildHasher>(
    gold: &[Entity],
    proxy: &HashMap<String, Sentiment, H>,
) -> Result<(ConfusionTable, Accuracy<S>), EvalError> {
    let mut table = ConfusionTable::new();
    for g in gold {
        let predicted = proxy
            .get(&g.entity_id)
            .ok_or_else(|| EvalError::MissingProxy {
                entity_id: g.entity_id.clone(),
            })?;
        table.add((*predicted).into(), gold_col(g)?, 1);
    }
    let acc = Accuracy::from_table(&table);
    Ok((table, acc))
}

/// Matches predictions to gold entities per document and scores them.
///
/// A true positive is a matched pair with equal polarity. Unmatched gold
/// entities fill the Missed row; unmatched predictions the FP column.
pub fn entity_prf<S: Score>(
    gold: &[Entity],
    pred: &[Entity],
) -> Result<(ConfusionTable, PrfScores<S>), EvalError> {
    let matching = match_entities(gold, pred);
    let pred_row = |e: &Entity| -> Result<PredRow, EvalError> {
        e.polarity.map(PredRow::from).ok_or_else(|| EvalError::Unlabeled {
            entity_id: e.entity_id.clone(),
        })
    };
    let mut table = ConfusionTable::new();
    for &(g, p) in &matching.pairs {
        table.add(pred_row(&pred[p])?, gold_col(&gold[g])?, 1);
    }
    for &g in &matching.missed {
        table.add(PredRow::Missed, gold_col(&gold[g])?, 1);
    }
    for &p in &matching.false_positives {
        table.add(pred_row(&pred[p])?, GoldCol::FalsePositive, 1);
    }
    let scores = PrfScores::from_table(&table);
    Ok((table, scores))
}
