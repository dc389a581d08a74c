//! Entity-level polarity from document, sentence or target annotations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::AggregateError;
use crate::labels::{
    derive_doc_label, derive_sentence_label, derive_target_labels, DocLabel, SentenceLabel,
};
use crate::model::{Document, Entity, EntityMention, Sentiment, TargetLabel};
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    DocProxy,
    SentenceProxy,
    TargetProxy,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::DocProxy => "doc",
            Strategy::SentenceProxy => "sentence",
            Strategy::TargetProxy => "target",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "doc" => Ok(Strategy::DocProxy),
            "sentence" => Ok(Strategy::SentenceProxy),
            "target" => Ok(Strategy::TargetProxy),
            other => Err(format!("unknown strategy {other:?} (doc, sentence, target)")),
        }
    }
}

/// What an aggregated polarity was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Evidence {
    Document(DocLabel),
    Sentence { sent_id: String, label: SentenceLabel },
    Target(TargetLabel),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AggregatedPolarity {
    pub value: Sentiment,
    pub strategy: Strategy,
    pub evidence: Vec<Evidence>,
}

pub fn aggregate_doc_proxy(_entity: &Entity, doc_label: DocLabel) -> AggregatedPolarity {
    AggregatedPolarity {
        value: doc_label.into(),
        strategy: Strategy::DocProxy,
        evidence: vec![Evidence::Document(doc_label)],
    }
}

/// Counts the distinct sentences an entity is mentioned in, per label.
///
/// More Positive than Negative sentences gives Positive (and vice versa).
/// Only Neutral sentences gives Neutral. Everything else (a Positive/Negative
/// tie above zero, or Mixed sentences with no Positive or Negative ones) is Mixed.
pub fn aggregate_sentence_proxy<S: std::hash::BuildHasher>(
    entity: &Entity,
    labels: &HashMap<String, SentenceLabel, S>,
) -> Result<AggregatedPolarity, AggregateError> {
    let mut seen: BTreeMap<&str, SentenceLabel> = BTreeMap::new();
    for m in &entity.mentions {
        let label = labels
            .get(&m.sent_id)
            .ok_or_else(|| AggregateError::MissingSentenceLabel {
                sent_id: m.sent_id.clone(),
            })?;
        seen.insert(&m.sent_id, *label);
    }
    let count = |want: Sentiment| seen.values().filter(|&&l| l == want).count();
    let (pos, neg, mixed) = (
        count(Sentiment::Positive),
        count(Sentiment::Negative),
        count(Sentiment::Mixed),
    );
    let value = if pos > neg {
        Sentiment::Positive
    } else if neg > pos {
        Sentiment::Negative
    } else if pos == 0 && mixed == 0 {
        Sentiment::Neutral
    } else {
        Sentiment::Mixed
    };
    Ok(AggregatedPolarity {
        value,
        strategy: Strategy::SentenceProxy,
        evidence: seen
            .into_iter()
            .map(|(sent_id, label)| Evidence::Sentence {
                sent_id: sent_id.to_string(),
                label,
            })
            .collect(),
    })
}

fn spans_overlap(a: &Span, targets: &[Span]) -> bool {
    targets.iter().any(|t| t.overlaps(a))
}

/// Targets sharing at least one character with the mention. Only targets of
/// the mention's own sentence are considered.
pub fn overlapping_targets(mention: &EntityMention, targets: &[TargetLabel]) -> Vec<TargetLabel> {
    targets
        .iter()
        .filter(|t| t.sent_id == mention.sent_id && spans_overlap(&mention.span, &t.span))
        .cloned()
        .collect()
}

/// Sums the values of every target overlapping any mention of the entity.
///
/// Each target counts once however many mentions it overlaps. A positive sum
/// is Positive, a negative sum Negative. No overlapping target at all gives
/// Neutral; overlapping targets that sum to zero give Mixed.
pub fn aggregate_target_proxy<S: std::hash::BuildHasher>(
    entity: &Entity,
    targets_by_sentence: &HashMap<String, Vec<TargetLabel>, S>,
) -> AggregatedPolarity {
    let mut hits: BTreeSet<TargetLabel> = BTreeSet::new();
    for m in &entity.mentions {
        if let Some(targets) = targets_by_sentence.get(&m.sent_id) {
            hits.extend(overlapping_targets(m, targets));
        }
    }
    let sum: i32 = hits.iter().map(|t| i32::from(t.value)).sum();
    let value = match sum.signum() {
        1 => Sentiment::Positive,
        -1 => Sentiment::Negative,
        _ if hits.is_empty() => Sentiment::Neutral,
        _ => Sentiment::Mixed,
    };
    AggregatedPolarity {
        value,
        strategy: Strategy::TargetProxy,
        evidence: hits.into_iter().map(Evidence::Target).collect(),
    }
}

/// Per-document labels shared by all strategies.
#[derive(Debug, Clone)]
pub struct DocumentLayers {
    pub doc_label: DocLabel,
    pub sentence_labels: HashMap<String, SentenceLabel>,
    pub targets: HashMap<String, Vec<TargetLabel>>,
}

impl DocumentLayers {
    pub fn derive(doc: &Document) -> Self {
        DocumentLayers {
            doc_label: derive_doc_label(doc.rating.into())
                .expect("validated documents carry ratings in 1..=6"),
            sentence_labels: doc
                .sentences
                .iter()
                .map(|s| (s.sent_id.clone(), derive_sentence_label(s)))
                .collect(),
            targets: doc
                .sentences
                .iter()
                .map(|s| (s.sent_id.clone(), derive_target_labels(s)))
                .collect(),
        }
    }

    pub fn aggregate(
        &self,
        strategy: Strategy,
        entity: &Entity,
    ) -> Result<AggregatedPolarity, AggregateError> {
        match strategy {
            Strategy::DocProxy => Ok(aggregate_doc_proxy(entity, self.doc_label)),
            Strategy::SentenceProxy => aggregate_sentence_proxy(entity, &self.sentence_labels),
            Strategy::TargetProxy => Ok(aggregate_target_proxy(entity, &self.targets)),
        }
    }
}

/// Aggregates every entity of one document and returns copies carrying the
/// aggregated polarity, together with the detailed results.
pub fn aggregate_document(
    doc: &Document,
    entities: &[Entity],
    strategy: Strategy,
) -> Result<Vec<(Entity, AggregatedPolarity)>, AggregateError> {
    let layers = DocumentLayers::derive(doc);
    entities
        .iter()
        .map(|e| {
            if e.doc_id != doc.doc_id {
                return Err(AggregateError::UnknownDocument {
                    entity_id: e.entity_id.clone(),
                    doc_id: e.doc_id.clone(),
                });
            }
            let agg = layers.aggregate(strategy, e)?;
            let mut labeled = e.clone();
            labeled.polarity = Some(agg.value);
            Ok((labeled, agg))
        })
        .collect()
}
