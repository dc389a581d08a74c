//! Target-, sentence- and document-level labels derived from opinion annotations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::LabelError;
use crate::model::{Intensity, Polarity, Sentence, Sentiment, TargetLabel};
use crate::span::Span;

/// Sentence-level label: Neutral exactly when the sentence carries no opinions.
pub type SentenceLabel = Sentiment;

/// Polarity implied by a document's rating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DocLabel {
    Negative,
    Neutral,
    Positive,
}

impl From<DocLabel> for Sentiment {
    fn from(label: DocLabel) -> Self {
        match label {
            DocLabel::Negative => Sentiment::Negative,
            DocLabel::Neutral => Sentiment::Neutral,
            DocLabel::Positive => Sentiment::Positive,
        }
    }
}

pub fn intensity_value(intensity: Intensity) -> i32 {
    match intensity {
        Intensity::Slight => 1,
        Intensity::Standard => 2,
        Intensity::Strong => 3,
    }
}

/// Sums signed opinion intensities per distinct target span list and clips
/// the sum to `-3..=3`. Opinions without a target are skipped.
///
/// Output is ordered by span list, independent of opinion order.
pub fn derive_target_labels(sentence: &Sentence) -> Vec<TargetLabel> {
    let mut sums: BTreeMap<Vec<Span>, i32> = BTreeMap::new();
    for op in &sentence.opinions {
        if op.target.is_empty() {
            continue;
        }
        let mut key = op.target.clone();
        key.sort();
        *sums.entry(key).or_default() += op.polarity.sign() * intensity_value(op.intensity);
    }
    sums.into_iter()
        .map(|(span, sum)| TargetLabel {
            sent_id: sentence.sent_id.clone(),
            span,
            value: sum.clamp(TargetLabel::MIN.into(), TargetLabel::MAX.into()) as i8,
        })
        .collect()
}

pub fn derive_sentence_label(sentence: &Sentence) -> SentenceLabel {
    let pos = sentence.opinions.iter().any(|o| o.polarity == Polarity::Positive);
    let neg = sentence.opinions.iter().any(|o| o.polarity == Polarity::Negative);
    match (pos, neg) {
        (false, false) => Sentiment::Neutral,
        (true, false) => Sentiment::Positive,
        (false, true) => Sentiment::Negative,
        (true, true) => Sentiment::Mixed,
    }
}

pub fn derive_doc_label(rating: i64) -> Result<DocLabel, LabelError> {
    match rating {
        1 | 2 => Ok(DocLabel::Negative),
        3 | 4 => Ok(DocLabel::Neutral),
        5 | 6 => Ok(DocLabel::Positive),
        other => Err(LabelError::RatingOutOfRange(other)),
    }
}
