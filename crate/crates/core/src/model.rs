//! Corpus data types shared by every stage of the pipeline.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CorpusError;
use crate::span::{char_len, Span};

/// Review domain of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Games,
    Literature,
    Misc,
    Music,
    Products,
    Restaurants,
    Screen,
    Sports,
    Stage,
}

impl Category {
    pub const ALL: [Category; 9] = [
        Category::Games,
        Category::Literature,
        Category::Misc,
        Category::Music,
        Category::Products,
        Category::Restaurants,
        Category::Screen,
        Category::Sports,
        Category::Stage,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Category::Games => "games",
            Category::Literature => "literature",
            Category::Misc => "misc",
            Category::Music => "music",
            Category::Products => "products",
            Category::Restaurants => "restaurants",
            Category::Screen => "screen",
            Category::Sports => "sports",
            Category::Stage => "stage",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Polarity of a single opinion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn sign(self) -> i32 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Intensity {
    Slight,
    Standard,
    Strong,
}

/// Four-way sentiment used for sentences, entities and aggregated results.
///
/// Gold entity annotations never use `Mixed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sentiment {
    Negative,
    Neutral,
    Positive,
    Mixed,
}

impl Sentiment {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sentiment::Negative => "Negative",
            Sentiment::Neutral => "Neutral",
            Sentiment::Positive => "Positive",
            Sentiment::Mixed => "Mixed",
        }
    }

    /// Swaps Positive and Negative; Neutral and Mixed are fixed points.
    pub fn flipped(self) -> Self {
        match self {
            Sentiment::Positive => Sentiment::Negative,
            Sentiment::Negative => Sentiment::Positive,
            other => other,
        }
    }
}

impl fmt::Display for Sentiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sentiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Negative" => Ok(Sentiment::Negative),
            "Neutral" => Ok(Sentiment::Neutral),
            "Positive" => Ok(Sentiment::Positive),
            "Mixed" => Ok(Sentiment::Mixed),
            other => Err(format!("unknown polarity {other:?}")),
        }
    }
}

/// Volitional named-entity categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EntityLabel {
    #[serde(rename = "PER")]
    Per,
    #[serde(rename = "ORG")]
    Org,
}

impl EntityLabel {
    /// Maps an NER tag to a volitional label; every other category yields `None`.
    pub fn from_ner(tag: &str) -> Option<Self> {
        match tag {
            "PER" => Some(EntityLabel::Per),
            "ORG" => Some(EntityLabel::Org),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EntityLabel::Per => "PER",
            EntityLabel::Org => "ORG",
        }
    }
}

impl fmt::Display for EntityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One opinion tuple. Span lists are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Opinion {
    pub polar_expression: Vec<Span>,
    pub target: Vec<Span>,
    pub holder: Vec<Span>,
    pub polarity: Polarity,
    pub intensity: Intensity,
}

/// A named-entity mention before filtering to volitional categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerMention {
    pub sent_id: String,
    pub span: Span,
    pub surface: String,
    pub label: String,
}

/// A PER or ORG mention inside one sentence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityMention {
    pub sent_id: String,
    pub span: Span,
    pub surface: String,
    pub label: EntityLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub sent_id: String,
    pub text: String,
    /// Optional token layer; [`crate::span::word_tokens`] is used when absent.
    pub tokens: Option<Vec<Span>>,
    pub opinions: Vec<Opinion>,
    pub mentions: Vec<EntityMention>,
}

impl Sentence {
    /// Sorts every span list, the opinions and the mentions so that equal
    /// content always has one representation.
    pub fn canonicalize(&mut self) {
        for op in &mut self.opinions {
            op.polar_expression.sort();
            op.target.sort();
            op.holder.sort();
        }
        self.opinions.sort();
        self.mentions.sort_by_key(|m| (m.span, m.label));
    }

    /// Checks every span against the text and the sentence-level invariants.
    pub fn validate(&self, doc_id: &str) -> Result<(), CorpusError> {
        let id = self.sent_id.as_str();
        if id.is_empty() {
            return Err(CorpusError::doc(doc_id, "empty sent_id"));
        }
        let limit = char_len(&self.text);
        let check = |what: &str, span: &Span| {
            if span.end() > limit {
                Err(CorpusError::sent(
                    doc_id,
                    id,
                    format!("{what} span {span} exceeds sentence length {limit}"),
                ))
            } else {
                Ok(())
            }
        };
        if let Some(tokens) = &self.tokens {
            for w in tokens.windows(2) {
                if w[1].start() < w[0].end() {
                    return Err(CorpusError::sent(
                        doc_id,
                        id,
                        format!("tokens {} and {} are unordered or overlap", w[0], w[1]),
                    ));
                }
            }
            for t in tokens {
                check("token", t)?;
            }
        }
        for op in &self.opinions {
            if op.polar_expression.is_empty() {
                return Err(CorpusError::sent(doc_id, id, "opinion without polar expression"));
            }
            for span in op.holder.iter().chain(&op.target).chain(&op.polar_expression) {
                check("opinion", span)?;
            }
        }
        let mut seen = HashSet::new();
        for m in &self.mentions {
            check("mention", &m.span)?;
            if m.sent_id != self.sent_id {
                return Err(CorpusError::sent(
                    doc_id,
                    id,
                    format!("mention {} claims sentence {}", m.span, m.sent_id),
                ));
            }
            let actual = m.span.slice(&self.text).unwrap_or_default();
            if actual != m.surface {
                return Err(CorpusError::sent(
                    doc_id,
                    id,
                    format!(
                        "mention {} surface {:?} does not match text {:?}",
                        m.span, m.surface, actual
                    ),
                ));
            }
            if m.surface.trim().is_empty() {
                return Err(CorpusError::sent(
                    doc_id,
                    id,
                    format!("mention {} is blank", m.span),
                ));
            }
            if !seen.insert(m.span) {
                return Err(CorpusError::sent(
                    doc_id,
                    id,
                    format!("duplicate mention at {}", m.span),
                ));
            }
        }
        Ok(())
    }
}

/// A rated review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub rating: u8,
    pub category: Category,
    pub sentences: Vec<Sentence>,
}

impl Document {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.doc_id.is_empty() {
            return Err(CorpusError::doc("<empty>", "empty doc_id"));
        }
        if !(1..=6).contains(&self.rating) {
            return Err(CorpusError::doc(
                &self.doc_id,
                format!("rating {} outside 1..=6", self.rating),
            ));
        }
        if self.sentences.is_empty() {
            return Err(CorpusError::doc(&self.doc_id, "document has no sentences"));
        }
        let mut ids = HashSet::new();
        for s in &self.sentences {
            if !ids.insert(s.sent_id.as_str()) {
                return Err(CorpusError::sent(&self.doc_id, &s.sent_id, "duplicate sent_id"));
            }
            s.validate(&self.doc_id)?;
        }
        Ok(())
    }

    pub fn sentence(&self, sent_id: &str) -> Option<&Sentence> {
        self.sentences.iter().find(|s| s.sent_id == sent_id)
    }

    /// Position of a sentence within the document.
    pub fn sentence_index(&self, sent_id: &str) -> Option<usize> {
        self.sentences.iter().position(|s| s.sent_id == sent_id)
    }

    pub fn mentions(&self) -> impl Iterator<Item = &EntityMention> {
        self.sentences.iter().flat_map(|s| s.mentions.iter())
    }
}

/// A document-scoped cluster of mentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entity {
    pub doc_id: String,
    pub entity_id: String,
    pub canonical: String,
    pub label: EntityLabel,
    pub mentions: Vec<EntityMention>,
    /// `None` for entities that have been resolved but not yet labeled.
    pub polarity: Option<Sentiment>,
}

/// Summed sentiment towards one target span list in one sentence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TargetLabel {
    pub sent_id: String,
    pub span: Vec<Span>,
    /// Always within `-3..=3`; zero marks a target whose opinions cancel out.
    pub value: i8,
}

impl TargetLabel {
    pub const MIN: i8 = -3;
    pub const MAX: i8 = 3;
}
