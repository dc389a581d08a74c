//! JSON-lines files for entities and for predicted mentions.
//!
//! An entity file starts with a header line
//! `{"elsa_entities":1,"mode":"gold"}` (or `"predicted"`) followed by one
//! entity per line. The header is optional on read. Gold files must give every
//! entity a Positive, Negative or Neutral polarity; predicted files may also
//! use Mixed or `null` (not yet labeled).

use std::collections::HashSet;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::EntityFileError;
use crate::model::{Document, Entity, EntityLabel, EntityMention, NerMention, Sentiment};
use crate::resolve::{filter_volitional, PredictedMention};
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarityMode {
    Gold,
    Predicted,
}

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    elsa_entities: u32,
    mode: PolarityMode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntityRecord {
    doc_id: String,
    entity_id: String,
    canonical: String,
    label: EntityLabel,
    mentions: Vec<MentionRecord>,
    polarity: Option<Sentiment>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MentionRecord {
    sent_id: String,
    start: usize,
    end: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    surface: String,
}

fn non_blank_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Reads an entity file, enforcing the polarity vocabulary of `mode`.
pub fn parse_entity_file<R: Read>(
    mut reader: R,
    mode: PolarityMode,
) -> Result<Vec<Entity>, EntityFileError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_entity_str(&text, mode)
}

pub fn parse_entity_str(text: &str, mode: PolarityMode) -> Result<Vec<Entity>, EntityFileError> {
    let mut entities = Vec::new();
    let mut ids = HashSet::new();
    for (n, (line_no, line)) in non_blank_lines(text).enumerate() {
        if n == 0 && line.contains("\"elsa_entities\"") {
            let header: Header = serde_json::from_str(line).map_err(|e| EntityFileError::Json {
                line: line_no,
                message: e.to_string(),
            })?;
            if header.elsa_entities != FORMAT_VERSION {
                return Err(EntityFileError::Validation {
                    line: line_no,
                    message: format!("unsupported format version {}", header.elsa_entities),
                });
            }
            continue;
        }
        let rec: EntityRecord = serde_json::from_str(line).map_err(|e| EntityFileError::Json {
            line: line_no,
            message: e.to_string(),
        })?;
        let invalid = |message: String| EntityFileError::Validation {
            line: line_no,
            message,
        };
        match (mode, rec.polarity) {
            (PolarityMode::Gold, None) => {
                return Err(invalid(format!("gold entity {} has no polarity", rec.entity_id)))
            }
            (PolarityMode::Gold, Some(Sentiment::Mixed)) => {
                return Err(invalid(format!(
                    "gold entity {} uses Mixed, which is not a gold class",
                    rec.entity_id
                )))
            }
            _ => {}
        }
        if rec.doc_id.is_empty() || rec.entity_id.is_empty() {
            return Err(invalid("empty doc_id or entity_id".into()));
        }
        if rec.mentions.is_empty() {
            return Err(invalid(format!("entity {} has no mentions", rec.entity_id)));
        }
        if !ids.insert(rec.entity_id.clone()) {
            return Err(EntityFileError::DuplicateId {
                line: line_no,
                entity_id: rec.entity_id,
            });
        }
        let mentions = rec
            .mentions
            .into_iter()
            .map(|m| {
                let span = Span::new(m.start, m.end).map_err(|e| invalid(e.to_string()))?;
                Ok(EntityMention {
                    sent_id: m.sent_id,
                    span,
                    surface: m.surface,
                    label: rec.label,
                })
            })
            .collect::<Result<Vec<_>, EntityFileError>>()?;
        entities.push(Entity {
            doc_id: rec.doc_id,
            entity_id: rec.entity_id,
            canonical: rec.canonical,
            label: rec.label,
            mentions,
            polarity: rec.polarity,
        });
    }
    Ok(entities)
}

/// Renders entities with a header line; an empty list yields only the header.
pub fn write_entity_file(entities: &[Entity], mode: PolarityMode) -> String {
    let mut out = serde_json::to_string(&Header {
        elsa_entities: FORMAT_VERSION,
        mode,
    })
    .expect("header serializes");
    out.push('\n');
    for e in entities {
        let rec = EntityRecord {
            doc_id: e.doc_id.clone(),
            entity_id: e.entity_id.clone(),
            canonical: e.canonical.clone(),
            label: e.label,
            mentions: e
                .mentions
                .iter()
                .map(|m| MentionRecord {
                    sent_id: m.sent_id.clone(),
                    start: m.span.start(),
                    end: m.span.end(),
                    surface: m.surface.clone(),
                })
                .collect(),
            polarity: e.polarity,
        };
        out.push_str(&serde_json::to_string(&rec).expect("entity serializes"));
        out.push('\n');
    }
    out
}

/// Checks entity mentions against the corpus and fills in missing surfaces.
pub fn attach_to_corpus(entities: &mut [Entity], corpus: &[Document]) -> Result<(), String> {
    for e in entities {
        let doc = corpus
            .iter()
            .find(|d| d.doc_id == e.doc_id)
            .ok_or_else(|| format!("entity {}: unknown document {}", e.entity_id, e.doc_id))?;
        for m in &mut e.mentions {
            let sentence = doc.sentence(&m.sent_id).ok_or_else(|| {
                format!("entity {}: unknown sentence {}", e.entity_id, m.sent_id)
            })?;
            let actual = m.span.slice(&sentence.text).ok_or_else(|| {
                format!(
                    "entity {}: span {} exceeds sentence {}",
                    e.entity_id, m.span, m.sent_id
                )
            })?;
            if m.surface.is_empty() {
                m.surface = actual.to_string();
            } else if m.surface != actual {
                return Err(format!(
                    "entity {}: mention {} in {} reads {:?}, file says {:?}",
                    e.entity_id, m.span, m.sent_id, actual, m.surface
                ));
            }
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PredictedRecord {
    doc_id: String,
    sent_id: String,
    start: usize,
    end: usize,
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    surface: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polarity: Option<Sentiment>,
}

/// Predicted mentions grouped by document, in file order.
pub type MentionsByDocument = Vec<(String, Vec<PredictedMention>)>;

/// Reads a JSON-lines file of predicted mentions
/// (`{"doc_id","sent_id","start","end","label","polarity"?,"surface"?}`),
/// validates every span against `corpus`, and drops non-volitional labels.
pub fn parse_mention_file<R: Read>(
    mut reader: R,
    corpus: &[Document],
) -> Result<MentionsByDocument, EntityFileError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut grouped: MentionsByDocument = Vec::new();
    for (line_no, line) in non_blank_lines(&text) {
        let rec: PredictedRecord =
            serde_json::from_str(line).map_err(|e| EntityFileError::Json {
                line: line_no,
                message: e.to_string(),
            })?;
        let invalid = |message: String| EntityFileError::Validation {
            line: line_no,
            message,
        };
        if rec.polarity == Some(Sentiment::Mixed) {
            return Err(invalid("mention polarity must be Positive, Negative or Neutral".into()));
        }
        let doc = corpus
            .iter()
            .find(|d| d.doc_id == rec.doc_id)
            .ok_or_else(|| invalid(format!("unknown document {}", rec.doc_id)))?;
        let sentence = doc
            .sentence(&rec.sent_id)
            .ok_or_else(|| invalid(format!("unknown sentence {}", rec.sent_id)))?;
        let span = Span::new(rec.start, rec.end).map_err(|e| invalid(e.to_string()))?;
        let actual = span
            .slice(&sentence.text)
            .ok_or_else(|| invalid(format!("span {span} exceeds sentence {}", rec.sent_id)))?;
        if let Some(given) = &rec.surface {
            if given != actual {
                return Err(invalid(format!(
                    "surface {given:?} does not match text {actual:?}"
                )));
            }
        }
        if actual.trim().is_empty() {
            return Err(invalid(format!("mention {span} is blank")));
        }
        let ner = NerMention {
            sent_id: rec.sent_id,
            span,
            surface: actual.to_string(),
            label: rec.label,
        };
        let Some(mention) = filter_volitional(std::slice::from_ref(&ner)).pop() else {
            continue;
        };
        let predicted = PredictedMention {
            mention,
            polarity: rec.polarity,
        };
        match grouped.iter_mut().find(|(d, _)| *d == rec.doc_id) {
            Some((_, list)) => {
                if list.iter().any(|p| {
                    p.mention.sent_id == predicted.mention.sent_id
                        && p.mention.span == predicted.mention.span
                }) {
                    return Err(invalid(format!("duplicate mention {span} in {}", predicted.mention.sent_id)));
                }
                list.push(predicted)
            }
            None => grouped.push((rec.doc_id, vec![predicted])),
        }
    }
    Ok(grouped)
}

pub fn write_mention_file(mentions: &[(String, PredictedMention)]) -> String {
    let mut out = String::new();
    for (doc_id, p) in mentions {
        let rec = PredictedRecord {
            doc_id: doc_id.clone(),
            sent_id: p.mention.sent_id.clone(),
            start: p.mention.span.start(),
            end: p.mention.span.end(),
            label: p.mention.label.as_str().to_string(),
            surface: Some(p.mention.surface.clone()),
            polarity: p.polarity,
        };
        out.push_str(&serde_json::to_string(&rec).expect("mention serializes"));
        out.push('\n');
    }
    out
}
