//! Reader and writer for the fine-grained opinion corpus (JSON).
//!
//! Span fields of an opinion accept three layouts:
//! `["0:3", "8:12"]`, `[["0:3", "8:12"]]` (the canonical form written back out)
//! and the `[[texts], [offsets]]` pair used by the original corpus release, in
//! which case every text is checked against the sentence. Opinion keys may use
//! either the lowercase names or the original capitalized ones (`Source`,
//! `Target`, `Polar_expression`, `Polarity`, `Intensity`).
//!
//! Mentions with NER labels other than PER and ORG are dropped on read.

use std::io::Read;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CorpusError;
use crate::model::{Category, Document, Intensity, NerMention, Opinion, Polarity, Sentence};
use crate::resolve::filter_volitional;
use crate::span::Span;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    doc_id: String,
    rating: i64,
    category: Category,
    sentences: Vec<RawSentence>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSentence {
    sent_id: String,
    text: String,
    #[serde(default)]
    tokens: Option<Vec<Span>>,
    #[serde(default)]
    opinions: Vec<RawOpinion>,
    #[serde(default)]
    mentions: Vec<RawMention>,
}

#[derive(Deserialize)]
struct RawOpinion {
    #[serde(default, alias = "Source")]
    holder: Value,
    #[serde(default, alias = "Target")]
    target: Value,
    #[serde(alias = "Polar_expression")]
    polar_expression: Value,
    #[serde(alias = "Polarity")]
    polarity: Polarity,
    #[serde(alias = "Intensity")]
    intensity: Intensity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMention {
    start: usize,
    end: usize,
    label: String,
    #[serde(default)]
    surface: Option<String>,
}

/// Reads a JSON array of documents and validates every one of them.
pub fn parse_fine_corpus<R: Read>(mut reader: R) -> Result<Vec<Document>, CorpusError> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    parse_fine_slice(&bytes)
}

pub fn parse_fine_slice(bytes: &[u8]) -> Result<Vec<Document>, CorpusError> {
    let raw: Vec<RawDocument> =
        serde_json::from_slice(bytes).map_err(|e| json_error(bytes, &e))?;
    let mut ids = std::collections::HashSet::new();
    let mut docs = Vec::with_capacity(raw.len());
    for r in raw {
        let doc = convert_document(r)?;
        if !ids.insert(doc.doc_id.clone()) {
            return Err(CorpusError::doc(&doc.doc_id, "duplicate doc_id"));
        }
        docs.push(doc);
    }
    Ok(docs)
}

#[derive(Deserialize)]
struct ReleaseSentence {
    sent_id: String,
    text: String,
    #[serde(default)]
    opinions: Vec<RawOpinion>,
}

#[derive(Deserialize)]
struct ReleaseMetadata {
    rating: i64,
    category: Category,
}

/// Reads the sentence-level layout of the public corpus release together with
/// the review metadata (`{"<doc_id>": {"rating": .., "category": ..}, ...}`).
///
/// Sentence ids look like `000761-01-01`; everything before the first `-` is
/// the document id. Sentences are grouped in file order.
pub fn parse_release(sentences: &[u8], metadata: &[u8]) -> Result<Vec<Document>, CorpusError> {
    let raw: Vec<ReleaseSentence> =
        serde_json::from_slice(sentences).map_err(|e| json_error(sentences, &e))?;
    let meta: std::collections::HashMap<String, ReleaseMetadata> =
        serde_json::from_slice(metadata).map_err(|e| json_error(metadata, &e))?;
    let mut grouped: Vec<RawDocument> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for rs in raw {
        let doc_id = rs.sent_id.split('-').next().unwrap_or_default().to_string();
        let i = match index.get(&doc_id) {
            Some(&i) => i,
            None => {
                let m = meta
                    .get(&doc_id)
                    .ok_or_else(|| CorpusError::doc(&doc_id, "no metadata for document"))?;
                grouped.push(RawDocument {
                    doc_id: doc_id.clone(),
                    rating: m.rating,
                    category: m.category,
                    sentences: Vec::new(),
                });
                index.insert(doc_id, grouped.len() - 1);
                grouped.len() - 1
            }
        };
        grouped[i].sentences.push(RawSentence {
            sent_id: rs.sent_id,
            text: rs.text,
            tokens: None,
            opinions: rs.opinions,
            mentions: Vec::new(),
        });
    }
    grouped.into_iter().map(convert_document).collect()
}

fn json_error(bytes: &[u8], err: &serde_json::Error) -> CorpusError {
    let (line, column) = (err.line(), err.column());
    let line_start: usize = bytes
        .split(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum();
    CorpusError::Json {
        byte: (line_start + column.saturating_sub(1)).min(bytes.len()),
        line,
        column,
        message: err.to_string(),
    }
}

fn convert_document(raw: RawDocument) -> Result<Document, CorpusError> {
    let doc_id = raw.doc_id;
    if !(1..=6).contains(&raw.rating) {
        return Err(CorpusError::doc(
            &doc_id,
            format!("rating {} outside 1..=6", raw.rating),
        ));
    }
    let mut sentences = Vec::with_capacity(raw.sentences.len());
    for rs in raw.sentences {
        sentences.push(convert_sentence(&doc_id, rs)?);
    }
    let doc = Document {
        doc_id,
        rating: raw.rating as u8,
        category: raw.category,
        sentences,
    };
    doc.validate()?;
    Ok(doc)
}

fn convert_sentence(doc_id: &str, raw: RawSentence) -> Result<Sentence, CorpusError> {
    let sent_id = raw.sent_id;
    let text = raw.text;
    let err = |msg: String| CorpusError::sent(doc_id, &sent_id, msg);

    let mut opinions = Vec::with_capacity(raw.opinions.len());
    for ro in raw.opinions {
        opinions.push(Opinion {
            holder: span_field(&ro.holder, &text).map_err(|m| err(format!("holder: {m}")))?,
            target: span_field(&ro.target, &text).map_err(|m| err(format!("target: {m}")))?,
            polar_expression: span_field(&ro.polar_expression, &text)
                .map_err(|m| err(format!("polar_expression: {m}")))?,
            polarity: ro.polarity,
            intensity: ro.intensity,
        });
    }

    let mut ner = Vec::with_capacity(raw.mentions.len());
    for rm in raw.mentions {
        let span = Span::new(rm.start, rm.end).map_err(|e| err(e.to_string()))?;
        let actual = span
            .slice(&text)
            .ok_or_else(|| err(format!("mention span {span} exceeds sentence text")))?;
        if let Some(given) = &rm.surface {
            if given != actual {
                return Err(err(format!(
                    "mention {span} surface {given:?} does not match text {actual:?}"
                )));
            }
        }
        ner.push(NerMention {
            sent_id: sent_id.clone(),
            span,
            surface: actual.to_string(),
            label: rm.label,
        });
    }

    let mut sentence = Sentence {
        mentions: filter_volitional(&ner),
        sent_id,
        text,
        tokens: raw.tokens,
        opinions,
    };
    sentence.canonicalize();
    Ok(sentence)
}

fn span_strings(items: &[Value]) -> Result<Vec<Span>, String> {
    items
        .iter()
        .map(|v| match v {
            Value::String(s) => s.parse::<Span>().map_err(|e| e.to_string()),
            other => Err(format!("expected a \"start:end\" string, found {other}")),
        })
        .collect()
}

fn span_field(value: &Value, text: &str) -> Result<Vec<Span>, String> {
    let items = match value {
        Value::Null => return Ok(Vec::new()),
        Value::Array(items) => items,
        other => return Err(format!("expected a list of spans, found {other}")),
    };
    let mut spans = match items.as_slice() {
        [] => Vec::new(),
        [Value::Array(offsets)] => span_strings(offsets)?,
        [Value::Array(texts), Value::Array(offsets)] => {
            let spans = span_strings(offsets)?;
            if texts.len() != spans.len() {
                return Err(format!(
                    "{} texts but {} offsets",
                    texts.len(),
                    spans.len()
                ));
            }
            for (t, span) in texts.iter().zip(&spans) {
                let expected = t.as_str().ok_or("span text must be a string")?;
                match span.slice(text) {
                    Some(actual) if actual == expected => {}
                    Some(actual) => {
                        return Err(format!(
                            "span {span} covers {actual:?}, annotated as {expected:?}"
                        ))
                    }
                    None => return Err(format!("span {span} exceeds sentence text")),
                }
            }
            spans
        }
        flat => span_strings(flat)?,
    };
    spans.sort();
    Ok(spans)
}

#[derive(Serialize)]
struct OutDocument<'a> {
    doc_id: &'a str,
    rating: u8,
    category: Category,
    sentences: Vec<OutSentence<'a>>,
}

#[derive(Serialize)]
struct OutSentence<'a> {
    sent_id: &'a str,
    text: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    tokens: Option<&'a [Span]>,
    opinions: Vec<OutOpinion<'a>>,
    mentions: Vec<OutMention>,
}

#[derive(Serialize)]
struct OutOpinion<'a> {
    holder: Vec<&'a [Span]>,
    target: Vec<&'a [Span]>,
    polar_expression: Vec<&'a [Span]>,
    polarity: Polarity,
    intensity: Intensity,
}

#[derive(Serialize)]
struct OutMention {
    start: usize,
    end: usize,
    label: &'static str,
}

fn nest(spans: &[Span]) -> Vec<&[Span]> {
    if spans.is_empty() {
        Vec::new()
    } else {
        vec![spans]
    }
}

/// Writes documents in the canonical layout read by [`parse_fine_corpus`].
pub fn write_fine_corpus(docs: &[Document]) -> String {
    let out: Vec<OutDocument<'_>> = docs
        .iter()
        .map(|d| OutDocument {
            doc_id: &d.doc_id,
            rating: d.rating,
            category: d.category,
            sentences: d
                .sentences
                .iter()
                .map(|s| OutSentence {
                    sent_id: &s.sent_id,
                    text: &s.text,
                    tokens: s.tokens.as_deref(),
                    opinions: s
                        .opinions
                        .iter()
                        .map(|o| OutOpinion {
                            holder: nest(&o.holder),
                            target: nest(&o.target),
                            polar_expression: nest(&o.polar_expression),
                            polarity: o.polarity,
                            intensity: o.intensity,
                        })
                        .collect(),
                    mentions: s
                        .mentions
                        .iter()
                        .map(|m| OutMention {
                            start: m.span.start(),
                            end: m.span.end(),
                            label: m.label.as_str(),
                        })
                        .collect(),
                })
                .collect(),
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&out).expect("corpus serializes");
    text.push('\n');
    text
}
