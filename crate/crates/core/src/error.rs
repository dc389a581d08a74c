use thiserror::Error;

use crate::span::Span;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanError {
    #[error("span {start}:{end} is empty or reversed")]
    Empty { start: usize, end: usize },
    #[error("malformed span {0:?}, expected \"start:end\"")]
    Syntax(String),
}

/// Errors raised while ingesting or validating the fine-grained corpus.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("malformed JSON at byte {byte} (line {line}, column {column}): {message}")]
    Json {
        byte: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document {doc_id}{}: {message}", sent_suffix(.sent_id))]
    Validation {
        doc_id: String,
        sent_id: Option<String>,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn sent_suffix(sent_id: &Option<String>) -> String {
    match sent_id {
        Some(id) => format!(" sentence {id}"),
        None => String::new(),
    }
}

impl CorpusError {
    pub(crate) fn doc(doc_id: &str, message: impl Into<String>) -> Self {
        CorpusError::Validation {
            doc_id: doc_id.to_string(),
            sent_id: None,
            message: message.into(),
        }
    }

    pub(crate) fn sent(doc_id: &str, sent_id: &str, message: impl Into<String>) -> Self {
        CorpusError::Validation {
            doc_id: doc_id.to_string(),
            sent_id: Some(sent_id.to_string()),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConllError {
    #[error("sentence {sent_id}: target span {span} is not aligned to token boundaries")]
    Alignment { sent_id: String, span: Span },
    #[error("sentence {sent_id}: target spans {first} and {second} share tokens")]
    OverlappingTargets {
        sent_id: String,
        first: String,
        second: String,
    },
    #[error("sentence {sent_id}: token {token:?} cannot be written to a tab-separated line")]
    UnwritableToken { sent_id: String, token: String },
    #[error("line {line}: unknown tag {tag:?}")]
    UnknownTag { line: usize, tag: String },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum EntityFileError {
    #[error("line {line}: malformed JSON: {message}")]
    Json { line: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
    #[error("line {line}: duplicate entity_id {entity_id:?}")]
    DuplicateId { line: usize, entity_id: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("rating {0} outside 1..=6")]
    RatingOutOfRange(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AggregateError {
    #[error("no sentence label for sentence {sent_id}")]
    MissingSentenceLabel { sent_id: String },
    #[error("entity {entity_id} refers to unknown document {doc_id}")]
    UnknownDocument { entity_id: String, doc_id: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no proxy prediction for gold entity {entity_id}")]
    MissingProxy { entity_id: String },
    #[error("entity {entity_id} has no polarity")]
    Unlabeled { entity_id: String },
}
