//! Entity-level sentiment analysis toolkit.
//!
//! Derives target-, sentence- and document-level labels from fine-grained
//! opinion annotations, clusters PER/ORG mentions into document-level
//! entities, aggregates sentiment to those entities by document, sentence or
//! target proxy, and scores the result against gold entity annotations.
//!
//! Ratios are generic over [`Score`]; the aliases below fix the common
//! choices.

pub mod aggregate;
pub mod conll;
pub mod entity_file;
pub mod error;
pub mod eval;
pub mod fine;
pub mod labels;
pub mod model;
pub mod resolve;
pub mod scalar;
pub mod span;

pub use aggregate::{AggregatedPolarity, Strategy};
pub use error::{AggregateError, ConllError, CorpusError, EntityFileError, EvalError, LabelError};
pub use labels::{DocLabel, SentenceLabel};
pub use model::{
    Category, Document, Entity, EntityLabel, EntityMention, Intensity, Opinion, Polarity,
    Sentence, Sentiment, TargetLabel,
};
pub use scalar::{Rational, Score};
pub use span::Span;

/// Exact scores, used wherever published figures are compared.
pub type ExactPrf = eval::PrfScores<Rational>;
pub type ExactAccuracy = eval::Accuracy<Rational>;
/// Floating-point scores for display and JSON output.
pub type Prf = eval::PrfScores<f64>;
pub type Accuracy = eval::Accuracy<f64>;
pub type Prf32 = eval::PrfScores<f32>;
