//! Scoring of entity-level predictions and corpus reports.

pub mod confusion;
pub mod diagnostics;
pub mod matching;
pub mod metrics;
pub mod report;

pub use confusion::{ConfusionTable, GoldCol, PredRow};
pub use diagnostics::{diagnostics, Bucket, DiagnosticsReport};
pub use matching::{match_entities, Matching};
pub use metrics::{entity_prf, proxy_accuracy, proxy_accuracy_from_labels, Accuracy, PrfScores};
pub use report::{distribution_report, DistributionReport};
