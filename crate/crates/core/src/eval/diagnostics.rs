//! Heuristic buckets for entities the target proxy gets wrong.
//!
//! The buckets are hints for manual review, not error categories: a
//! "no-overlap" entity may need coreference or target–entity linking, while
//! "polarity-flip" often reflects annotator disagreement.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::aggregate::AggregatedPolarity;
use crate::model::{Entity, Sentiment};
use crate::resolve::{normalize_mention, strips_genitive};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bucket {
    /// Proxy tie between positive and negative evidence.
    MixTie,
    /// No target overlaps the entity although gold is non-neutral.
    NoOverlap,
    /// Both sides non-neutral but different.
    PolarityFlip,
    /// Gold Neutral, proxy Positive or Negative.
    GoldNeutral,
}

impl Bucket {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bucket::MixTie => "mix-tie",
            Bucket::NoOverlap => "no-overlap",
            Bucket::PolarityFlip => "polarity-flip",
            Bucket::GoldNeutral => "gold-neutral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub entity_id: String,
    pub canonical: String,
    pub gold: Sentiment,
    pub proxy: Sentiment,
    pub bucket: Bucket,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrippedForm {
    pub entity_id: String,
    pub surface: String,
    pub normalized: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnosticsReport {
    pub mismatches: Vec<Mismatch>,
    /// Mention surfaces that lost a trailing "s" during normalization.
    pub stripped_genitives: Vec<StrippedForm>,
}

pub fn bucket_for(gold: Sentiment, proxy: Sentiment) -> Option<Bucket> {
    use Sentiment::*;
    match (gold, proxy) {
        (g, p) if g == p => None,
        (_, Mixed) => Some(Bucket::MixTie),
        (Negative | Positive, Neutral) => Some(Bucket::NoOverlap),
        (Negative | Positive, _) => Some(Bucket::PolarityFlip),
        _ => Some(Bucket::GoldNeutral),
    }
}

/// Buckets every gold entity whose proxy polarity differs. Entities without a
/// proxy result or a gold polarity are skipped.
pub fn diagnostics<H: std::hash::BuildHasher>(
    gold: &[Entity],
    proxy_target: &HashMap<String, AggregatedPolarity, H>,
) -> DiagnosticsReport {
    let mut mismatches = Vec::new();
    let mut stripped_genitives = Vec::new();
    for e in gold {
        for m in &e.mentions {
            if strips_genitive(&m.surface) {
                stripped_genitives.push(StrippedForm {
                    entity_id: e.entity_id.clone(),
                    surface: m.surface.clone(),
                    normalized: normalize_mention(&m.surface),
                });
            }
        }
        let (Some(g), Some(p)) = (e.polarity, proxy_target.get(&e.entity_id)) else {
            continue;
        };
        if let Some(bucket) = bucket_for(g, p.value) {
            mismatches.push(Mismatch {
                entity_id: e.entity_id.clone(),
                canonical: e.canonical.clone(),
                gold: g,
                proxy: p.value,
                bucket,
            });
        }
    }
    DiagnosticsReport {
        mismatches,
        stripped_genitives,
    }
}

impl DiagnosticsReport {
    pub fn count(&self, bucket: Bucket) -> usize {
        self.mismatches.iter().filter(|m| m.bucket == bucket).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<16}{:>6}", "Bucket", "#");
        for b in [Bucket::MixTie, Bucket::NoOverlap, Bucket::PolarityFlip, Bucket::GoldNeutral] {
            let _ = writeln!(out, "{:<16}{:>6}", b.as_str(), self.count(b));
        }
        for m in &self.mismatches {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\tgold={}\tproxy={}",
                m.bucket.as_str(),
                m.entity_id,
                m.canonical,
                m.gold,
                m.proxy
            );
        }
        if !self.stripped_genitives.is_empty() {
            let _ = writeln!(out, "\nStripped final -s (review for plurals):");
            for s in &self.stripped_genitives {
                let _ = writeln!(out, "{}\t{} -> {}", s.entity_id, s.surface, s.normalized);
            }
        }
        out
    }
}
