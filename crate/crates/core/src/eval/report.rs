//! Corpus and gold-annotation distribution tables.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::labels::derive_target_labels;
use crate::model::{Category, Document, Entity, EntityLabel, Sentiment};
use crate::scalar::round_decimal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub key: String,
    pub docs: u64,
    pub sents: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarityRow {
    pub polarity: Sentiment,
    pub org: u64,
    pub per: u64,
    pub total: u64,
    /// Whole-number percentage of all gold entities.
    pub percent: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MentionRow {
    /// "1", "2" or "3+".
    pub bucket: &'static str,
    pub entities: u64,
    pub mentions: u64,
}

/// Gold polarity counts per document-rating group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatingPolarityRow {
    pub ratings: &'static str,
    pub negative: u64,
    pub neutral: u64,
    pub positive: u64,
    pub entities: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldDistribution {
    pub entities: u64,
    pub mentions: u64,
    pub polarity: Vec<PolarityRow>,
    pub mentions_per_entity: Vec<MentionRow>,
    pub polarity_by_rating: Vec<RatingPolarityRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionReport {
    pub documents: u64,
    pub sentences: u64,
    pub unique_targets: u64,
    pub by_rating: Vec<CountRow>,
    pub by_category: Vec<CountRow>,
    pub gold: Option<GoldDistribution>,
}

const RATING_GROUPS: [(&str, &[u8]); 4] = [("1-2", &[1, 2]), ("3", &[3]), ("4", &[4]), ("5-6", &[5, 6])];

pub fn distribution_report(corpus: &[Document], gold: Option<&[Entity]>) -> DistributionReport {
    let mut by_rating: Vec<CountRow> = (1..=6)
        .map(|r: u8| CountRow {
            key: r.to_string(),
            docs: 0,
            sents: 0,
        })
        .collect();
    let mut by_category: Vec<CountRow> = Category::ALL
        .iter()
        .map(|c| CountRow {
            key: c.to_string(),
            docs: 0,
            sents: 0,
        })
        .collect();
    let mut unique_targets = 0u64;
    for doc in corpus {
        let n = doc.sentences.len() as u64;
        let rating = &mut by_rating[usize::from(doc.rating.clamp(1, 6)) - 1];
        rating.docs += 1;
        rating.sents += n;
        let cat = Category::ALL
            .iter()
            .position(|c| *c == doc.category)
            .expect("every category is listed");
        by_category[cat].docs += 1;
        by_category[cat].sents += n;
        unique_targets += doc
            .sentences
            .iter()
            .map(|s| derive_target_labels(s).len() as u64)
            .sum::<u64>();
    }

    DistributionReport {
        documents: corpus.len() as u64,
        sentences: corpus.iter().map(|d| d.sentences.len() as u64).sum(),
        unique_targets,
        by_rating,
        by_category,
        gold: gold.map(|g| gold_distribution(corpus, g)),
    }
}

fn gold_distribution(corpus: &[Document], gold: &[Entity]) -> GoldDistribution {
    let total = gold.len() as u64;
    let polarity = [Sentiment::Positive, Sentiment::Negative, Sentiment::Neutral]
        .into_iter()
        .map(|p| {
            let with = |label| {
                gold.iter()
                    .filter(|e| e.polarity == Some(p) && e.label == label)
                    .count() as u64
            };
            let (org, per) = (with(EntityLabel::Org), with(EntityLabel::Per));
            PolarityRow {
                polarity: p,
                org,
                per,
                total: org + per,
                percent: if total == 0 {
                    "0".into()
                } else {
                    round_decimal((org + per) * 100, total, 0)
                },
            }
        })
        .collect();

    let bucket = |n: usize| match n {
        1 => 0,
        2 => 1,
        _ => 2,
    };
    let mut mentions_per_entity = vec![
        MentionRow { bucket: "1", entities: 0, mentions: 0 },
        MentionRow { bucket: "2", entities: 0, mentions: 0 },
        MentionRow { bucket: "3+", entities: 0, mentions: 0 },
    ];
    for e in gold.iter().filter(|e| !e.mentions.is_empty()) {
        let row = &mut mentions_per_entity[bucket(e.mentions.len())];
        row.entities += 1;
        row.mentions += e.mentions.len() as u64;
    }

    let ratings: HashMap<&str, u8> = corpus.iter().map(|d| (d.doc_id.as_str(), d.rating)).collect();
    let polarity_by_rating = RATING_GROUPS
        .iter()
        .map(|(name, members)| {
            let in_group: Vec<&Entity> = gold
                .iter()
                .filter(|e| ratings.get(e.doc_id.as_str()).is_some_and(|r| members.contains(r)))
                .collect();
            let count = |p| in_group.iter().filter(|e| e.polarity == Some(p)).count() as u64;
            RatingPolarityRow {
                ratings: name,
                negative: count(Sentiment::Negative),
                neutral: count(Sentiment::Neutral),
                positive: count(Sentiment::Positive),
                entities: in_group.len() as u64,
            }
        })
        .collect();

    GoldDistribution {
        entities: total,
        mentions: gold.iter().map(|e| e.mentions.len() as u64).sum(),
        polarity,
        mentions_per_entity,
        polarity_by_rating,
    }
}

impl DistributionReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<12}{:>7}{:>7}", "Rating", "Docs", "Sents");
        for row in &self.by_rating {
            let _ = writeln!(out, "{:<12}{:>7}{:>7}", row.key, row.docs, row.sents);
        }
        let _ = writeln!(out, "{:<12}{:>7}{:>7}\n", "Total", self.documents, self.sentences);

        let _ = writeln!(out, "{:<12}{:>7}{:>7}", "Category", "Docs", "Sents");
        for row in &self.by_category {
            let _ = writeln!(out, "{:<12}{:>7}{:>7}", row.key, row.docs, row.sents);
        }
        let _ = writeln!(out, "{:<12}{:>7}{:>7}\n", "Total", self.documents, self.sentences);
        let _ = writeln!(out, "Unique sentiment targets: {}", self.unique_targets);

        if let Some(g) = &self.gold {
            let _ = writeln!(out, "\n{:<12}{:>7}{:>7}{:>7}{:>7}", "Polarity", "ORG", "PER", "#", "%");
            for row in &g.polarity {
                let short = &row.polarity.as_str()[..3];
                let _ = writeln!(
                    out,
                    "{:<12}{:>7}{:>7}{:>7}{:>6}%",
                    short, row.org, row.per, row.total, row.percent
                );
            }
            let org: u64 = g.polarity.iter().map(|r| r.org).sum();
            let per: u64 = g.polarity.iter().map(|r| r.per).sum();
            let pct = if g.entities == 0 { "0" } else { "100" };
            let _ = writeln!(out, "{:<12}{:>7}{:>7}{:>7}{:>6}%", "Total", org, per, g.entities, pct);

            let _ = writeln!(out, "\n{:<12}{:>10}{:>10}", "Mentions", "Entities", "Mentions");
            for row in &g.mentions_per_entity {
                let _ = writeln!(out, "{:<12}{:>10}{:>10}", row.bucket, row.entities, row.mentions);
            }
            let _ = writeln!(out, "{:<12}{:>10}{:>10}", "Total", g.entities, g.mentions);

            let _ = writeln!(out, "\n{:<12}{:>7}{:>7}{:>7}{:>10}", "Rating", "Neg", "Neu", "Pos", "Entities");
            for row in &g.polarity_by_rating {
                let _ = writeln!(
                    out,
                    "{:<12}{:>7}{:>7}{:>7}{:>10}",
                    row.ratings, row.negative, row.neutral, row.positive, row.entities
                );
            }
        }
        out
    }
}
