//! Volitional-entity filtering and substring-based mention clustering.
//!
//! Two mentions corefer when the normalized token sequence of one occurs as a
//! contiguous run of whole tokens inside the other ("John" / "John Wayne",
//! never "John" / "Johnson"). Normalization applies NFC and strips a
//! genitive "-s" from the final token. Matching is case-sensitive and
//! document-scoped; clusters are the transitive closure of the relation.

use unicode_normalization::UnicodeNormalization;

use crate::model::{Document, Entity, EntityLabel, EntityMention, NerMention, Sentiment};

/// Keeps PER and ORG mentions in their original order.
pub fn filter_volitional(mentions: &[NerMention]) -> Vec<EntityMention> {
    mentions
        .iter()
        .filter_map(|m| {
            EntityLabel::from_ner(&m.label).map(|label| EntityMention {
                sent_id: m.sent_id.clone(),
                span: m.span,
                surface: m.surface.clone(),
                label,
            })
        })
        .collect()
}

/// Final tokens shorter than this keep their trailing "s".
const MIN_GENITIVE_TOKEN_CHARS: usize = 3;

fn strip_genitive(token: &str) -> &str {
    if token.chars().count() >= MIN_GENITIVE_TOKEN_CHARS {
        token.strip_suffix('s').unwrap_or(token)
    } else {
        token
    }
}

fn normalized_tokens(surface: &str) -> Vec<String> {
    let nfc: String = surface.nfc().collect();
    let mut tokens: Vec<String> = nfc.split_whitespace().map(str::to_string).collect();
    if let Some(last) = tokens.last_mut() {
        *last = strip_genitive(last).to_string();
    }
    tokens
}

/// NFC-normalizes `surface`, collapses whitespace and strips a trailing
/// genitive "s" from the final token.
pub fn normalize_mention(surface: &str) -> String {
    normalized_tokens(surface).join(" ")
}

/// Whether normalization removed a trailing "s". Such forms are listed in
/// diagnostics because plural names ("Beatles") are stripped as well.
pub fn strips_genitive(surface: &str) -> bool {
    let nfc: String = surface.nfc().collect();
    nfc.split_whitespace()
        .last()
        .is_some_and(|last| strip_genitive(last).len() != last.len())
}

fn contains_run(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty()
        && needle.len() <= haystack.len()
        && haystack.windows(needle.len()).any(|w| w == needle)
}

fn tokens_corefer(a: &[String], b: &[String]) -> bool {
    if a.len() <= b.len() {
        contains_run(b, a)
    } else {
        contains_run(a, b)
    }
}

pub fn mentions_corefer(a: &EntityMention, b: &EntityMention) -> bool {
    tokens_corefer(&normalized_tokens(&a.surface), &normalized_tokens(&b.surface))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller root wins so roots follow document order
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// Sorts mentions by position in `doc`: sentence index, then span.
fn document_order(doc: &Document, mentions: &[EntityMention]) -> Vec<EntityMention> {
    let mut sorted = mentions.to_vec();
    sorted.sort_by_cached_key(|m| {
        (
            doc.sentence_index(&m.sent_id).unwrap_or(usize::MAX),
            m.sent_id.clone(),
            m.span,
            m.label,
        )
    });
    sorted
}

/// Partitions the mentions of one document into entities.
///
/// Entities are returned in order of first mention and numbered
/// `<doc_id>:e1`, `<doc_id>:e2`, ... The canonical name and label come from
/// the longest mention (by character count), earliest on ties. The result
/// does not depend on the order of `mentions`.
pub fn cluster_mentions(doc: &Document, mentions: &[EntityMention]) -> Vec<Entity> {
    let sorted = document_order(doc, mentions);
    let tokens: Vec<Vec<String>> = sorted.iter().map(|m| normalized_tokens(&m.surface)).collect();
    let mut uf = UnionFind::new(sorted.len());
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            if tokens_corefer(&tokens[i], &tokens[j]) {
                uf.union(i, j);
            }
        }
    }

    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..sorted.len() {
        let root = uf.find(i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(i),
            None => groups.push((root, vec![i])),
        }
    }

    groups
        .into_iter()
        .enumerate()
        .map(|(n, (_, members))| {
            let longest = members
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    let (la, lb) = (sorted[a].surface.chars().count(), sorted[b].surface.chars().count());
                    la.cmp(&lb).then(b.cmp(&a))
                })
                .expect("groups are non-empty");
            Entity {
                doc_id: doc.doc_id.clone(),
                entity_id: format!("{}:e{}", doc.doc_id, n + 1),
                canonical: normalize_mention(&sorted[longest].surface),
                label: sorted[longest].label,
                mentions: members.iter().map(|&i| sorted[i].clone()).collect(),
                polarity: None,
            }
        })
        .collect()
}

/// Clusters the mentions stored in the document itself.
pub fn resolve_document(doc: &Document) -> Vec<Entity> {
    let mentions: Vec<EntityMention> = doc.mentions().cloned().collect();
    cluster_mentions(doc, &mentions)
}

/// A mention predicted by a tagger, optionally with a polarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedMention {
    pub mention: EntityMention,
    pub polarity: Option<Sentiment>,
}

/// Clusters predicted mentions and labels each entity with the sign of the
/// summed mention polarities (Positive +1, Negative -1, Neutral 0).
/// A zero sum is Neutral; entities whose mentions carry no polarity stay unlabeled.
pub fn resolve_predicted(doc: &Document, predicted: &[PredictedMention]) -> Vec<Entity> {
    let mentions: Vec<EntityMention> = predicted.iter().map(|p| p.mention.clone()).collect();
    let mut entities = cluster_mentions(doc, &mentions);
    for entity in &mut entities {
        let polarities: Vec<Sentiment> = entity
            .mentions
            .iter()
            .filter_map(|m| {
                predicted
                    .iter()
                    .find(|p| p.mention.sent_id == m.sent_id && p.mention.span == m.span)
                    .and_then(|p| p.polarity)
            })
            .collect();
        if polarities.is_empty() {
            continue;
        }
        let sum: i32 = polarities
            .iter()
            .map(|p| match p {
                Sentiment::Positive => 1,
                Sentiment::Negative => -1,
                _ => 0,
            })
            .sum();
        entity.polarity = Some(match sum.signum() {
            1 => Sentiment::Positive,
            -1 => Sentiment::Negative,
            _ => Sentiment::Neutral,
        });
    }
    entities
}
