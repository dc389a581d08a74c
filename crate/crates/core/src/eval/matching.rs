//! One-to-one alignment of predicted entities with gold entities.
//!
//! A gold/predicted pair is a candidate when some gold mention and some
//! predicted mention in the same sentence share at least one character.
//! Candidates are taken greedily by total overlapping characters (largest
//! first), ties going to the earlier gold entity and then the earlier
//! prediction. NER labels are ignored.

use std::collections::BTreeMap;

use crate::model::Entity;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    /// `(gold index, predicted index)` into the slices given to [`match_entities`].
    pub pairs: Vec<(usize, usize)>,
    pub missed: Vec<usize>,
    pub false_positives: Vec<usize>,
}

/// Characters shared between the mentions of two entities.
pub fn overlap_chars(gold: &Entity, pred: &Entity) -> usize {
    if gold.doc_id != pred.doc_id {
        return 0;
    }
    gold.mentions
        .iter()
        .flat_map(|g| {
            pred.mentions
                .iter()
                .filter(move |p| p.sent_id == g.sent_id)
                .map(move |p| g.span.overlap_len(&p.span))
        })
        .sum()
}

pub fn match_entities(gold: &[Entity], pred: &[Entity]) -> Matching {
    let mut docs: BTreeMap<&str, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, g) in gold.iter().enumerate() {
        docs.entry(&g.doc_id).or_default().0.push(i);
    }
    for (j, p) in pred.iter().enumerate() {
        docs.entry(&p.doc_id).or_default().1.push(j);
    }

    let mut matching = Matching::default();
    for (golds, preds) in docs.values() {
        let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
        for &g in golds {
            for &p in preds {
                let score = overlap_chars(&gold[g], &pred[p]);
                if score > 0 {
                    candidates.push((score, g, p));
                }
            }
        }
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut gold_used = vec![false; gold.len()];
        let mut pred_used = vec![false; pred.len()];
        for (_, g, p) in candidates {
            if !gold_used[g] && !pred_used[p] {
                gold_used[g] = true;
                pred_used[p] = true;
                matching.pairs.push((g, p));
            }
        }
        matching
            .missed
            .extend(golds.iter().copied().filter(|&g| !gold_used[g]));
        matching
            .false_positives
            .extend(preds.iter().copied().filter(|&p| !pred_used[p]));
    }
    matching.pairs.sort_unstable();
    matching.missed.sort_unstable();
    matching.false_positives.sort_unstable();
    matching
}
