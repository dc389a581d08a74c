//! Brute-force reference implementations and property checks.
//!
//! Nothing here calls into the code paths it checks: target sums, overlap
//! tests, transitive closure and the proxy rules are re-derived from scratch.
//! Used by this crate's tests and by the CLI acceptance suite.

#![allow(dead_code, clippy::manual_clamp, clippy::needless_range_loop)]

use std::collections::{HashMap, HashSet};

use elsa_core::aggregate::{aggregate_sentence_proxy, aggregate_target_proxy};
use elsa_core::conll::{parse_tsa_str, write_tsa_sentences, TargetValue, TsaSentence, TsaTag};
use elsa_core::entity_file::{parse_entity_str, write_entity_file, PolarityMode};
use elsa_core::fine::{parse_fine_slice, write_fine_corpus};
use elsa_core::labels::{derive_sentence_label, derive_target_labels};
use elsa_core::resolve::{cluster_mentions, filter_volitional, mentions_corefer, normalize_mention};
use elsa_core::{
    Category, Document, Entity, EntityLabel, EntityMention, Intensity, Opinion, Polarity,
    Sentence, Sentiment, Span, TargetLabel,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn sp(a: usize, b: usize) -> Span {
    Span::new(a, b).unwrap()
}

// ---------------------------------------------------------------------------
// Oracles

/// Target sums by linear scan and lookup table; returns `(spans, value)`
/// sorted by spans.
pub fn brute_target_labels(sentence: &Sentence) -> Vec<(Vec<Span>, i8)> {
    let mut targets: Vec<(Vec<Span>, i64)> = Vec::new();
    for op in &sentence.opinions {
        if op.target.is_empty() {
            continue;
        }
        let magnitude = [Intensity::Slight, Intensity::Standard, Intensity::Strong]
            .iter()
            .position(|i| *i == op.intensity)
            .unwrap() as i64
            + 1;
        let signed = if op.polarity == Polarity::Positive { magnitude } else { -magnitude };
        let mut key = op.target.clone();
        key.sort();
        match targets.iter_mut().find(|(k, _)| *k == key) {
            Some((_, total)) => *total += signed,
            None => targets.push((key, signed)),
        }
    }
    let mut out: Vec<(Vec<Span>, i8)> = targets
        .into_iter()
        .map(|(k, v)| {
            let clipped = if v > 3 {
                3
            } else if v < -3 {
                -3
            } else {
                v
            };
            (k, clipped as i8)
        })
        .collect();
    out.sort();
    out
}

fn char_set(span: &Span) -> HashSet<usize> {
    (span.start()..span.end()).collect()
}

/// Target-proxy polarity from per-character overlap sets.
pub fn brute_target_proxy(mentions: &[EntityMention], targets: &[TargetLabel]) -> Sentiment {
    let mut contributing: Vec<&TargetLabel> = Vec::new();
    for t in targets {
        let t_chars: HashSet<usize> = t.span.iter().flat_map(char_set).collect();
        let hit = mentions
            .iter()
            .any(|m| m.sent_id == t.sent_id && char_set(&m.span).intersection(&t_chars).next().is_some());
        if hit && !contributing.contains(&t) {
            contributing.push(t);
        }
    }
    let total: i64 = contributing.iter().map(|t| t.value as i64).sum();
    if contributing.is_empty() {
        Sentiment::Neutral
    } else if total > 0 {
        Sentiment::Positive
    } else if total < 0 {
        Sentiment::Negative
    } else {
        Sentiment::Mixed
    }
}

/// Coreference by padded string containment over normalized forms.
pub fn brute_corefer(a: &str, b: &str) -> bool {
    let pad = |s: &str| format!(" {} ", normalize_mention(s));
    let (pa, pb) = (pad(a), pad(b));
    pa.trim() != "" && pb.trim() != "" && (pa.contains(&pb) || pb.contains(&pa))
}

/// Connected components of the coreference graph via Warshall closure.
/// Each component is a sorted list of input indices; components are sorted.
pub fn closure_components(mentions: &[EntityMention]) -> Vec<Vec<usize>> {
    let n = mentions.len();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            reach[i][j] = i == j || mentions_corefer(&mentions[i], &mentions[j]);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let comp: Vec<usize> = (0..n).filter(|&j| reach[i][j]).collect();
        if !comps.contains(&comp) {
            comps.push(comp);
        }
    }
    comps.sort();
    comps
}

/// Maps each entity of `entities` back to indices into `input`.
pub fn entity_partition(input: &[EntityMention], entities: &[Entity]) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = entities
        .iter()
        .map(|e| {
            let mut idx: Vec<usize> = e
                .mentions
                .iter()
                .map(|m| input.iter().position(|x| x == m).expect("mention from input"))
                .collect();
            idx.sort();
            idx
        })
        .collect();
    parts.sort();
    parts
}

// ---------------------------------------------------------------------------
// Fixtures and table replay

pub fn mention(sent: &str, start: usize, surface: &str) -> EntityMention {
    EntityMention {
        sent_id: sent.into(),
        span: sp(start, start + surface.chars().count()),
        surface: surface.into(),
        label: EntityLabel::Per,
    }
}

pub fn entity_of(id: &str, mentions: Vec<EntityMention>, polarity: Option<Sentiment>) -> Entity {
    Entity {
        doc_id: "d".into(),
        entity_id: id.into(),
        canonical: id.into(),
        label: EntityLabel::Per,
        mentions,
        polarity,
    }
}

pub fn blank_document(doc_id: &str, sentences: usize) -> Document {
    Document {
        doc_id: doc_id.into(),
        rating: 4,
        category: Category::Misc,
        sentences: (0..sentences)
            .map(|i| Sentence {
                sent_id: format!("s{}", i + 1),
                text: "x".repeat(400),
                tokens: None,
                opinions: vec![],
                mentions: vec![],
            })
            .collect(),
    }
}

/// Expands a published confusion table (rows: proxy class; columns: gold
/// Negative, Neutral, Positive) into gold entities and a proxy assignment.
pub fn expand_table(rows: &[(Sentiment, [u64; 3])]) -> (Vec<Entity>, HashMap<String, Sentiment>) {
    let gold_classes = [Sentiment::Negative, Sentiment::Neutral, Sentiment::Positive];
    let mut gold = Vec::new();
    let mut proxy = HashMap::new();
    for (proxy_class, counts) in rows {
        for (g, &n) in gold_classes.iter().zip(counts) {
            for _ in 0..n {
                let id = format!("e{}", gold.len());
                gold.push(entity_of(&id, vec![mention("s1", 0, "x")], Some(*g)));
                proxy.insert(id, *proxy_class);
            }
        }
    }
    (gold, proxy)
}

/// Gold entity ratings table (rows: rating groups) becomes a doc-proxy table:
/// 1-2 Negative, 3 and 4 Neutral, 5-6 Positive.
pub fn doc_proxy_rows() -> Vec<(Sentiment, [u64; 3])> {
    vec![
        (Sentiment::Negative, [15, 29, 3]),
        (Sentiment::Neutral, [3, 12, 4]),
        (Sentiment::Neutral, [5, 53, 24]),
        (Sentiment::Positive, [5, 73, 53]),
    ]
}

pub fn sentence_proxy_rows() -> Vec<(Sentiment, [u64; 3])> {
    vec![
        (Sentiment::Mixed, [9, 4, 9]),
        (Sentiment::Negative, [10, 17, 0]),
        (Sentiment::Neutral, [8, 113, 4]),
        (Sentiment::Positive, [1, 33, 71]),
    ]
}

pub fn target_proxy_rows() -> Vec<(Sentiment, [u64; 3])> {
    vec![
        (Sentiment::Mixed, [3, 0, 4]),
        (Sentiment::Negative, [11, 0, 3]),
        (Sentiment::Neutral, [10, 162, 21]),
        (Sentiment::Positive, [4, 5, 56]),
    ]
}

/// Model confusion matrix: rows predicted Neg/Neu/Pos/Missed, columns gold
/// Neg/Neu/Pos plus false positives.
pub const MODEL_MATRIX: [(Option<Sentiment>, [u64; 4]); 4] = [
    (Some(Sentiment::Negative), [4, 0, 4, 1]),
    (Some(Sentiment::Neutral), [13, 154, 27, 35]),
    (Some(Sentiment::Positive), [9, 6, 48, 8]),
    (None, [2, 7, 5, 0]),
];

/// Builds gold and predicted entities reproducing [`MODEL_MATRIX`]: every
/// matched pair shares a mention span, missed gold entities and false
/// positives sit in sentences of their own.
pub fn expand_model_matrix() -> (Vec<Entity>, Vec<Entity>) {
    let gold_classes = [Sentiment::Negative, Sentiment::Neutral, Sentiment::Positive];
    let mut gold = Vec::new();
    let mut pred = Vec::new();
    let mut n = 0usize;
    for (pred_class, counts) in MODEL_MATRIX {
        for (col, &count) in counts.iter().enumerate() {
            for _ in 0..count {
                n += 1;
                let sent = format!("s{n}");
                let m = vec![mention(&sent, 0, "Navn")];
                match (pred_class, col) {
                    (Some(p), 3) => pred.push(entity_of(&format!("p{n}"), m, Some(p))),
                    (Some(p), c) => {
                        gold.push(entity_of(&format!("g{n}"), m.clone(), Some(gold_classes[c])));
                        pred.push(entity_of(&format!("p{n}"), m, Some(p)));
                    }
                    (None, c) => gold.push(entity_of(&format!("g{n}"), m, Some(gold_classes[c]))),
                }
            }
        }
    }
    (gold, pred)
}

// ---------------------------------------------------------------------------
// Exhaustive checks

/// Every sentence of up to three opinions drawn from
/// {Pos, Neg} x {Slight, Standard, Strong} x {no target, target A, target B}.
pub fn exhaustive_target_labels() -> Result<usize, String> {
    let targets = [vec![], vec![sp(0, 3)], vec![sp(4, 7), sp(10, 12)]];
    let mut choices = Vec::new();
    for polarity in [Polarity::Positive, Polarity::Negative] {
        for intensity in [Intensity::Slight, Intensity::Standard, Intensity::Strong] {
            for t in &targets {
                choices.push(Opinion {
                    polar_expression: vec![sp(13, 15)],
                    target: t.clone(),
                    holder: vec![],
                    polarity,
                    intensity,
                });
            }
        }
    }
    let mut cases = 0;
    let mut stack: Vec<Vec<Opinion>> = vec![vec![]];
    while let Some(ops) = stack.pop() {
        let sentence = Sentence {
            sent_id: "s".into(),
            text: "x".repeat(20),
            tokens: None,
            opinions: ops.clone(),
            mentions: vec![],
        };
        let got: Vec<(Vec<Span>, i8)> = derive_target_labels(&sentence)
            .into_iter()
            .map(|t| (t.span, t.value))
            .collect();
        let want = brute_target_labels(&sentence);
        if got != want {
            return Err(format!("opinions {ops:?}: got {got:?}, oracle {want:?}"));
        }
        cases += 1;
        if ops.len() < 3 {
            for c in &choices {
                let mut next = ops.clone();
                next.push(c.clone());
                stack.push(next);
            }
        }
    }
    Ok(cases)
}

fn subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for item in items {
        let extended: Vec<Vec<T>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut s = s.clone();
                s.push(item.clone());
                s
            })
            .collect();
        out.extend(extended);
    }
    out
}

/// Every entity of one to three mentions against up to three distinct targets
/// with values in -3..=3, compared with [`brute_target_proxy`].
pub fn exhaustive_target_proxy() -> Result<usize, String> {
    let mention_slots = [mention("s1", 0, "Anna"), mention("s1", 6, "Berg"), mention("s2", 12, "Anna")];
    let target_slots: Vec<(&str, Vec<Span>)> = vec![
        ("s1", vec![sp(0, 2)]),
        ("s1", vec![sp(3, 7)]),
        ("s1", vec![sp(8, 9), sp(11, 12)]),
        ("s2", vec![sp(0, 20)]),
        ("s2", vec![sp(16, 18)]),
    ];
    let mention_sets: Vec<Vec<EntityMention>> = subsets(&mention_slots, 3)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    let target_sets = subsets(&target_slots, 3);
    let mut cases = 0;
    for ms in &mention_sets {
        let entity = entity_of("e", ms.clone(), None);
        for ts in &target_sets {
            let k = ts.len() as u32;
            for code in 0..7usize.pow(k) {
                let mut c = code;
                let labels: Vec<TargetLabel> = ts
                    .iter()
                    .map(|(sent, spans)| {
                        let value = (c % 7) as i8 - 3;
                        c /= 7;
                        TargetLabel {
                            sent_id: sent.to_string(),
                            span: spans.clone(),
                            value,
                        }
                    })
                    .collect();
                let mut by_sent: HashMap<String, Vec<TargetLabel>> = HashMap::new();
                for t in &labels {
                    by_sent.entry(t.sent_id.clone()).or_default().push(t.clone());
                }
                let got = aggregate_target_proxy(&entity, &by_sent).value;
                let want = brute_target_proxy(ms, &labels);
                if got != want {
                    return Err(format!("mentions {ms:?} targets {labels:?}: got {got}, oracle {want}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

// ---------------------------------------------------------------------------
// Generators

const WORDS: [&str; 10] = ["Jo", "Nesbø", "skriver", "godt", "om", "Harry", "Hole", "og", "Beatles", "bandet"];

fn token_spans(words: &[&str]) -> Vec<Span> {
    let mut spans = Vec::new();
    let mut pos = 0;
    for w in words {
        let len = w.chars().count();
        spans.push(sp(pos, pos + len));
        pos += len + 1;
    }
    spans
}

fn intensity_of(i: u8) -> Intensity {
    match i % 3 {
        0 => Intensity::Slight,
        1 => Intensity::Standard,
        _ => Intensity::Strong,
    }
}

/// Random sentence with opinions whose spans align to whitespace tokens.
pub fn arb_sentence() -> impl Strategy<Value = Sentence> {
    (
        prop::collection::vec(0..WORDS.len(), 1..10),
        prop::collection::vec((any::<usize>(), any::<usize>(), 0usize..3, any::<bool>(), any::<u8>()), 0..6),
    )
        .prop_map(|(word_idx, raw_ops)| {
            let words: Vec<&str> = word_idx.iter().map(|&i| WORDS[i]).collect();
            let text = words.join(" ");
            let toks = token_spans(&words);
            let n = toks.len();
            let opinions = raw_ops
                .into_iter()
                .map(|(pe, tgt, tlen, pos, inten)| {
                    let t0 = tgt % n;
                    let target = if tlen == 0 {
                        vec![]
                    } else {
                        let t1 = (t0 + tlen - 1).min(n - 1);
                        vec![sp(toks[t0].start(), toks[t1].end())]
                    };
                    Opinion {
                        polar_expression: vec![toks[pe % n]],
                        target,
                        holder: vec![],
                        polarity: if pos { Polarity::Positive } else { Polarity::Negative },
                        intensity: intensity_of(inten),
                    }
                })
                .collect();
            let mut s = Sentence {
                sent_id: "s1".into(),
                text,
                tokens: None,
                opinions,
                mentions: vec![],
            };
            s.canonicalize();
            s
        })
}

const NAMES: [&str; 13] = [
    "John", "John Wayne", "Wayne", "Clint", "Clint Eastwood", "Eastwoods", "Jo Nesbø", "Nesbøs",
    "Ann", "Anniken", "Elisabeth I", "Elisabeth II", "Elisabeth",
];

/// Up to ten mentions with distinct positions over three sentences.
pub fn arb_mentions(max: usize) -> impl Strategy<Value = Vec<EntityMention>> {
    prop::collection::vec((0..NAMES.len(), 0usize..3, any::<bool>()), 0..=max).prop_map(|raw| {
        raw.into_iter()
            .enumerate()
            .map(|(i, (name, sent, org))| {
                let mut m = mention(&format!("s{}", sent + 1), i * 20, NAMES[name]);
                if org {
                    m.label = EntityLabel::Org;
                }
                m
            })
            .collect()
    })
}

fn arb_targets() -> impl Strategy<Value = Vec<TargetLabel>> {
    prop::collection::vec((0usize..3, 0usize..200, 1usize..25, -3i8..=3), 0..8).prop_map(|raw| {
        let mut seen = HashSet::new();
        raw.into_iter()
            .filter_map(|(sent, start, len, value)| {
                let sent_id = format!("s{}", sent + 1);
                let span = vec![sp(start, start + len)];
                seen.insert((sent_id.clone(), span.clone())).then_some(TargetLabel {
                    sent_id,
                    span,
                    value,
                })
            })
            .collect()
    })
}

fn group_targets(targets: &[TargetLabel]) -> HashMap<String, Vec<TargetLabel>> {
    let mut map: HashMap<String, Vec<TargetLabel>> = HashMap::new();
    for t in targets {
        map.entry(t.sent_id.clone()).or_default().push(t.clone());
    }
    map
}

fn arb_sentence_labels() -> impl Strategy<Value = HashMap<String, Sentiment>> {
    prop::collection::vec(0u8..4, 3).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, l)| {
                let label = match l {
                    0 => Sentiment::Negative,
                    1 => Sentiment::Neutral,
                    2 => Sentiment::Positive,
                    _ => Sentiment::Mixed,
                };
                (format!("s{}", i + 1), label)
            })
            .collect()
    })
}

fn flip_sentence(s: &Sentence) -> Sentence {
    let mut f = s.clone();
    for op in &mut f.opinions {
        op.polarity = op.polarity.flipped();
    }
    f.canonicalize();
    f
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn shuffled<T: Clone>(items: &[T], seed: u64) -> Vec<T> {
    // Fisher-Yates with a splitmix64 stream
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let mut v = items.to_vec();
    for i in (1..v.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
    v
}

// ---------------------------------------------------------------------------
// Property suites

/// (a) derived target values stay within -3..=3 and agree with the oracle.
pub fn check_target_range(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&arb_sentence(), |s| {
            for t in derive_target_labels(&s) {
                prop_assert!((-3..=3).contains(&t.value));
            }
            let got: Vec<(Vec<Span>, i8)> =
                derive_target_labels(&s).into_iter().map(|t| (t.span, t.value)).collect();
            prop_assert_eq!(got, brute_target_labels(&s));
            prop_assert_eq!(derive_sentence_label(&s) == Sentiment::Neutral, s.opinions.is_empty());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Appending a Positive opinion never lowers a target; a Negative never raises it.
pub fn check_monotonicity(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(arb_sentence(), any::<bool>(), any::<u8>()), |(s, pos, inten)| {
            let before = derive_target_labels(&s);
            for t in &before {
                let mut grown = s.clone();
                grown.opinions.push(Opinion {
                    polar_expression: vec![sp(0, 1)],
                    target: t.span.clone(),
                    holder: vec![],
                    polarity: if pos { Polarity::Positive } else { Polarity::Negative },
                    intensity: intensity_of(inten),
                });
                let after = derive_target_labels(&grown)
                    .into_iter()
                    .find(|x| x.span == t.span)
                    .unwrap();
                if pos {
                    prop_assert!(after.value >= t.value);
                } else {
                    prop_assert!(after.value <= t.value);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// (b) flipping polarity negates target values, swaps sentence labels, and
/// swaps both sentence-proxy and target-proxy outcomes.
pub fn check_antisymmetry(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&arb_sentence(), |s| {
            let f = flip_sentence(&s);
            let a: Vec<(Vec<Span>, i8)> =
                derive_target_labels(&s).into_iter().map(|t| (t.span, t.value)).collect();
            let b: Vec<(Vec<Span>, i8)> =
                derive_target_labels(&f).into_iter().map(|t| (t.span, -t.value)).collect();
            prop_assert_eq!(a, b);
            prop_assert_eq!(derive_sentence_label(&s).flipped(), derive_sentence_label(&f));
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    runner(cases)
        .run(&(arb_mentions(6), arb_sentence_labels()), |(ms, labels)| {
            if ms.is_empty() {
                return Ok(());
            }
            let e = entity_of("e", ms, None);
            let flipped: HashMap<String, Sentiment> =
                labels.iter().map(|(k, v)| (k.clone(), v.flipped())).collect();
            let a = aggregate_sentence_proxy(&e, &labels).unwrap().value;
            let b = aggregate_sentence_proxy(&e, &flipped).unwrap().value;
            prop_assert_eq!(a.flipped(), b);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    runner(cases)
        .run(&(arb_mentions(6), arb_targets()), |(ms, ts)| {
            if ms.is_empty() {
                return Ok(());
            }
            let e = entity_of("e", ms, None);
            let negated: Vec<TargetLabel> = ts
                .iter()
                .map(|t| TargetLabel { value: -t.value, ..t.clone() })
                .collect();
            let a = aggregate_target_proxy(&e, &group_targets(&ts)).value;
            let b = aggregate_target_proxy(&e, &group_targets(&negated)).value;
            prop_assert_eq!(a.flipped(), b);
            let any_overlap = e.mentions.iter().any(|m| {
                ts.iter()
                    .any(|t| t.sent_id == m.sent_id && t.span.iter().any(|x| x.overlaps(&m.span)))
            });
            prop_assert_eq!(a == Sentiment::Neutral, !any_overlap);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// (c) derivation, aggregation and clustering ignore input order.
pub fn check_permutation_invariance(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(arb_sentence(), any::<u64>()), |(s, seed)| {
            let mut p = s.clone();
            p.opinions = shuffled(&s.opinions, seed);
            prop_assert_eq!(derive_target_labels(&s), derive_target_labels(&p));
            prop_assert_eq!(derive_sentence_label(&s), derive_sentence_label(&p));
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    runner(cases)
        .run(
            &(arb_mentions(6), arb_targets(), arb_sentence_labels(), any::<u64>()),
            |(ms, ts, labels, seed)| {
                if ms.is_empty() {
                    return Ok(());
                }
                let e = entity_of("e", ms.clone(), None);
                let ep = entity_of("e", shuffled(&ms, seed), None);
                let tp = shuffled(&ts, seed ^ 1);
                prop_assert_eq!(
                    aggregate_target_proxy(&e, &group_targets(&ts)),
                    aggregate_target_proxy(&ep, &group_targets(&tp))
                );
                prop_assert_eq!(
                    aggregate_sentence_proxy(&e, &labels).unwrap(),
                    aggregate_sentence_proxy(&ep, &labels).unwrap()
                );
                Ok(())
            },
        )
        .map_err(|e| e.to_string())?;

    runner(cases)
        .run(&(arb_mentions(10), any::<u64>()), |(ms, seed)| {
            let doc = blank_document("d", 3);
            prop_assert_eq!(cluster_mentions(&doc, &ms), cluster_mentions(&doc, &shuffled(&ms, seed)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// (d) clustering is a partition equal to the transitive closure of the
/// coreference relation; the relation is reflexive and symmetric and agrees
/// with a string-containment oracle; filtering is idempotent.
pub fn check_clustering(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&arb_mentions(10), |ms| {
            let doc = blank_document("d", 3);
            let entities = cluster_mentions(&doc, &ms);
            let total: usize = entities.iter().map(|e| e.mentions.len()).sum();
            prop_assert_eq!(total, ms.len());
            prop_assert!(entities.iter().all(|e| !e.mentions.is_empty()));
            prop_assert_eq!(entity_partition(&ms, &entities), closure_components(&ms));
            for a in &ms {
                prop_assert!(mentions_corefer(a, a));
                for b in &ms {
                    prop_assert_eq!(mentions_corefer(a, b), mentions_corefer(b, a));
                    prop_assert_eq!(mentions_corefer(a, b), brute_corefer(&a.surface, &b.surface));
                }
            }
            for e in &entities {
                let longest = e.mentions.iter().map(|m| m.surface.chars().count()).max().unwrap();
                prop_assert!(e
                    .mentions
                    .iter()
                    .any(|m| m.surface.chars().count() == longest && normalize_mention(&m.surface) == e.canonical));
            }
            let ner: Vec<elsa_core::model::NerMention> = ms
                .iter()
                .enumerate()
                .map(|(i, m)| elsa_core::model::NerMention {
                    sent_id: m.sent_id.clone(),
                    span: m.span,
                    surface: m.surface.clone(),
                    label: ["PER", "ORG", "LOC", "MISC"][i % 4].to_string(),
                })
                .collect();
            let once = filter_volitional(&ner);
            let again_input: Vec<elsa_core::model::NerMention> = once
                .iter()
                .map(|m| elsa_core::model::NerMention {
                    sent_id: m.sent_id.clone(),
                    span: m.span,
                    surface: m.surface.clone(),
                    label: m.label.as_str().to_string(),
                })
                .collect();
            prop_assert_eq!(filter_volitional(&again_input), once);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn arb_tsa_sentence() -> impl Strategy<Value = TsaSentence> {
    prop::collection::vec((0..WORDS.len(), 0u8..4, -3i8..=3), 1..12).prop_map(|raw| {
        let mut tokens = Vec::new();
        let mut tags: Vec<TsaTag> = Vec::new();
        for (w, kind, value) in raw {
            tokens.push(WORDS[w].to_string());
            let v = TargetValue::new(value).unwrap();
            let tag = match (kind, tags.last()) {
                (0 | 1, _) => TsaTag::Outside,
                (2, Some(TsaTag::Begin(p))) | (2, Some(TsaTag::Inside(p))) => TsaTag::Inside(*p),
                _ => TsaTag::Begin(v),
            };
            tags.push(tag);
        }
        TsaSentence { tokens, tags }
    })
}

fn arb_document() -> impl Strategy<Value = Document> {
    (prop::collection::vec(arb_sentence(), 1..4), 1u8..=6, 0usize..9, arb_mentions(4)).prop_map(
        |(sentences, rating, cat, ms)| {
            let mut sentences: Vec<Sentence> = sentences
                .into_iter()
                .enumerate()
                .map(|(i, mut s)| {
                    s.sent_id = format!("s{}", i + 1);
                    s
                })
                .collect();
            // place mentions on the first token of the first sentence when it fits
            if let Some(first) = sentences.first_mut() {
                if let Some(m) = ms.first() {
                    let word: String = first.text.split(' ').next().unwrap().to_string();
                    first.mentions.push(EntityMention {
                        sent_id: first.sent_id.clone(),
                        span: sp(0, word.chars().count()),
                        surface: word,
                        label: m.label,
                    });
                }
            }
            Document {
                doc_id: "doc".into(),
                rating,
                category: Category::ALL[cat],
                sentences,
            }
        },
    )
}

/// (f) serialization round trips: fine corpus, TSA CoNLL and entity files.
pub fn check_round_trips(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&prop::collection::vec(arb_document(), 0..3), |docs| {
            let docs: Vec<Document> = docs
                .into_iter()
                .enumerate()
                .map(|(i, mut d)| {
                    d.doc_id = format!("doc{i}");
                    d
                })
                .collect();
            let text = write_fine_corpus(&docs);
            let parsed = parse_fine_slice(text.as_bytes()).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&parsed, &docs);
            prop_assert_eq!(write_fine_corpus(&parsed), text);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    runner(cases)
        .run(&prop::collection::vec(arb_tsa_sentence(), 0..5), |sents| {
            let text = write_tsa_sentences(&sents);
            let parsed = parse_tsa_str(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&parsed, &sents);
            prop_assert_eq!(write_tsa_sentences(&parsed), text);
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    runner(cases)
        .run(&(arb_mentions(10), prop::option::of(0u8..3)), |(ms, pol)| {
            let doc = blank_document("d", 3);
            let polarity = pol.map(|p| [Sentiment::Negative, Sentiment::Neutral, Sentiment::Positive][p as usize]);
            let entities: Vec<Entity> = cluster_mentions(&doc, &ms)
                .into_iter()
                .map(|mut e| {
                    e.polarity = polarity;
                    e
                })
                .collect();
            let mode = if polarity.is_some() { PolarityMode::Gold } else { PolarityMode::Predicted };
            let text = write_entity_file(&entities, mode);
            let parsed = parse_entity_str(&text, mode).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(write_entity_file(&parsed, mode), text);
            prop_assert_eq!(parsed.len(), entities.len());
            for (a, b) in parsed.iter().zip(&entities) {
                prop_assert_eq!(&a.entity_id, &b.entity_id);
                prop_assert_eq!(&a.canonical, &b.canonical);
                prop_assert_eq!(a.polarity, b.polarity);
                let spans_a: Vec<(String, Span, String)> =
                    a.mentions.iter().map(|m| (m.sent_id.clone(), m.span, m.surface.clone())).collect();
                let spans_b: Vec<(String, Span, String)> =
                    b.mentions.iter().map(|m| (m.sent_id.clone(), m.span, m.surface.clone())).collect();
                prop_assert_eq!(spans_a, spans_b);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Metric identities on random confusion tables.
pub fn check_metric_identities(cases: u32) -> Result<(), String> {
    use elsa_core::eval::{ConfusionTable, GoldCol, PredRow, PrfScores};
    use elsa_core::Rational;
    runner(cases)
        .run(&prop::collection::vec(0u64..50, 20), |cells| {
            let mut t = ConfusionTable::new();
            let mut it = cells.into_iter();
            for r in PredRow::ALL {
                for c in [GoldCol::Negative, GoldCol::Neutral, GoldCol::Positive, GoldCol::FalsePositive] {
                    let n = it.next().unwrap();
                    if !(r == PredRow::Missed && c == GoldCol::FalsePositive) {
                        t.add(r, c, n);
                    }
                }
            }
            let s = PrfScores::<Rational>::from_table(&t);
            let two = Rational::from_integer(2);
            if s.precision + s.recall > Rational::from_integer(0) {
                prop_assert_eq!(s.f1, two * s.precision * s.recall / (s.precision + s.recall));
            }
            if t.gold_total() > 0 {
                prop_assert_eq!(s.recall, Rational::new(s.tp, t.gold_total()));
            }
            let mut more = t.clone();
            more.add(PredRow::Positive, GoldCol::FalsePositive, 1);
            let s2 = PrfScores::<Rational>::from_table(&more);
            prop_assert_eq!(s2.recall, s.recall);
            prop_assert!(s2.precision <= s.precision || s.predicted_total == 0);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Published tables

/// Replays the published proxy and model tables with exact arithmetic and
/// returns one summary line per table.
pub fn replay_published_tables() -> Result<Vec<String>, String> {
    use elsa_core::eval::proxy_accuracy_from_labels;
    use elsa_core::scalar::{percent_rational, round_rational};
    use elsa_core::{ExactAccuracy, ExactPrf};

    let mut lines = Vec::new();
    let proxies = [
        ("doc proxy", doc_proxy_rows(), 133u64, "0.477"),
        ("sentence proxy", sentence_proxy_rows(), 194, "0.695"),
        ("target proxy", target_proxy_rows(), 229, "0.821"),
    ];
    for (name, rows, correct, expected) in proxies {
        let (gold, proxy) = expand_table(&rows);
        let (table, acc): (_, ExactAccuracy) =
            proxy_accuracy_from_labels(&gold, &proxy).map_err(|e| e.to_string())?;
        let got = round_rational(acc.value, 3);
        if acc.correct != correct || acc.total != 279 || table.gold_total() != 279 || got != expected {
            return Err(format!(
                "{name}: {}/{} = {got}, expected {correct}/279 = {expected}",
                acc.correct, acc.total
            ));
        }
        lines.push(format!("{name} {}/{} = {got}", acc.correct, acc.total));
    }

    let (gold, pred) = expand_model_matrix();
    let (table, prf): (_, ExactPrf) =
        elsa_core::eval::entity_prf(&gold, &pred).map_err(|e| e.to_string())?;
    let (p, r, f) = (
        percent_rational(prf.precision, 1),
        percent_rational(prf.recall, 1),
        percent_rational(prf.f1, 1),
    );
    if (prf.tp, prf.predicted_total, prf.gold_total) != (206, 309, 279)
        || (p.as_str(), r.as_str(), f.as_str()) != ("66.7", "73.8", "70.1")
    {
        return Err(format!(
            "model: tp={} predicted={} gold={} P={p} R={r} F1={f}",
            prf.tp, prf.predicted_total, prf.gold_total
        ));
    }
    for (row, counts) in MODEL_MATRIX {
        let r = row.map(elsa_core::eval::PredRow::from).unwrap_or(elsa_core::eval::PredRow::Missed);
        let cols = [
            elsa_core::eval::GoldCol::Negative,
            elsa_core::eval::GoldCol::Neutral,
            elsa_core::eval::GoldCol::Positive,
            elsa_core::eval::GoldCol::FalsePositive,
        ];
        for (c, want) in cols.iter().zip(counts) {
            if table.cell(r, *c) != want {
                return Err(format!("model matrix cell {r:?}/{c:?}: {} != {want}", table.cell(r, *c)));
            }
        }
    }
    lines.push(format!(
        "model tp={} predicted={} gold={} P={p}% R={r}% F1={f}%",
        prf.tp, prf.predicted_total, prf.gold_total
    ));
    Ok(lines)
}
