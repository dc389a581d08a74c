//! Token-per-line BIO export of target labels.
//!
//! Each line is `<token>\t<tag>`; a blank line terminates every sentence.
//! Target tags carry the signed target value: `B-targ-Positive-2`,
//! `I-targ-Negative-1`, and `B-targ-Neutral-0` for targets whose opinions
//! cancel out. Each contiguous piece of a discontinuous target opens with `B-`.

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use crate::error::ConllError;
use crate::model::{Sentence, TargetLabel};
use crate::span::{word_tokens, Span};

/// Signed target value in `-3..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetValue(i8);

impl TargetValue {
    pub fn new(value: i8) -> Option<Self> {
        (TargetLabel::MIN..=TargetLabel::MAX)
            .contains(&value)
            .then_some(TargetValue(value))
    }

    pub fn get(self) -> i8 {
        self.0
    }
}

impl fmt::Display for TargetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            v if v > 0 => write!(f, "Positive-{v}"),
            v if v < 0 => write!(f, "Negative-{}", -v),
            _ => f.write_str("Neutral-0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TsaTag {
    Outside,
    Begin(TargetValue),
    Inside(TargetValue),
}

impl fmt::Display for TsaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TsaTag::Outside => f.write_str("O"),
            TsaTag::Begin(v) => write!(f, "B-targ-{v}"),
            TsaTag::Inside(v) => write!(f, "I-targ-{v}"),
        }
    }
}

impl FromStr for TsaTag {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "O" {
            return Ok(TsaTag::Outside);
        }
        let (prefix, rest) = s.split_once("-targ-").ok_or(())?;
        let (polarity, magnitude) = rest.rsplit_once('-').ok_or(())?;
        let magnitude: i8 = match magnitude {
            "0" => 0,
            "1" => 1,
            "2" => 2,
            "3" => 3,
            _ => return Err(()),
        };
        let value = match (polarity, magnitude) {
            ("Positive", m) if m > 0 => m,
            ("Negative", m) if m > 0 => -m,
            ("Neutral", 0) => 0,
            _ => return Err(()),
        };
        let value = TargetValue::new(value).ok_or(())?;
        match prefix {
            "B" => Ok(TsaTag::Begin(value)),
            "I" => Ok(TsaTag::Inside(value)),
            _ => Err(()),
        }
    }
}

/// One sentence of a TSA CoNLL file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsaSentence {
    pub tokens: Vec<String>,
    pub tags: Vec<TsaTag>,
}

impl TsaSentence {
    /// Decodes the tag sequence into `(first_token, end_token, value)` chunks.
    pub fn chunks(&self) -> Vec<(usize, usize, i8)> {
        let mut out: Vec<(usize, usize, i8)> = Vec::new();
        for (i, tag) in self.tags.iter().enumerate() {
            match tag {
                TsaTag::Outside => {}
                TsaTag::Begin(v) => out.push((i, i + 1, v.get())),
                TsaTag::Inside(_) => {
                    if let Some(last) = out.last_mut() {
                        last.1 = i + 1;
                    }
                }
            }
        }
        out
    }
}

/// Tags one sentence's tokens with its targets.
pub fn tag_tsa_sentence(
    sentence: &Sentence,
    targets: &[TargetLabel],
) -> Result<TsaSentence, ConllError> {
    let tokens = sentence
        .tokens
        .clone()
        .unwrap_or_else(|| word_tokens(&sentence.text));
    let mut tags = vec![TsaTag::Outside; tokens.len()];
    let mut owner: Vec<Option<usize>> = vec![None; tokens.len()];

    for (ti, target) in targets.iter().enumerate() {
        let value = TargetValue::new(target.value).ok_or_else(|| ConllError::Format {
            line: 0,
            message: format!("target value {} outside -3..=3", target.value),
        })?;
        for span in &target.span {
            let misaligned = || ConllError::Alignment {
                sent_id: sentence.sent_id.clone(),
                span: *span,
            };
            let first = tokens
                .iter()
                .position(|t| t.start() == span.start())
                .ok_or_else(misaligned)?;
            let last = tokens
                .iter()
                .position(|t| t.end() == span.end())
                .filter(|&l| l >= first)
                .ok_or_else(misaligned)?;
            for k in first..=last {
                if let Some(prev) = owner[k] {
                    if prev != ti {
                        return Err(ConllError::OverlappingTargets {
                            sent_id: sentence.sent_id.clone(),
                            first: format_spans(&targets[prev].span),
                            second: format_spans(&target.span),
                        });
                    }
                }
                owner[k] = Some(ti);
                tags[k] = if k == first {
                    TsaTag::Begin(value)
                } else {
                    TsaTag::Inside(value)
                };
            }
        }
    }

    let words = tokens
        .iter()
        .map(|t| {
            let word = t.slice(&sentence.text).unwrap_or_default();
            if word.is_empty() || word.contains(['\t', '\n', '\r']) {
                Err(ConllError::UnwritableToken {
                    sent_id: sentence.sent_id.clone(),
                    token: word.to_string(),
                })
            } else {
                Ok(word.to_string())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TsaSentence { tokens: words, tags })
}

fn format_spans(spans: &[Span]) -> String {
    spans
        .iter()
        .map(Span::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Tags every sentence and renders the CoNLL text. Sentences with no tokens
/// produce no lines.
pub fn write_tsa_conll(items: &[(&Sentence, &[TargetLabel])]) -> Result<String, ConllError> {
    let tagged = items
        .iter()
        .map(|(s, t)| tag_tsa_sentence(s, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(write_tsa_sentences(&tagged))
}

/// Renders already-tagged sentences; inverse of [`parse_tsa_conll`].
pub fn write_tsa_sentences(sentences: &[TsaSentence]) -> String {
    let mut out = String::new();
    for s in sentences.iter().filter(|s| !s.tokens.is_empty()) {
        for (token, tag) in s.tokens.iter().zip(&s.tags) {
            out.push_str(token);
            out.push('\t');
            out.push_str(&tag.to_string());
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

pub fn parse_tsa_conll<R: Read>(mut reader: R) -> Result<Vec<TsaSentence>, ConllError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_tsa_str(&text)
}

pub fn parse_tsa_str(text: &str) -> Result<Vec<TsaSentence>, ConllError> {
    let mut sentences = Vec::new();
    let mut current = TsaSentence {
        tokens: Vec::new(),
        tags: Vec::new(),
    };
    for (idx, line) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        if line.is_empty() {
            if !current.tokens.is_empty() {
                sentences.push(std::mem::replace(
                    &mut current,
                    TsaSentence {
                        tokens: Vec::new(),
                        tags: Vec::new(),
                    },
                ));
            }
            continue;
        }
        let (token, tag) = line.split_once('\t').ok_or_else(|| ConllError::Format {
            line: line_no,
            message: "expected <token>\\t<tag>".into(),
        })?;
        if token.is_empty() {
            return Err(ConllError::Format {
                line: line_no,
                message: "empty token".into(),
            });
        }
        let tag: TsaTag = tag.parse().map_err(|_| ConllError::UnknownTag {
            line: line_no,
            tag: tag.to_string(),
        })?;
        if let TsaTag::Inside(v) = tag {
            match current.tags.last() {
                Some(TsaTag::Begin(p)) | Some(TsaTag::Inside(p)) if *p == v => {}
                _ => {
                    return Err(ConllError::Format {
                        line: line_no,
                        message: format!("{tag} does not continue a matching target"),
                    })
                }
            }
        }
        current.tokens.push(token.to_string());
        current.tags.push(tag);
    }
    if !current.tokens.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}
