//! Half-open character-offset spans into sentence text.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SpanError;

/// A half-open `[start, end)` range of Unicode scalar values (not bytes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    start: usize,
    end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Result<Self, SpanError> {
        if start >= end {
            return Err(SpanError::Empty { start, end });
        }
        Ok(Span { start, end })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of character offsets shared with `other`.
    pub fn overlap_len(&self, other: &Span) -> usize {
        let lo = self.start.max(other.start);
        let hi = self.end.min(other.end);
        hi.saturating_sub(lo)
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.overlap_len(other) > 0
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// Slices `text` by character offsets. `None` when the span runs past the end.
    pub fn slice<'a>(&self, text: &'a str) -> Option<&'a str> {
        let mut indices = text.char_indices().map(|(i, _)| i).chain(std::iter::once(text.len()));
        let begin = indices.nth(self.start)?;
        let finish = indices.nth(self.end - self.start - 1)?;
        Some(&text[begin..finish])
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

impl FromStr for Span {
    type Err = SpanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| SpanError::Syntax(s.to_string()))?;
        let start = a.parse().map_err(|_| SpanError::Syntax(s.to_string()))?;
        let end = b.parse().map_err(|_| SpanError::Syntax(s.to_string()))?;
        Span::new(start, end)
    }
}

impl Serialize for Span {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Span {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of characters in `text`; the valid upper bound for span ends.
pub fn char_len(text: &str) -> usize {
    text.chars().count()
}

/// Maximal runs of non-whitespace characters, as character spans.
pub fn whitespace_tokens(text: &str) -> Vec<Span> {
    let mut tokens = Vec::new();
    let mut current: Option<usize> = None;
    let mut idx = 0;
    for ch in text.chars() {
        match (ch.is_whitespace(), current) {
            (true, Some(start)) => {
                tokens.push(Span { start, end: idx });
                current = None;
            }
            (false, None) => current = Some(idx),
            _ => {}
        }
        idx += 1;
    }
    if let Some(start) = current {
        tokens.push(Span { start, end: idx });
    }
    tokens
}

/// Runs of alphanumeric characters, with every other non-whitespace
/// character as a token of its own ("Clint," is `Clint` and `,`).
pub fn word_tokens(text: &str) -> Vec<Span> {
    let mut tokens = Vec::new();
    let mut word: Option<usize> = None;
    for (idx, ch) in text.chars().enumerate() {
        let wordy = ch.is_alphanumeric() || ch == '_';
        if let (Some(start), false) = (word, wordy) {
            tokens.push(Span { start, end: idx });
            word = None;
        }
        if wordy {
            word.get_or_insert(idx);
        } else if !ch.is_whitespace() {
            tokens.push(Span { start: idx, end: idx + 1 });
        }
    }
    if let Some(start) = word {
        tokens.push(Span { start, end: char_len(text) });
    }
    tokens
}
