//! Lowercasing tokenizer with a stop list and a minimum token length.

use std::collections::BTreeSet;

const ENGLISH_STOPWORDS: &str = include_str!("stopwords_en.txt");

/// The Snowball English stop list.
pub fn english_stopwords() -> BTreeSet<String> {
    parse_stoplist(ENGLISH_STOPWORDS)
}

/// One word per line; blank lines and `|` comments are ignored.
pub fn parse_stoplist(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.split('|').next().unwrap_or("").trim().to_lowercase())
        .filter(|w| !w.is_empty())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizerConfig {
    pub stopwords: BTreeSet<String>,
    /// Tokens with fewer characters are dropped.
    pub min_length: usize,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        Self {
            stopwords: english_stopwords(),
            min_length: 2,
        }
    }
}

/// Splits on every non-alphabetic character, lowercases, and drops stop
/// words and short tokens. No stemming.
pub fn tokenize(text: &str, stoplist: &BTreeSet<String>, min_length: usize) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .filter(|t| t.chars().count() >= min_length && !stoplist.contains(t))
        .collect()
}

impl TokenizerConfig {
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        tokenize(text, &self.stopwords, self.min_length)
    }
}
