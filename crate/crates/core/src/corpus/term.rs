use std::fmt;

use serde::{Deserialize, Serialize};

use super::CorpusError;

/// How raw text is split into tokens. Stored with every index so counts can
/// be reproduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TokenizerConfig {
    pub case_fold: bool,
    pub strip_punctuation: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        Self {
            case_fold: true,
            strip_punctuation: true,
        }
    }
}

impl TokenizerConfig {
    /// Splits on Unicode whitespace, then folds case and drops
    /// non-alphanumeric characters as configured. Tokens that end up empty
    /// are dropped.
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        text.split_whitespace()
            .filter_map(|raw| {
                let mut token: String = if self.strip_punctuation {
                    raw.chars().filter(|c| c.is_alphanumeric()).collect()
                } else {
                    raw.to_string()
                };
                if self.case_fold {
                    token = token.to_lowercase();
                }
                (!token.is_empty()).then_some(token)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermKind {
    Word,
    Phrase,
}

/// A normalized search term: one token, or a phrase matched as a contiguous
/// token run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    tokens: Vec<String>,
}

impl Term {
    /// Normalizes `raw` with `config`. Surrounding quotes are optional; a
    /// multi-token term is always a phrase.
    pub fn parse(raw: &str, config: &TokenizerConfig) -> Result<Self, CorpusError> {
        let trimmed = raw.trim().trim_matches('"');
        let tokens = config.tokenize(trimmed);
        if tokens.is_empty() {
            return Err(CorpusError::EmptyTerm(raw.to_string()));
        }
        Ok(Self { tokens })
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn kind(&self) -> TermKind {
        if self.tokens.len() == 1 {
            TermKind::Word
        } else {
            TermKind::Phrase
        }
    }

    /// Normalized text, tokens joined by single spaces.
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }

    /// The query string a search engine would receive.
    pub fn query(&self) -> String {
        format!("\"{}\"", self.text())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}
