use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::term::{Term, TokenizerConfig};
use super::CorpusError;
use crate::distances::HitCounts;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitRow {
    pub term_x: Term,
    pub term_y: Term,
    pub f_x: u64,
    pub f_y: u64,
    pub f_xy: u64,
}

#[derive(Deserialize)]
struct RawRow {
    term_x: String,
    term_y: String,
    f_x: u64,
    f_y: u64,
    f_xy: u64,
}

/// A static snapshot of search-engine hit counts.
///
/// CSV with header `term_x,term_y,f_x,f_y,f_xy` and an optional metadata line
/// `#N=<integer>`. Rows are taken as given, inconsistent or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitTable {
    rows: Vec<HitRow>,
    n_total: Option<u64>,
    config: TokenizerConfig,
    by_pair: BTreeMap<(Term, Term), usize>,
}

impl HitTable {
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        Self::parse_with(text, TokenizerConfig::default())
    }

    pub fn parse_with(text: &str, config: TokenizerConfig) -> Result<Self, CorpusError> {
        let mut n_total = None;
        for line in text.lines() {
            let Some(meta) = line.trim().strip_prefix('#') else {
                continue;
            };
            if let Some(value) = meta.trim().strip_prefix("N=") {
                let n = value
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| CorpusError::BadTable(format!("invalid N metadata {line:?}")))?;
                n_total = Some(n);
            }
        }

        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        let expected = ["term_x", "term_y", "f_x", "f_y", "f_xy"];
        if headers.iter().ne(expected) {
            return Err(CorpusError::BadTable(format!(
                "expected header {}, found {}",
                expected.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }

        let mut table = Self {
            rows: Vec::new(),
            n_total,
            config,
            by_pair: BTreeMap::new(),
        };
        for record in reader.deserialize() {
            let raw: RawRow = record?;
            let row = HitRow {
                term_x: Term::parse(&raw.term_x, &config)?,
                term_y: Term::parse(&raw.term_y, &config)?,
                f_x: raw.f_x,
                f_y: raw.f_y,
                f_xy: raw.f_xy,
            };
            // validates N against the row before accepting it
            HitCounts::new(row.f_x, row.f_y, row.f_xy, n_total)?;
            if row.f_xy > row.f_x.min(row.f_y) {
                log::warn!(
                    "hit table row ({}, {}): f_xy = {} exceeds min(f_x, f_y) = {}",
                    row.term_x,
                    row.term_y,
                    row.f_xy,
                    row.f_x.min(row.f_y)
                );
            }
            let key = unordered(&row.term_x, &row.term_y);
            if table.by_pair.contains_key(&key) {
                return Err(CorpusError::DuplicatePair(row.term_x.text(), row.term_y.text()));
            }
            table.by_pair.insert(key, table.rows.len());
            table.rows.push(row);
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn rows(&self) -> &[HitRow] {
        &self.rows
    }

    pub fn n_total(&self) -> Option<u64> {
        self.n_total
    }

    pub fn tokenizer(&self) -> &TokenizerConfig {
        &self.config
    }

    /// Unordered lookup; counts are oriented as `(x, y)`.
    pub fn lookup(&self, x: &Term, y: &Term) -> Result<HitCounts, CorpusError> {
        let &i = self
            .by_pair
            .get(&unordered(x, y))
            .ok_or_else(|| CorpusError::PairNotFound(x.text(), y.text()))?;
        let row = &self.rows[i];
        let counts = HitCounts::new(row.f_x, row.f_y, row.f_xy, self.n_total)?;
        Ok(if &row.term_x == x { counts } else { counts.swapped() })
    }

    /// Whether `term` appears in any row.
    pub fn mentions(&self, term: &Term) -> bool {
        self.rows.iter().any(|r| &r.term_x == term || &r.term_y == term)
    }
}

fn unordered(x: &Term, y: &Term) -> (Term, Term) {
    if x <= y {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}
