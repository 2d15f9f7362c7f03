//! Hit-count providers: an offline document index and static hit tables.

mod index;
mod source;
mod table;
mod term;

use thiserror::Error;

use crate::distances::{DistanceError, HitCounts};

pub use index::{build_index, CorpusIndex, Document, Event, IndexBuilder, OmegaMode, INDEX_MAGIC, INDEX_VERSION};
pub use source::{load_corpus, read_jsonl};
pub use table::{HitRow, HitTable};
pub use term::{Term, TermKind, TokenizerConfig};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus has no documents")]
    EmptyCorpus,
    #[error("duplicate document id {0:?}")]
    DuplicateDocument(String),
    #[error("term {0:?} is empty after normalization")]
    EmptyTerm(String),
    #[error("division by zero: {0}")]
    Degenerate(&'static str),
    #[error("pair ({0}, {1}) not found")]
    PairNotFound(String, String),
    #[error("duplicate pair ({0}, {1}) in hit table")]
    DuplicatePair(String, String),
    #[error("malformed hit table: {0}")]
    BadTable(String),
    #[error("malformed index file: {0}")]
    BadIndex(String),
    #[error("malformed corpus: {0}")]
    BadCorpus(String),
    #[error(transparent)]
    Counts(#[from] DistanceError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Anything that can answer `f(x)`, `f(y)`, `f(x,y)` for a term pair.
pub trait HitProvider: Sync {
    fn hit_counts(&self, x: &Term, y: &Term) -> Result<HitCounts, CorpusError>;

    /// Whether the provider knows anything about `term`.
    fn resolves(&self, term: &Term) -> bool;

    fn tokenizer(&self) -> &TokenizerConfig;

    fn term(&self, raw: &str) -> Result<Term, CorpusError> {
        Term::parse(raw, self.tokenizer())
    }
}

impl HitProvider for CorpusIndex {
    /// `N` is the number of documents.
    fn hit_counts(&self, x: &Term, y: &Term) -> Result<HitCounts, CorpusError> {
        Ok(HitCounts::from_index(
            self.singleton_count(x),
            self.singleton_count(y),
            self.doubleton_count(x, y),
            Some(self.document_count()),
        )?)
    }

    fn resolves(&self, term: &Term) -> bool {
        self.singleton_count(term) > 0
    }

    fn tokenizer(&self) -> &TokenizerConfig {
        CorpusIndex::tokenizer(self)
    }
}

impl HitProvider for HitTable {
    fn hit_counts(&self, x: &Term, y: &Term) -> Result<HitCounts, CorpusError> {
        self.lookup(x, y)
    }

    fn resolves(&self, term: &Term) -> bool {
        self.mentions(term)
    }

    fn tokenizer(&self) -> &TokenizerConfig {
        HitTable::tokenizer(self)
    }
}

/// Either provider, chosen at run time.
#[derive(Debug, Clone)]
pub enum Provider {
    Index(CorpusIndex),
    Table(HitTable),
}

impl HitProvider for Provider {
    fn hit_counts(&self, x: &Term, y: &Term) -> Result<HitCounts, CorpusError> {
        match self {
            Provider::Index(i) => i.hit_counts(x, y),
            Provider::Table(t) => t.hit_counts(x, y),
        }
    }

    fn resolves(&self, term: &Term) -> bool {
        match self {
            Provider::Index(i) => i.resolves(term),
            Provider::Table(t) => t.resolves(term),
        }
    }

    fn tokenizer(&self) -> &TokenizerConfig {
        match self {
            Provider::Index(i) => HitProvider::tokenizer(i),
            Provider::Table(t) => HitProvider::tokenizer(t),
        }
    }
}
