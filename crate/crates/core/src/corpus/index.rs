use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::term::{Term, TermKind, TokenizerConfig};
use super::CorpusError;
use crate::scalar::{count_to_i64, Scalar};

pub const INDEX_MAGIC: &str = "KCSIM-INDEX";
pub const INDEX_VERSION: u32 = 1;

/// How `|Ω|`, the size of the event space, is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaMode {
    /// Sum over documents of the number of distinct terms in each.
    #[default]
    TermOccurrences,
    /// Number of distinct terms in the corpus.
    VocabularySize,
    /// Number of documents.
    DocumentCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub tokens: Vec<String>,
}

/// An event whose probability can be asked for.
#[derive(Debug, Clone, Copy)]
pub enum Event<'a> {
    Single(&'a Term),
    Pair(&'a Term, &'a Term),
}

/// Accumulates documents, then freezes them into a [`CorpusIndex`].
#[derive(Debug, Clone)]
pub struct IndexBuilder {
    config: TokenizerConfig,
    omega_mode: OmegaMode,
    documents: Vec<Document>,
    ids: BTreeSet<String>,
}

impl IndexBuilder {
    pub fn new(config: TokenizerConfig) -> Self {
        Self {
            config,
            omega_mode: OmegaMode::default(),
            documents: Vec::new(),
            ids: BTreeSet::new(),
        }
    }

    pub fn omega_mode(mut self, mode: OmegaMode) -> Self {
        self.omega_mode = mode;
        self
    }

    pub fn add_document(&mut self, id: impl Into<String>, text: &str) -> Result<&mut Self, CorpusError> {
        let id = id.into();
        if !self.ids.insert(id.clone()) {
            return Err(CorpusError::DuplicateDocument(id));
        }
        let tokens = self.config.tokenize(text);
        self.documents.push(Document { id, tokens });
        Ok(self)
    }

    pub fn build(self) -> Result<CorpusIndex, CorpusError> {
        if self.documents.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        Ok(CorpusIndex::from_documents(
            self.config,
            self.omega_mode,
            self.documents,
        ))
    }
}

/// Builds an index over `(id, text)` pairs, in the given order.
pub fn build_index<I, S, T>(documents: I, config: TokenizerConfig) -> Result<CorpusIndex, CorpusError>
where
    I: IntoIterator<Item = (S, T)>,
    S: Into<String>,
    T: AsRef<str>,
{
    let mut builder = IndexBuilder::new(config);
    for (id, text) in documents {
        builder.add_document(id, text.as_ref())?;
    }
    builder.build()
}

/// Inverted index over a document collection.
///
/// A term's singleton event is the set of documents containing it; a pair's
/// doubleton event is the intersection. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusIndex {
    config: TokenizerConfig,
    omega_mode: OmegaMode,
    documents: Vec<Document>,
    postings: BTreeMap<String, Vec<u32>>,
    distinct_per_document: Vec<u64>,
    omega_cardinality: u64,
    psi: u64,
}

impl CorpusIndex {
    fn from_documents(config: TokenizerConfig, omega_mode: OmegaMode, documents: Vec<Document>) -> Self {
        let mut postings: BTreeMap<String, Vec<u32>> = BTreeMap::new();
        let mut distinct_per_document = Vec::with_capacity(documents.len());
        for (doc, d) in documents.iter().enumerate() {
            let distinct: BTreeSet<&str> = d.tokens.iter().map(String::as_str).collect();
            distinct_per_document.push(distinct.len() as u64);
            for t in distinct {
                postings.entry(t.to_string()).or_default().push(doc as u32);
            }
        }
        // every unordered pair of distinct terms in a document adds one to Ψ
        let psi = distinct_per_document.iter().map(|&u| u * u.saturating_sub(1) / 2).sum();
        let mut index = Self {
            config,
            omega_mode,
            documents,
            postings,
            distinct_per_document,
            omega_cardinality: 0,
            psi,
        };
        index.omega_cardinality = index.omega_cardinality_for(omega_mode);
        index
    }

    pub fn tokenizer(&self) -> &TokenizerConfig {
        &self.config
    }

    pub fn omega_mode(&self) -> OmegaMode {
        self.omega_mode
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn document_count(&self) -> u64 {
        self.documents.len() as u64
    }

    /// Distinct single-token terms, sorted.
    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    pub fn vocabulary_size(&self) -> u64 {
        self.postings.len() as u64
    }

    pub fn omega_cardinality(&self) -> u64 {
        self.omega_cardinality
    }

    pub fn omega_cardinality_for(&self, mode: OmegaMode) -> u64 {
        match mode {
            OmegaMode::TermOccurrences => self.distinct_per_document.iter().sum(),
            OmegaMode::VocabularySize => self.vocabulary_size(),
            OmegaMode::DocumentCount => self.document_count(),
        }
    }

    /// Ψ: sum of doubleton counts over unordered pairs of distinct terms.
    pub fn psi(&self) -> u64 {
        self.psi
    }

    pub fn term(&self, raw: &str) -> Result<Term, CorpusError> {
        Term::parse(raw, &self.config)
    }

    /// Sorted ids (positions) of the documents containing `term`.
    pub fn documents_containing(&self, term: &Term) -> Vec<u32> {
        let tokens = term.tokens();
        match term.kind() {
            TermKind::Word => self.postings.get(&tokens[0]).cloned().unwrap_or_default(),
            TermKind::Phrase => {
                let mut candidates = match self.postings.get(&tokens[0]) {
                    Some(p) => p.clone(),
                    None => return Vec::new(),
                };
                for t in &tokens[1..] {
                    match self.postings.get(t) {
                        Some(p) => candidates = intersect(&candidates, p),
                        None => return Vec::new(),
                    }
                }
                candidates
                    .into_iter()
                    .filter(|&d| {
                        self.documents[d as usize]
                            .tokens
                            .windows(tokens.len())
                            .any(|w| w == tokens)
                    })
                    .collect()
            }
        }
    }

    pub fn singleton_count(&self, term: &Term) -> u64 {
        self.documents_containing(term).len() as u64
    }

    pub fn doubleton_count(&self, x: &Term, y: &Term) -> u64 {
        if x == y {
            return self.singleton_count(x);
        }
        intersect(&self.documents_containing(x), &self.documents_containing(y)).len() as u64
    }

    /// `P(event) = |event| / |Ω|`.
    pub fn probability<T: Scalar>(&self, event: Event<'_>) -> Result<T, CorpusError> {
        if self.omega_cardinality == 0 {
            return Err(CorpusError::Degenerate("|Ω| is zero"));
        }
        let count = match event {
            Event::Single(x) => self.singleton_count(x),
            Event::Pair(x, y) => self.doubleton_count(x, y),
        };
        Ok(T::from_ratio(count_to_i64(count), count_to_i64(self.omega_cardinality)))
    }

    /// `p(x) = |x| / Ψ`, or `p(x, y) = |x ∩ y| / Ψ` when `y` is given.
    pub fn psi_normalized<T: Scalar>(&self, x: &Term, y: Option<&Term>) -> Result<T, CorpusError> {
        if self.psi == 0 {
            return Err(CorpusError::Degenerate("Ψ is zero"));
        }
        let count = match y {
            None => self.singleton_count(x),
            Some(y) => self.doubleton_count(x, y),
        };
        Ok(T::from_ratio(count_to_i64(count), count_to_i64(self.psi)))
    }

    /// Writes the index: a magic/version line followed by a JSON body.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<(), CorpusError> {
        let file = IndexFile {
            tokenizer: self.config,
            omega_mode: self.omega_mode,
            documents: self.documents.clone(),
            vocabulary: self.postings.keys().cloned().collect(),
            postings: self.postings.clone(),
            omega_cardinality: self.omega_cardinality,
            psi: self.psi,
        };
        writeln!(out, "{INDEX_MAGIC} {INDEX_VERSION}")?;
        serde_json::to_writer_pretty(&mut out, &file)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        buf
    }

    /// Reads an index written by [`CorpusIndex::write_to`]. Derived fields
    /// are recomputed and must match the stored ones.
    pub fn read_from<R: BufRead>(mut input: R) -> Result<Self, CorpusError> {
        let mut header = String::new();
        input.read_line(&mut header)?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some(INDEX_MAGIC) {
            return Err(CorpusError::BadIndex("missing magic header".into()));
        }
        let version: u32 = parts
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| CorpusError::BadIndex("missing version".into()))?;
        if version != INDEX_VERSION {
            return Err(CorpusError::BadIndex(format!("unsupported version {version}")));
        }
        let file: IndexFile = serde_json::from_reader(input)?;
        if file.documents.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        let index = Self::from_documents(file.tokenizer, file.omega_mode, file.documents);
        let vocabulary: Vec<String> = index.postings.keys().cloned().collect();
        if index.postings != file.postings
            || vocabulary != file.vocabulary
            || index.omega_cardinality != file.omega_cardinality
            || index.psi != file.psi
        {
            return Err(CorpusError::BadIndex("stored counts do not match the documents".into()));
        }
        Ok(index)
    }
}

#[derive(Serialize, Deserialize)]
struct IndexFile {
    tokenizer: TokenizerConfig,
    omega_mode: OmegaMode,
    documents: Vec<Document>,
    vocabulary: Vec<String>,
    postings: BTreeMap<String, Vec<u32>>,
    omega_cardinality: u64,
    psi: u64,
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
