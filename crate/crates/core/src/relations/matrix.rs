use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Deserialize;

use super::category::{categorize, RelationCategory};
use super::RelationError;
use crate::corpus::{HitProvider, Term};
use crate::distances::{evaluate_counts, CountOptions, HitCounts, SimilarityKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Deserialize)]
pub struct NamedObject {
    pub id: String,
    pub display_name: String,
    pub group: String,
}

impl NamedObject {
    pub fn new(id: impl Into<String>, display_name: impl Into<String>, group: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            display_name: display_name.into(),
            group: group.into(),
        }
    }
}

/// Reads an object list: CSV with header `id,display_name,group`.
pub fn parse_objects(text: &str) -> Result<Vec<NamedObject>, RelationError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().ne(["id", "display_name", "group"]) {
        return Err(RelationError::BadObjects(
            "expected header id,display_name,group".into(),
        ));
    }
    let mut objects: Vec<NamedObject> = Vec::new();
    let mut seen = BTreeSet::new();
    for record in reader.deserialize() {
        let object: NamedObject = record?;
        if object.id.is_empty() {
            return Err(RelationError::BadObjects("empty id".into()));
        }
        if !seen.insert(object.id.clone()) {
            return Err(RelationError::DuplicateId(object.id));
        }
        objects.push(object);
    }
    Ok(objects)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsentReason {
    /// Row and column are the same object.
    SelfPair,
    /// The provider knows nothing about this object's name.
    Unresolved(String),
    /// Counts exist but the measure has no value for them.
    Undefined(String),
    /// The provider could not answer.
    ProviderFailure(String),
    /// Blank cell read back from a file.
    Blank,
}

impl fmt::Display for AbsentReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsentReason::SelfPair => f.write_str("self pair"),
            AbsentReason::Unresolved(id) => write!(f, "unresolved object {id}"),
            AbsentReason::Undefined(why) => write!(f, "undefined: {why}"),
            AbsentReason::ProviderFailure(why) => write!(f, "provider failure: {why}"),
            AbsentReason::Blank => f.write_str("blank"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// `category` is `None` when the value lies outside `[0, 1]`, as distance
    /// kinds can.
    Present {
        value: f64,
        category: Option<RelationCategory>,
    },
    Absent(AbsentReason),
}

impl Cell {
    fn from_value(value: f64) -> Self {
        Cell::Present {
            value,
            category: categorize(value).ok(),
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Present { value, .. } => Some(*value),
            Cell::Absent(_) => None,
        }
    }

    pub fn category(&self) -> Option<RelationCategory> {
        match self {
            Cell::Present { category, .. } => *category,
            Cell::Absent(_) => None,
        }
    }
}

/// Where one cell's value came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CellProvenance {
    pub row: String,
    pub col: String,
    pub query_x: Option<String>,
    pub query_y: Option<String>,
    pub counts: Option<HitCounts>,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatrixOptions {
    pub counts: CountOptions<f64>,
}

/// Objects by objects, each off-diagonal cell a similarity value and its
/// category, or a reason for having none.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationMatrix {
    rows: Vec<NamedObject>,
    cols: Vec<NamedObject>,
    kind: Option<SimilarityKind>,
    cells: Vec<Vec<Cell>>,
    provenance: Vec<CellProvenance>,
    unresolved: Vec<String>,
}

fn check_ids(objects: &[NamedObject]) -> Result<(), RelationError> {
    let mut seen = BTreeSet::new();
    for o in objects {
        if !seen.insert(o.id.as_str()) {
            return Err(RelationError::DuplicateId(o.id.clone()));
        }
    }
    Ok(())
}

fn distinct_objects<'a>(rows: &'a [NamedObject], cols: &'a [NamedObject]) -> BTreeMap<&'a str, &'a NamedObject> {
    rows.iter().chain(cols).map(|o| (o.id.as_str(), o)).collect()
}

impl RelationMatrix {
    /// A matrix from precomputed values. Cells where row and column share an
    /// id are absent; other `None`s become [`AbsentReason::Blank`].
    pub fn from_values(
        rows: Vec<NamedObject>,
        cols: Vec<NamedObject>,
        values: Vec<Vec<Option<f64>>>,
    ) -> Result<Self, RelationError> {
        check_ids(&rows)?;
        check_ids(&cols)?;
        if values.len() != rows.len() || values.iter().any(|r| r.len() != cols.len()) {
            return Err(RelationError::BadTsv(
                "value grid does not match the object lists".into(),
            ));
        }
        let cells = rows
            .iter()
            .zip(values)
            .map(|(r, row_values)| {
                cols.iter()
                    .zip(row_values)
                    .map(|(c, v)| match v {
                        _ if r.id == c.id => Cell::Absent(AbsentReason::SelfPair),
                        Some(v) => Cell::from_value(v),
                        None => Cell::Absent(AbsentReason::Blank),
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            rows,
            cols,
            kind: None,
            cells,
            provenance: Vec::new(),
            unresolved: Vec::new(),
        })
    }

    pub fn rows(&self) -> &[NamedObject] {
        &self.rows
    }

    pub fn cols(&self) -> &[NamedObject] {
        &self.cols
    }

    pub fn kind(&self) -> Option<SimilarityKind> {
        self.kind
    }

    pub fn cell(&self, row: usize, col: usize) -> &Cell {
        &self.cells[row][col]
    }

    pub fn value(&self, row: usize, col: usize) -> Option<f64> {
        self.cells[row][col].value()
    }

    pub fn category(&self, row: usize, col: usize) -> Option<RelationCategory> {
        self.cells[row][col].category()
    }

    pub fn cells(&self) -> &[Vec<Cell>] {
        &self.cells
    }

    /// Provenance of every non-self cell, row-major.
    pub fn provenance(&self) -> &[CellProvenance] {
        &self.provenance
    }

    /// Ids of objects the provider could not resolve.
    pub fn unresolved(&self) -> &[String] {
        &self.unresolved
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len() && self.rows.iter().zip(&self.cols).all(|(r, c)| r.id == c.id)
    }

    fn non_self_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells
            .iter()
            .flatten()
            .filter(|c| !matches!(c, Cell::Absent(AbsentReason::SelfPair)))
    }

    pub fn defined_count(&self) -> usize {
        self.non_self_cells().filter(|c| c.value().is_some()).count()
    }

    pub fn failure_count(&self) -> usize {
        self.non_self_cells()
            .filter(|c| matches!(c, Cell::Absent(AbsentReason::ProviderFailure(_))))
            .count()
    }

    /// True when the matrix has off-diagonal cells and the provider yielded
    /// none of them, through lookup errors or unresolved names.
    pub fn is_total_failure(&self) -> bool {
        let mut cells = self.non_self_cells().peekable();
        cells.peek().is_some()
            && cells.all(|c| {
                matches!(
                    c,
                    Cell::Absent(AbsentReason::ProviderFailure(_) | AbsentReason::Unresolved(_))
                )
            })
    }
}

type PairKey = (String, String);

enum PairOutcome {
    Value(HitCounts, f64),
    Undefined(HitCounts, String),
    Failed(String),
}

/// Computes every off-diagonal cell of `rows x cols` through `provider`.
///
/// Each unordered pair of objects is evaluated once; the measures are
/// symmetric, so `(a, b)` and `(b, a)` share a value. Provider errors are
/// recorded per cell and never abort the matrix.
pub fn build_matrix<P: HitProvider + ?Sized>(
    rows: &[NamedObject],
    cols: &[NamedObject],
    provider: &P,
    kind: SimilarityKind,
    options: &MatrixOptions,
) -> Result<RelationMatrix, RelationError> {
    if !kind.uses_hit_counts() {
        return Err(RelationError::UnsupportedKind(kind));
    }
    check_ids(rows)?;
    check_ids(cols)?;
    let objects = distinct_objects(rows, cols);
    if objects.len() < 2 {
        return Err(RelationError::NeedTwoObjects);
    }

    let terms: BTreeMap<&str, Option<Term>> = objects
        .iter()
        .map(|(&id, o)| {
            let term = provider.term(&o.display_name).ok().filter(|t| provider.resolves(t));
            (id, term)
        })
        .collect();
    let unresolved: Vec<String> = terms
        .iter()
        .filter(|(_, t)| t.is_none())
        .map(|(id, _)| id.to_string())
        .collect();

    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
    for r in rows {
        for c in cols {
            if r.id == c.id || terms[r.id.as_str()].is_none() || terms[c.id.as_str()].is_none() {
                continue;
            }
            pairs.insert(ordered(&r.id, &c.id));
        }
    }
    let pairs: Vec<PairKey> = pairs.into_iter().collect();

    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|(a, b)| {
            let x = terms[a.as_str()].as_ref().expect("resolved");
            let y = terms[b.as_str()].as_ref().expect("resolved");
            match provider.hit_counts(x, y) {
                Err(e) => PairOutcome::Failed(e.to_string()),
                Ok(h) => match evaluate_counts::<f64>(kind, &h, &options.counts) {
                    Ok(s) => PairOutcome::Value(h, s.value),
                    Err(e) => PairOutcome::Undefined(h, e.to_string()),
                },
            }
        })
        .collect();
    let results: BTreeMap<&PairKey, &PairOutcome> = pairs.iter().zip(&outcomes).collect();

    let mut cells = Vec::with_capacity(rows.len());
    let mut provenance = Vec::new();
    for r in rows {
        let mut row_cells = Vec::with_capacity(cols.len());
        for c in cols {
            if r.id == c.id {
                row_cells.push(Cell::Absent(AbsentReason::SelfPair));
                continue;
            }
            let query = |id: &str| terms[id].as_ref().map(Term::query);
            let mut record = CellProvenance {
                row: r.id.clone(),
                col: c.id.clone(),
                query_x: query(&r.id),
                query_y: query(&c.id),
                counts: None,
                outcome: String::new(),
            };
            let key = ordered(&r.id, &c.id);
            let flipped = key.0 != r.id;
            let orient = |h: &HitCounts| if flipped { h.swapped() } else { *h };
            let cell = match results.get(&key) {
                None => {
                    let missing = if terms[r.id.as_str()].is_none() { &r.id } else { &c.id };
                    Cell::Absent(AbsentReason::Unresolved(missing.clone()))
                }
                Some(PairOutcome::Value(h, v)) => {
                    record.counts = Some(orient(h));
                    Cell::from_value(*v)
                }
                Some(PairOutcome::Undefined(h, why)) => {
                    record.counts = Some(orient(h));
                    Cell::Absent(AbsentReason::Undefined(why.clone()))
                }
                Some(PairOutcome::Failed(why)) => Cell::Absent(AbsentReason::ProviderFailure(why.clone())),
            };
            record.outcome = match &cell {
                Cell::Present {
                    value,
                    category: Some(cat),
                } => format!("ok {value:.6} category {cat}"),
                Cell::Present { value, category: None } => format!("ok {value:.6} uncategorized"),
                Cell::Absent(reason) => reason.to_string(),
            };
            provenance.push(record);
            row_cells.push(cell);
        }
        cells.push(row_cells);
    }

    Ok(RelationMatrix {
        rows: rows.to_vec(),
        cols: cols.to_vec(),
        kind: Some(kind),
        cells,
        provenance,
        unresolved,
    })
}

fn ordered(a: &str, b: &str) -> PairKey {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}
