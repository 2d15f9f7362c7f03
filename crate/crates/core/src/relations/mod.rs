//! Relation categories, relation matrices over named objects, TSV export and
//! agglomerative grouping.

mod category;
mod cluster;
mod matrix;
mod tsv;

use thiserror::Error;

use crate::distances::SimilarityKind;

pub use category::{categorize, legend_text, RelationCategory};
pub use cluster::{cluster, Clustering, Linkage, Merge, Stop};
pub use matrix::{
    build_matrix, parse_objects, AbsentReason, Cell, CellProvenance, MatrixOptions, NamedObject, RelationMatrix,
};
pub use tsv::{export_matrix, import_values, parse_tsv, provenance_tsv, TsvFormat, TsvTable};

#[derive(Debug, Error)]
pub enum RelationError {
    #[error("value {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("need >= 2 objects")]
    NeedTwoObjects,
    #[error("duplicate object id {0:?}")]
    DuplicateId(String),
    #[error("{0} is not a count-based similarity")]
    UnsupportedKind(SimilarityKind),
    #[error("matrix must be square with identical row and column ids")]
    NotSquare,
    #[error("matrix is not symmetric at ({0}, {1})")]
    Asymmetric(String, String),
    #[error("invalid stopping rule: {0}")]
    InvalidStop(String),
    #[error("malformed TSV: {0}")]
    BadTsv(String),
    #[error("malformed object list: {0}")]
    BadObjects(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
