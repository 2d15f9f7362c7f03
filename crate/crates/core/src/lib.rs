//! Similarity and clustering from approximate Kolmogorov complexity.
//!
//! * [`compressor`] — nibble-key compression, approximate complexity and
//!   shared information.
//! * [`distances`] — information distance, NID, NCD, N_S, NGD, the Dice form
//!   and similarity metric M, plus a similarity-axiom checker.
//! * [`corpus`] — singleton/doubleton counts from an offline index or a
//!   static hit table.
//! * [`relations`] — nine-way relation categories, relation matrices, TSV
//!   export and agglomerative grouping.
//!
//! Ratio-valued code is generic over [`Scalar`]; use [`Rational`] for exact
//! arithmetic and `f64` otherwise.

pub mod compressor;
pub mod corpus;
pub mod distances;
pub mod relations;
pub mod scalar;

pub use scalar::{display6, RealScalar, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::Ratio<i64>;

pub type ComplexityScoreF64 = compressor::ComplexityScore<f64>;
pub type ExactComplexityScore = compressor::ComplexityScore<Rational>;
pub type SimilarityScoreF64 = distances::SimilarityScore<f64>;
pub type ExactSimilarityScore = distances::SimilarityScore<Rational>;
