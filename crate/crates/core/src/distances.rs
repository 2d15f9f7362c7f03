//! Distance and similarity functionals over complexities, compressed
//! lengths and hit counts.
//!
//! Count ratios (`ncd`, `nsd`, `dice_similarity`, `nid`) are generic over
//! [`Scalar`] and exact for rationals. `ngd` and `metric_m` take logarithms
//! and need a [`RealScalar`]. Logarithms are natural; every log-based result
//! here is a ratio of logs, so the base does not matter.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compressor::{BitString, CompressError, Compressor};
use crate::scalar::{count_to_i64, RealScalar, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistanceError {
    #[error("non-finite input")]
    NonFinite,
    #[error("division by zero: {0}")]
    Degenerate(&'static str),
    #[error("N required: the index size is missing")]
    MissingTotal,
    #[error("N = {n} is smaller than a term count ({max})")]
    InvalidTotal { n: u64, max: u64 },
    #[error("logarithm undefined: {0}")]
    LogDomain(&'static str),
    #[error("joint count {f_xy} exceeds min(f_x, f_y) = {min}")]
    InconsistentCounts { f_xy: u64, min: u64 },
    #[error("count {0} is too large")]
    CountOverflow(u64),
    #[error("{0} needs complexities or compressed lengths, not hit counts")]
    UnsupportedKind(SimilarityKind),
    #[error(transparent)]
    Compress(#[from] CompressError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimilarityKind {
    Nid,
    Ncd,
    Nsd,
    Ngd,
    MetricM,
    Dice,
    InfoDist,
}

impl SimilarityKind {
    pub fn name(self) -> &'static str {
        match self {
            SimilarityKind::Nid => "nid",
            SimilarityKind::Ncd => "ncd",
            SimilarityKind::Nsd => "nsd",
            SimilarityKind::Ngd => "ngd",
            SimilarityKind::MetricM => "metric-m",
            SimilarityKind::Dice => "dice",
            SimilarityKind::InfoDist => "info-dist",
        }
    }

    /// Whether the measure can be computed from hit counts alone.
    pub fn uses_hit_counts(self) -> bool {
        matches!(
            self,
            SimilarityKind::Nsd | SimilarityKind::Ngd | SimilarityKind::MetricM | SimilarityKind::Dice
        )
    }
}

impl fmt::Display for SimilarityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "nid" => SimilarityKind::Nid,
            "ncd" => SimilarityKind::Ncd,
            "nsd" => SimilarityKind::Nsd,
            "ngd" => SimilarityKind::Ngd,
            "metric-m" => SimilarityKind::MetricM,
            "dice" => SimilarityKind::Dice,
            "info-dist" => SimilarityKind::InfoDist,
            other => return Err(format!("unknown similarity kind {other:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityScore<T> {
    pub value: T,
    pub kind: SimilarityKind,
}

impl<T: Scalar> SimilarityScore<T> {
    fn new(value: T, kind: SimilarityKind) -> Self {
        Self { value, kind }
    }
}

impl<T: Scalar> fmt::Display for SimilarityScore<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.value.to_f64())
    }
}

/// Counts for a term pair: `f(x)`, `f(y)`, `f(x,y)` and optionally the index
/// size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HitCounts {
    pub f_x: u64,
    pub f_y: u64,
    pub f_xy: u64,
    pub n_total: Option<u64>,
}

impl HitCounts {
    /// Counts as supplied by a user table. `f_xy > min(f_x, f_y)` is allowed
    /// here; live engines produce it.
    pub fn new(f_x: u64, f_y: u64, f_xy: u64, n_total: Option<u64>) -> Result<Self, DistanceError> {
        for c in [f_x, f_y, f_xy].into_iter().chain(n_total) {
            if i64::try_from(c).is_err() {
                return Err(DistanceError::CountOverflow(c));
            }
        }
        if let Some(n) = n_total {
            let max = f_x.max(f_y);
            if n < max {
                return Err(DistanceError::InvalidTotal { n, max });
            }
        }
        Ok(Self {
            f_x,
            f_y,
            f_xy,
            n_total,
        })
    }

    /// Counts derived from a document index, where `f_xy <= min(f_x, f_y)`
    /// must hold.
    pub fn from_index(f_x: u64, f_y: u64, f_xy: u64, n_total: Option<u64>) -> Result<Self, DistanceError> {
        let h = Self::new(f_x, f_y, f_xy, n_total)?;
        if !h.is_consistent() {
            return Err(DistanceError::InconsistentCounts {
                f_xy,
                min: f_x.min(f_y),
            });
        }
        Ok(h)
    }

    pub fn is_consistent(&self) -> bool {
        self.f_xy <= self.f_x.min(self.f_y)
    }

    pub fn swapped(&self) -> Self {
        Self {
            f_x: self.f_y,
            f_y: self.f_x,
            ..*self
        }
    }

    pub fn with_n_total(self, n_total: u64) -> Result<Self, DistanceError> {
        Self::new(self.f_x, self.f_y, self.f_xy, Some(n_total))
    }

    /// Counts for the pair `(x, x)`.
    pub fn diagonal_x(&self) -> Self {
        Self {
            f_x: self.f_x,
            f_y: self.f_x,
            f_xy: self.f_x,
            n_total: self.n_total,
        }
    }
}

fn check_finite<T: Scalar>(values: &[T]) -> Result<(), DistanceError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(DistanceError::NonFinite)
    }
}

fn min_max<T: Scalar>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// `E(x,y) = K(x|y) - min{K(x), K(y)}`, unclamped. It goes negative when the
/// conditional estimate undercuts both unconditional ones.
pub fn information_distance<T: Scalar>(k_x: T, k_y: T, k_x_given_y: T) -> Result<SimilarityScore<T>, DistanceError> {
    check_finite(&[k_x, k_y, k_x_given_y])?;
    let (min, _) = min_max(k_x, k_y);
    Ok(SimilarityScore::new(k_x_given_y - min, SimilarityKind::InfoDist))
}

/// Normalized information distance `(K(x|y) - min) / max`.
pub fn nid<T: Scalar>(k_x: T, k_y: T, k_x_given_y: T) -> Result<SimilarityScore<T>, DistanceError> {
    check_finite(&[k_x, k_y, k_x_given_y])?;
    let (min, max) = min_max(k_x, k_y);
    if max.is_zero() {
        return Err(DistanceError::Degenerate("max(K(x), K(y)) is zero"));
    }
    Ok(SimilarityScore::new((k_x_given_y - min) / max, SimilarityKind::Nid))
}

/// Normalized compression distance over lengths in bits. `c_x_given_y` is
/// whatever joint cost the caller chose; see [`NcdMode`].
pub fn ncd<T: Scalar>(c_x: u64, c_y: u64, c_x_given_y: u64) -> Result<SimilarityScore<T>, DistanceError> {
    let max = c_x.max(c_y);
    if max == 0 {
        return Err(DistanceError::Degenerate("max(C(x), C(y)) is zero"));
    }
    let min = c_x.min(c_y);
    let value = T::from_ratio(count_to_i64(c_x_given_y) - count_to_i64(min), count_to_i64(max));
    Ok(SimilarityScore::new(value, SimilarityKind::Ncd))
}

/// Which joint cost feeds the NCD numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NcdMode {
    /// `C(x|y)`: x compressed with y's model.
    #[default]
    Conditional,
    /// `C(xy)`: the concatenation, as in the textbook NCD.
    Concatenation,
}

/// Compressed lengths used for one NCD evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NcdInputs {
    pub c_x: u64,
    pub c_y: u64,
    pub c_joint: u64,
}

pub fn ncd_inputs<C: Compressor + ?Sized>(
    compressor: &C,
    x: &BitString,
    y: &BitString,
    mode: NcdMode,
) -> Result<NcdInputs, CompressError> {
    let c_x = compressor.compressed_bits(x)?;
    let c_y = compressor.compressed_bits(y)?;
    let c_joint = match mode {
        NcdMode::Conditional => compressor.conditional_bits(x, y)?,
        NcdMode::Concatenation => compressor.compressed_bits(&x.concat(y))?,
    };
    Ok(NcdInputs { c_x, c_y, c_joint })
}

/// NCD of two strings under any compressor.
pub fn ncd_strings<T: Scalar, C: Compressor + ?Sized>(
    compressor: &C,
    x: &BitString,
    y: &BitString,
    mode: NcdMode,
) -> Result<SimilarityScore<T>, DistanceError> {
    let inputs = ncd_inputs(compressor, x, y, mode)?;
    ncd(inputs.c_x, inputs.c_y, inputs.c_joint)
}

/// Normalized search-engine distance `(f(x,y) - min) / max`. The
/// normalizing sum Ψ cancels out of the count form.
pub fn nsd<T: Scalar>(h: &HitCounts) -> Result<SimilarityScore<T>, DistanceError> {
    let max = h.f_x.max(h.f_y);
    if max == 0 {
        return Err(DistanceError::Degenerate("both singleton counts are zero"));
    }
    let min = h.f_x.min(h.f_y);
    let value = T::from_ratio(count_to_i64(h.f_xy) - count_to_i64(min), count_to_i64(max));
    Ok(SimilarityScore::new(value, SimilarityKind::Nsd))
}

/// Normalized Google distance. Requires `N`.
pub fn ngd<T: RealScalar>(h: &HitCounts) -> Result<SimilarityScore<T>, DistanceError> {
    let n = h.n_total.ok_or(DistanceError::MissingTotal)?;
    if h.f_x == 0 || h.f_y == 0 || h.f_xy == 0 {
        return Err(DistanceError::LogDomain("a hit count is zero"));
    }
    if n <= h.f_x.min(h.f_y) {
        return Err(DistanceError::Degenerate("N must exceed min(f_x, f_y)"));
    }
    let ln = |c: u64| <T as Scalar>::from_count(c).ln();
    let (lx, ly) = (ln(h.f_x), ln(h.f_y));
    let num = lx.max(ly) - ln(h.f_xy);
    let den = ln(n) - lx.min(ly);
    Ok(SimilarityScore::new(num / den, SimilarityKind::Ngd))
}

/// Dice form `2 f(x,y) / (f(x) + f(y)) + c`.
pub fn dice_similarity<T: Scalar>(
    f_x: u64,
    f_y: u64,
    f_xy: u64,
    offset: T,
) -> Result<SimilarityScore<T>, DistanceError> {
    let den = f_x.checked_add(f_y).ok_or(DistanceError::CountOverflow(f_x))?;
    if den == 0 {
        return Err(DistanceError::Degenerate("f(x) + f(y) is zero"));
    }
    let num = f_xy.checked_mul(2).ok_or(DistanceError::CountOverflow(f_xy))?;
    let value = T::from_ratio(count_to_i64(num), count_to_i64(den)) + offset;
    Ok(SimilarityScore::new(value, SimilarityKind::Dice))
}

/// Similarity metric M: `log(2 f(x,y)) / log(f(x) + f(y))`.
pub fn metric_m<T: RealScalar>(h: &HitCounts) -> Result<SimilarityScore<T>, DistanceError> {
    if h.f_xy == 0 {
        return Err(DistanceError::LogDomain("f(x,y) is zero, metric M is undefined"));
    }
    let sum = h.f_x + h.f_y;
    if sum < 2 {
        return Err(DistanceError::LogDomain("f(x) + f(y) must be at least 2"));
    }
    let num = <T as Scalar>::from_count(2 * h.f_xy).ln();
    let den = <T as Scalar>::from_count(sum).ln();
    Ok(SimilarityScore::new(num / den, SimilarityKind::MetricM))
}

/// Metric M with logarithms in `base`.
pub fn metric_m_in_base<T: RealScalar>(h: &HitCounts, base: T) -> Result<SimilarityScore<T>, DistanceError> {
    if h.f_xy == 0 {
        return Err(DistanceError::LogDomain("f(x,y) is zero, metric M is undefined"));
    }
    let sum = h.f_x + h.f_y;
    if sum < 2 {
        return Err(DistanceError::LogDomain("f(x) + f(y) must be at least 2"));
    }
    let num = <T as Scalar>::from_count(2 * h.f_xy).log(base);
    let den = <T as Scalar>::from_count(sum).log(base);
    Ok(SimilarityScore::new(num / den, SimilarityKind::MetricM))
}

/// Parameters for the count-based measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountOptions<T> {
    /// Overrides or supplies `N` for NGD.
    pub n_total: Option<u64>,
    pub dice_offset: T,
}

impl<T: Scalar> Default for CountOptions<T> {
    fn default() -> Self {
        Self {
            n_total: None,
            dice_offset: T::zero(),
        }
    }
}

/// Evaluates any count-based `kind` on `h`.
pub fn evaluate_counts<T: RealScalar>(
    kind: SimilarityKind,
    h: &HitCounts,
    options: &CountOptions<T>,
) -> Result<SimilarityScore<T>, DistanceError> {
    match kind {
        SimilarityKind::Nsd => nsd(h),
        SimilarityKind::Ngd => match options.n_total {
            Some(n) => ngd(&h.with_n_total(n)?),
            None => ngd(h),
        },
        SimilarityKind::MetricM => metric_m(h),
        SimilarityKind::Dice => dice_similarity(h.f_x, h.f_y, h.f_xy, options.dice_offset),
        other => Err(DistanceError::UnsupportedKind(other)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    NonNegative,
    Symmetric,
    SelfMaximal,
    UnitRange,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::NonNegative => "non-negativity",
            Axiom::Symmetric => "symmetry",
            Axiom::SelfMaximal => "s(x,y) <= s(x,x)",
            Axiom::UnitRange => "range in [0,1]",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub x: usize,
    pub y: usize,
    pub value: f64,
    pub other: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Outcome of [`check_similarity_axioms`]. Failures are data.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
    /// Ordered pairs where the function had no value.
    pub undefined: Vec<(usize, usize, String)>,
    pub evaluated: usize,
}

impl AxiomReport {
    pub fn result(&self, axiom: Axiom) -> &AxiomResult {
        self.results
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("every axiom is reported")
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }
}

const AXIOM_TOLERANCE: f64 = 1e-12;

/// Evaluates `s` on every ordered pair of `objects` (diagonal included) and
/// checks non-negativity, symmetry, `s(x,y) <= s(x,x)` and range `[0,1]`.
pub fn check_similarity_axioms<O, F, E>(objects: &[O], s: F) -> AxiomReport
where
    F: Fn(&O, &O) -> Result<f64, E>,
    E: fmt::Display,
{
    let n = objects.len();
    let mut values = vec![vec![None; n]; n];
    let mut undefined = Vec::new();
    let mut evaluated = 0;
    for i in 0..n {
        for j in 0..n {
            match s(&objects[i], &objects[j]) {
                Ok(v) => {
                    values[i][j] = Some(v);
                    evaluated += 1;
                }
                Err(e) => undefined.push((i, j, e.to_string())),
            }
        }
    }

    let mut non_negative = Vec::new();
    let mut symmetric = Vec::new();
    let mut self_maximal = Vec::new();
    let mut unit_range = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            let Some(v) = values[i][j] else { continue };
            if v < -AXIOM_TOLERANCE {
                non_negative.push(Counterexample {
                    x: i,
                    y: j,
                    value: v,
                    other: None,
                });
            }
            if !(-AXIOM_TOLERANCE..=1.0 + AXIOM_TOLERANCE).contains(&v) {
                unit_range.push(Counterexample {
                    x: i,
                    y: j,
                    value: v,
                    other: None,
                });
            }
            if let Some(w) = values[j][i] {
                if i < j && (v - w).abs() > AXIOM_TOLERANCE {
                    symmetric.push(Counterexample {
                        x: i,
                        y: j,
                        value: v,
                        other: Some(w),
                    });
                }
            }
            if let Some(d) = values[i][i] {
                if i != j && v > d + AXIOM_TOLERANCE {
                    self_maximal.push(Counterexample {
                        x: i,
                        y: j,
                        value: v,
                        other: Some(d),
                    });
                }
            }
        }
    }

    AxiomReport {
        results: vec![
            AxiomResult {
                axiom: Axiom::NonNegative,
                counterexamples: non_negative,
            },
            AxiomResult {
                axiom: Axiom::Symmetric,
                counterexamples: symmetric,
            },
            AxiomResult {
                axiom: Axiom::SelfMaximal,
                counterexamples: self_maximal,
            },
            AxiomResult {
                axiom: Axiom::UnitRange,
                counterexamples: unit_range,
            },
        ],
        undefined,
        evaluated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    const HORSE_N: u64 = 8_058_044_651;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn hc(f_x: u64, f_y: u64, f_xy: u64, n: Option<u64>) -> HitCounts {
        HitCounts::new(f_x, f_y, f_xy, n).unwrap()
    }

    #[test]
    fn information_distance_examples() {
        let r = |n, d| Rational::new(n, d);
        assert_eq!(
            information_distance(r(85, 100), r(625, 1000), r(75, 100))
                .unwrap()
                .value,
            r(1, 8)
        );
        assert_eq!(information_distance(0.5, 0.5, 0.5).unwrap().value, 0.0);
        assert_eq!(
            information_distance(r(85, 100), r(625, 1000), r(55, 100))
                .unwrap()
                .value,
            r(-3, 40)
        );
        assert_eq!(information_distance(f64::NAN, 0.1, 0.1), Err(DistanceError::NonFinite));
    }

    #[test]
    fn nid_examples() {
        let v: f64 = nid(0.85, 0.625, 0.75).unwrap().value;
        assert!(close(v, 0.147059, 5e-7));
        assert_eq!(nid(0.4, 0.4, 0.4).unwrap().value, 0.0);
        let v: f64 = nid(0.85, 0.75, 0.55).unwrap().value;
        assert!(close(v, -0.235294, 5e-7));
        assert!(matches!(nid(0.0, 0.0, 0.1), Err(DistanceError::Degenerate(_))));
    }

    #[test]
    fn ncd_examples() {
        assert_eq!(ncd::<Rational>(34, 20, 30).unwrap().value, Rational::new(5, 17));
        assert_eq!(ncd::<f64>(34, 20, 30).unwrap().to_string(), "0.294118");
        assert_eq!(ncd::<f64>(34, 24, 22).unwrap().to_string(), "-0.058824");
        assert_eq!(ncd::<Rational>(7, 7, 7).unwrap().value, Rational::new(0, 1));
        assert!(ncd::<f64>(0, 0, 3).is_err());
    }

    #[test]
    fn nsd_examples() {
        assert_eq!(nsd::<Rational>(&hc(3, 2, 2, None)).unwrap().value, Rational::new(0, 1));
        assert_eq!(nsd::<Rational>(&hc(4, 4, 4, None)).unwrap().value, Rational::new(0, 1));
        assert_eq!(nsd::<Rational>(&hc(5, 3, 0, None)).unwrap().value, Rational::new(-3, 5));
        assert!(nsd::<f64>(&hc(0, 0, 0, None)).is_err());
    }

    #[test]
    fn ngd_examples() {
        let v: f64 = ngd(&hc(46_700_000, 12_200_000, 2_630_000, Some(HORSE_N)))
            .unwrap()
            .value;
        assert!(close(v, 0.443, 1e-3));
        let v: f64 = ngd(&hc(9, 9, 9, Some(100))).unwrap().value;
        assert_eq!(v, 0.0);
        // frozen from direct substitution
        let v: f64 = ngd(&hc(150_000_000, 57_000_000, 12_400_000, Some(HORSE_N)))
            .unwrap()
            .value;
        assert!(close(v, 0.503484, 1e-6));
        assert_eq!(ngd::<f64>(&hc(3, 2, 1, None)), Err(DistanceError::MissingTotal));
        assert!(matches!(
            ngd::<f64>(&hc(3, 2, 0, Some(10))),
            Err(DistanceError::LogDomain(_))
        ));
    }

    #[test]
    fn dice_examples() {
        assert_eq!(
            dice_similarity(6, 6, 6, Rational::new(0, 1)).unwrap().value,
            Rational::new(1, 1)
        );
        assert_eq!(
            dice_similarity(3, 2, 2, Rational::new(0, 1)).unwrap().value,
            Rational::new(4, 5)
        );
        assert_eq!(dice_similarity(5, 3, 0, 0.0).unwrap().value, 0.0);
        assert_eq!(dice_similarity(3, 2, 2, 1.0).unwrap().value, 1.8);
        assert!(dice_similarity(0, 0, 0, 0.0).is_err());
    }

    #[test]
    fn metric_m_examples() {
        let m = |a, b, c| metric_m::<f64>(&hc(a, b, c, None)).unwrap().value;
        assert!(close(m(150_000_000, 57_000_000, 12_400_000), 0.889187, 1e-6));
        assert!(close(m(737_000_000, 256_000_000, 52_000_000), 0.891084, 1e-6));
        assert!(close(m(46_700_000, 12_200_000, 2_630_000), 0.865, 1e-3));
        assert!(matches!(
            metric_m::<f64>(&hc(5, 3, 0, None)),
            Err(DistanceError::LogDomain(_))
        ));
    }

    #[test]
    fn metric_m_f32() {
        let v: f32 = metric_m(&hc(150_000_000, 57_000_000, 12_400_000, None)).unwrap().value;
        assert!((v - 0.889187).abs() < 1e-5);
    }

    #[test]
    fn scale_behaviour() {
        let base = dice_similarity::<Rational>(30, 20, 10, Rational::new(0, 1))
            .unwrap()
            .value;
        let scaled = dice_similarity::<Rational>(300, 200, 100, Rational::new(0, 1))
            .unwrap()
            .value;
        assert_eq!(base, scaled);
        let m1: f64 = metric_m(&hc(30, 20, 10, None)).unwrap().value;
        let m2: f64 = metric_m(&hc(300, 200, 100, None)).unwrap().value;
        assert!((m1 - m2).abs() > 1e-3);
    }

    #[test]
    fn index_counts_are_strict() {
        assert!(HitCounts::from_index(3, 2, 2, Some(3)).is_ok());
        assert!(matches!(
            HitCounts::from_index(3, 2, 3, None),
            Err(DistanceError::InconsistentCounts { .. })
        ));
        assert!(HitCounts::new(3, 2, 3, None).is_ok());
        assert!(matches!(
            HitCounts::new(3, 2, 1, Some(2)),
            Err(DistanceError::InvalidTotal { .. })
        ));
    }

    #[test]
    fn evaluate_dispatch() {
        let h = hc(3, 2, 2, Some(3));
        let opts = CountOptions::<f64>::default();
        assert_eq!(evaluate_counts(SimilarityKind::Dice, &h, &opts).unwrap().value, 0.8);
        assert!(matches!(
            evaluate_counts(SimilarityKind::Ncd, &h, &opts),
            Err(DistanceError::UnsupportedKind(SimilarityKind::Ncd))
        ));
        let with_n = CountOptions {
            n_total: Some(1000),
            dice_offset: 0.0,
        };
        let a = evaluate_counts(SimilarityKind::Ngd, &hc(3, 2, 2, None), &with_n)
            .unwrap()
            .value;
        let b: f64 = ngd(&hc(3, 2, 2, Some(1000))).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn kind_names_roundtrip() {
        for k in [
            SimilarityKind::Nid,
            SimilarityKind::Ncd,
            SimilarityKind::Nsd,
            SimilarityKind::Ngd,
            SimilarityKind::MetricM,
            SimilarityKind::Dice,
            SimilarityKind::InfoDist,
        ] {
            assert_eq!(k.name().parse::<SimilarityKind>().unwrap(), k);
        }
    }

    #[test]
    fn dice_diagonal_is_row_maximum() {
        let counts = [(6u64, 6u64, 6u64), (6, 4, 3), (6, 9, 6), (6, 1, 0)];
        let values: Vec<f64> = counts
            .iter()
            .map(|&(a, b, c)| dice_similarity(a, b, c, 0.0).unwrap().value)
            .collect();
        assert_eq!(values[0], 1.0);
        assert!(values.iter().all(|&v| v <= values[0]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn consistent() -> impl Strategy<Value = HitCounts> {
            (1u64..1_000_000, 1u64..1_000_000)
                .prop_flat_map(|(a, b)| (Just(a), Just(b), 1..=a.min(b)))
                .prop_map(|(a, b, c)| HitCounts::from_index(a, b, c, Some(a.max(b) * 4 + 1)).unwrap())
        }

        proptest! {
            #[test]
            fn symmetric_under_swap(h in consistent()) {
                let s = h.swapped();
                prop_assert_eq!(nsd::<Rational>(&h).unwrap().value, nsd::<Rational>(&s).unwrap().value);
                prop_assert_eq!(
                    dice_similarity::<Rational>(h.f_x, h.f_y, h.f_xy, Rational::new(0, 1)).unwrap().value,
                    dice_similarity::<Rational>(s.f_x, s.f_y, s.f_xy, Rational::new(0, 1)).unwrap().value
                );
                prop_assert_eq!(metric_m::<f64>(&h).unwrap().value, metric_m::<f64>(&s).unwrap().value);
                let (a, b) = (ngd::<f64>(&h).unwrap().value, ngd::<f64>(&s).unwrap().value);
                prop_assert!((a - b).abs() < 1e-12);
            }

            #[test]
            fn metric_m_base_independent(h in consistent(), base in 1.5f64..100.0) {
                let natural = metric_m::<f64>(&h).unwrap().value;
                let other = metric_m_in_base(&h, base).unwrap().value;
                prop_assert!((natural - other).abs() < 1e-12);
            }

            #[test]
            fn metric_m_range(h in consistent()) {
                prop_assume!(h.f_x + h.f_y >= 2);
                let v = metric_m::<f64>(&h).unwrap().value;
                prop_assert!(v > 0.0);
                prop_assert!(v <= 1.0 + 1e-15);
                if 2 * h.f_xy == h.f_x + h.f_y {
                    prop_assert!((v - 1.0).abs() < 1e-15);
                } else {
                    prop_assert!(v < 1.0);
                }
            }

            #[test]
            fn metric_m_increasing_in_joint(a in 2u64..100_000, b in 2u64..100_000) {
                let min = a.min(b);
                prop_assume!(min >= 2);
                let lo = metric_m::<f64>(&HitCounts::from_index(a, b, min - 1, None).unwrap()).unwrap().value;
                let hi = metric_m::<f64>(&HitCounts::from_index(a, b, min, None).unwrap()).unwrap().value;
                prop_assert!(hi > lo);
            }

            #[test]
            fn ngd_decreasing_in_joint(a in 2u64..100_000, b in 2u64..100_000) {
                let min = a.min(b);
                prop_assume!(min >= 2);
                let n = Some(a.max(b) * 10);
                let lo = ngd::<f64>(&HitCounts::from_index(a, b, min - 1, n).unwrap()).unwrap().value;
                let hi = ngd::<f64>(&HitCounts::from_index(a, b, min, n).unwrap()).unwrap().value;
                prop_assert!(hi < lo);
            }
        }
    }
}
