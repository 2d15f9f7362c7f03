use std::fmt;

use super::RelationError;
use crate::scalar::Scalar;

/// Nine labelled strength bands partitioning `[0, 1]`.
///
/// Bands are half-open `[lower, upper)`; a value on a boundary belongs to the
/// upper band, and `Close` also takes 1.0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum RelationCategory {
    Unclose = 1,
    Weakest = 2,
    Weaker = 3,
    Weak = 4,
    Middle = 5,
    Strong = 6,
    Stronger = 7,
    Strongest = 8,
    Close = 9,
}

// lower bounds in hundredths
const LOWER_BOUNDS: [i64; 9] = [0, 11, 22, 33, 44, 56, 67, 78, 89];

impl RelationCategory {
    pub const ALL: [RelationCategory; 9] = [
        RelationCategory::Unclose,
        RelationCategory::Weakest,
        RelationCategory::Weaker,
        RelationCategory::Weak,
        RelationCategory::Middle,
        RelationCategory::Strong,
        RelationCategory::Stronger,
        RelationCategory::Strongest,
        RelationCategory::Close,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(usize::from(code).checked_sub(1)?).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            RelationCategory::Unclose => "unclose",
            RelationCategory::Weakest => "weakest",
            RelationCategory::Weaker => "weaker",
            RelationCategory::Weak => "weak",
            RelationCategory::Middle => "middle",
            RelationCategory::Strong => "strong",
            RelationCategory::Stronger => "stronger",
            RelationCategory::Strongest => "strongest",
            RelationCategory::Close => "close",
        }
    }

    /// `(lower, upper)` in hundredths. The upper bound is exclusive except
    /// for `Close`.
    pub fn bounds_hundredths(self) -> (i64, i64) {
        let i = self.code() as usize - 1;
        (LOWER_BOUNDS[i], LOWER_BOUNDS.get(i + 1).copied().unwrap_or(100))
    }

    pub fn bounds<T: Scalar>(self) -> (T, T) {
        let (lo, hi) = self.bounds_hundredths();
        (T::from_ratio(lo, 100), T::from_ratio(hi, 100))
    }

    pub fn contains<T: Scalar>(self, value: T) -> bool {
        let (lo, hi) = self.bounds::<T>();
        if self == RelationCategory::Close {
            lo <= value && value <= hi
        } else {
            lo <= value && value < hi
        }
    }

    /// Interval text such as `[0.44, 0.56)`.
    pub fn interval(self) -> String {
        let (lo, hi) = self.bounds_hundredths();
        let close = if self == RelationCategory::Close { ']' } else { ')' };
        format!("[{:.2}, {:.2}{close}", lo as f64 / 100.0, hi as f64 / 100.0)
    }
}

impl fmt::Display for RelationCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// The band containing `value`.
pub fn categorize<T: Scalar>(value: T) -> Result<RelationCategory, RelationError> {
    if !value.is_finite() || value < T::zero() || value > T::one() {
        return Err(RelationError::OutOfRange(value.to_f64()));
    }
    let code = LOWER_BOUNDS
        .iter()
        .rposition(|&lo| T::from_ratio(lo, 100) <= value)
        .expect("value >= 0 always matches the first band");
    Ok(RelationCategory::ALL[code])
}

/// Sidecar legend: one `code<TAB>label<TAB>interval` line per band.
pub fn legend_text() -> String {
    let mut out = String::from("code\tlabel\tinterval\n");
    for c in RelationCategory::ALL {
        out.push_str(&format!("{}\t{}\t{}\n", c.code(), c.label(), c.interval()));
    }
    out
}
