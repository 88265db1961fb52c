//! Fixed-resolution lengths.

use core::fmt;

/// A length in millimetres, stored with 0.01 mm resolution.
///
/// Measurements are recorded with physical rulers or virtual CAD rulers, so a
/// hundredth of a millimetre is already finer than anything a record can
/// carry. Storing hundredths as an integer makes records compare and
/// round-trip exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Length(i64);

impl Length {
    pub const ZERO: Length = Length(0);

    pub const fn from_hundredths(hundredths: i64) -> Self {
        Length(hundredths)
    }

    /// Rounds to the nearest hundredth of a millimetre (ties away from zero).
    /// Non-finite input maps to zero; out-of-range input saturates.
    pub fn from_mm(mm: f64) -> Self {
        if !mm.is_finite() {
            return Length::ZERO;
        }
        let scaled = libm::round(mm * 100.0);
        if scaled >= i64::MAX as f64 {
            Length(i64::MAX)
        } else if scaled <= i64::MIN as f64 {
            Length(i64::MIN)
        } else {
            Length(scaled as i64)
        }
    }

    pub const fn hundredths(self) -> i64 {
        self.0
    }

    pub fn mm(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }
}

/// Always two fractional digits, e.g. `12.30` or `-0.05`.
impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{}{}.{:02}", sign, abs / 100, abs % 100)
    }
}
