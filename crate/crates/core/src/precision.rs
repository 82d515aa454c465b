//! Decimal-digit precision requests and the digit/bit conversions used to
//! size MPFR mantissas.
//!
//! Contract: a routine taking a [`Precision`] returns results accurate to at
//! least `digits() - 10` decimal digits, raising its internal working
//! precision as needed, or fails with a precision error.

use crate::error::{Error, Result};

pub const MIN_DIGITS: u32 = 30;
pub const DEFAULT_DIGITS: u32 = 60;

/// Guard bits added on top of the digit-to-bit conversion so that plain
/// arithmetic round-off stays below the last requested digit.
const GUARD_BITS: u32 = 16;

const LOG2_10: f64 = 3.321928094887362;

/// Requested output precision in decimal digits (>= 30).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::domain(
                "Precision::new",
                format!("need at least {MIN_DIGITS} decimal digits, got {digits}"),
            ));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Mantissa size in bits for values carried at this precision.
    pub fn bits(self) -> u32 {
        bits_for_digits(self.0)
    }

    /// A loosened copy with `extra` more decimal digits (for internal
    /// guard computations; not a user-facing precision).
    pub fn plus(self, extra: u32) -> Precision {
        Precision(self.0 + extra)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_DIGITS)
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
}

pub fn digits_for_bits(bits: u32) -> u32 {
    ((bits.saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_too_few_digits() {
        assert!(Precision::new(10).is_err());
        assert!(Precision::new(30).is_ok());
    }

    #[test]
    fn default_is_sixty() {
        assert_eq!(Precision::default().digits(), 60);
    }

    #[test]
    fn bit_conversion_round_trips() {
        for d in [30u32, 60, 100, 240, 600] {
            let b = bits_for_digits(d);
            assert!(digits_for_bits(b) >= d);
            assert!(digits_for_bits(b) <= d + 2);
        }
    }
}
