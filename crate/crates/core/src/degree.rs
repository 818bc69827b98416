//! Approximation degrees in `[0, 1]`, kept as exact decimals.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const SCALE: u32 = 1_000_000_000;
const SCALE_DIGITS: usize = 9;

/// A degree in `[0, 1]` stored as a fixed-point decimal with nine fractional
/// digits, so parsed values such as `0.6` print back unchanged and `min`
/// never rounds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("`{0}` is not a decimal number")]
    NotDecimal(String),
    #[error("`{0}` has more than {SCALE_DIGITS} fractional digits")]
    TooPrecise(String),
    #[error("degree {0} is outside [0, 1]")]
    OutOfRange(String),
}

impl Degree {
    pub const ZERO: Degree = Degree(0);
    pub const ONE: Degree = Degree(SCALE);

    /// Builds a degree from billionths.
    pub fn from_billionths(n: u32) -> Option<Degree> {
        (n <= SCALE).then_some(Degree(n))
    }

    pub fn billionths(self) -> u32 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self == Degree::ONE
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / f64::from(SCALE)
    }
}

impl FromStr for Degree {
    type Err = DegreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DegreeError::NotDecimal(s.to_string());
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if s.contains('.') && (frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit())) {
            return Err(bad());
        }
        let frac_trimmed = frac.trim_end_matches('0');
        if frac_trimmed.len() > SCALE_DIGITS {
            return Err(DegreeError::TooPrecise(s.to_string()));
        }
        let int_trimmed = int.trim_start_matches('0');
        if int_trimmed.len() > 1 {
            return Err(DegreeError::OutOfRange(s.to_string()));
        }
        let int_value = int_trimmed
            .bytes()
            .next()
            .map_or(0, |b| u64::from(b - b'0'));
        let mut frac_value: u64 = 0;
        for (i, b) in frac_trimmed.bytes().enumerate() {
            frac_value += u64::from(b - b'0') * 10u64.pow((SCALE_DIGITS - 1 - i) as u32);
        }
        let total = int_value * u64::from(SCALE) + frac_value;
        if total > u64::from(SCALE) {
            return Err(DegreeError::OutOfRange(s.to_string()));
        }
        Ok(Degree(total as u32))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / SCALE;
        let frac = self.0 % SCALE;
        let digits = format!("{frac:09}");
        let digits = digits.trim_end_matches('0');
        if digits.is_empty() {
            write!(f, "{int}.0")
        } else {
            write!(f, "{int}.{digits}")
        }
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_exactly() {
        for s in ["0.6", "0.8", "1.0", "0.0", "0.123456789", "0.05"] {
            assert_eq!(s.parse::<Degree>().unwrap().to_string(), s);
        }
        assert_eq!("1".parse::<Degree>().unwrap(), Degree::ONE);
        assert_eq!("0.50".parse::<Degree>().unwrap().to_string(), "0.5");
        assert_eq!("001".parse::<Degree>().unwrap(), Degree::ONE);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            "1.5".parse::<Degree>(),
            Err(DegreeError::OutOfRange(_))
        ));
        assert!(matches!(
            "2".parse::<Degree>(),
            Err(DegreeError::OutOfRange(_))
        ));
        assert!(matches!(
            "0.1234567891".parse::<Degree>(),
            Err(DegreeError::TooPrecise(_))
        ));
        assert!(matches!(
            "abc".parse::<Degree>(),
            Err(DegreeError::NotDecimal(_))
        ));
        assert!(matches!(
            ".5".parse::<Degree>(),
            Err(DegreeError::NotDecimal(_))
        ));
        assert!(matches!(
            "1.".parse::<Degree>(),
            Err(DegreeError::NotDecimal(_))
        ));
    }

    #[test]
    fn min_is_exact() {
        let a: Degree = "0.6".parse().unwrap();
        let b: Degree = "0.8".parse().unwrap();
        assert_eq!(a.min(b).min(Degree::ONE).to_string(), "0.6");
    }
}
