//! Exact arbitrary-precision fractions for bound values.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A fraction in lowest terms with a positive denominator.
///
/// Displays as `num/den`, always including the denominator, so `2` renders
/// as `2/1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    /// `1 / k`.
    pub fn unit_fraction(k: u64) -> Self {
        Rational(BigRational::new(BigInt::one(), k.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Ceiling as a machine integer, saturating on overflow.
    pub fn ceil_u64(&self) -> u64 {
        let c = self.ceil();
        if c.is_negative() {
            0
        } else {
            c.to_u64().unwrap_or(u64::MAX)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `places` digits after the point, rounded half
    /// away from zero. Computed exactly from the fraction.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let num: BigInt = self.numer().abs() * &scale * 2 + self.denom();
        let scaled = num.div_floor(&(self.denom() * 2));
        let digits = scaled.to_string();
        let sign = if self.0.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if places == 0 {
            return format!("{sign}{digits}");
        }
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{sign}{int}.{frac}")
    }

    /// Compares against an integer without allocating a fraction.
    pub fn le_integer(&self, value: u64) -> bool {
        self.numer() <= &(self.denom() * BigInt::from(value))
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid fraction {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(Rational::new(6, 4).to_string(), "3/2");
        assert_eq!(Rational::new(2, -4).to_string(), "-1/2");
        assert_eq!(Rational::from(2).to_string(), "2/1");
        assert_eq!(Rational::zero().to_string(), "0/1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/2", "0/1", "-7/3", "12345678901234567890/7"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("4".parse::<Rational>().unwrap(), Rational::from(4));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn ceiling() {
        assert_eq!(Rational::new(3, 2).ceil_u64(), 2);
        assert_eq!(Rational::from(2).ceil_u64(), 2);
        assert_eq!(Rational::new(1, 7).ceil_u64(), 1);
        assert_eq!(Rational::zero().ceil_u64(), 0);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::new(3, 2).to_decimal(6), "1.500000");
        assert_eq!(Rational::new(2, 3).to_decimal(6), "0.666667");
        assert_eq!(Rational::new(1, 3).to_decimal(6), "0.333333");
        assert_eq!(Rational::new(-1, 3).to_decimal(2), "-0.33");
        assert_eq!(Rational::new(5, 2).to_decimal(0), "3");
        assert_eq!(Rational::new(1, 20_000_000).to_decimal(6), "0.000000");
        assert_eq!(Rational::from(12).to_decimal(6), "12.000000");
    }

    #[test]
    fn sums_stay_exact() {
        // H_60 has a denominator far beyond u64.
        let h: Rational = (1..=60).map(Rational::unit_fraction).sum();
        assert!(h.denom().bits() > 64);
        assert!(h > Rational::from(4) && h < Rational::from(5));
        assert!(h.le_integer(5) && !h.le_integer(4));
    }
}
