use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{format_rational, parse_rational, primitive_integers, Rational};
use super::MathError;

/// A vector of exact rationals: spectra, rows of a matrix, cone generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SpectralVector(Vec<Rational>);

impl SpectralVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn from_bigints(values: &[BigInt]) -> Self {
        Self(values.iter().cloned().map(Rational::from_integer).collect())
    }

    /// The all-ones vector `e`.
    pub fn ones(n: usize) -> Self {
        Self(vec![Rational::one(); n])
    }

    /// The canonical basis vector `e_i` (zero-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        Self(v)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    /// Parses a comma- or whitespace-separated list of rationals.
    pub fn parse(text: &str) -> Result<Self, MathError> {
        let entries = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn hadamard(&self, other: &Self) -> Result<Self, MathError> {
        self.check_len(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    pub fn dot(&self, other: &Self) -> Result<Rational, MathError> {
        self.check_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    /// True when no entry is zero.
    pub fn is_totally_nonzero(&self) -> bool {
        self.0.iter().all(|a| !a.is_zero())
    }

    /// Positive multiple with coprime integer entries.
    pub fn primitive(&self) -> Self {
        Self::from_bigints(&primitive_integers(&self.0))
    }

    /// `Some(c)` when `self = c * other` for some rational `c > 0`.
    pub fn positive_multiple_of(&self, other: &Self) -> Option<Rational> {
        if self.len() != other.len() || other.is_zero() {
            return None;
        }
        let k = other.0.iter().position(|a| !a.is_zero())?;
        let c = &self.0[k] / &other.0[k];
        (c.is_positive() && *self == other.scale(&c)).then_some(c)
    }

    fn check_len(&self, other: &Self) -> Result<(), MathError> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(MathError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            })
        }
    }
}

impl Deref for SpectralVector {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for SpectralVector {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

impl fmt::Display for SpectralVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for SpectralVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for SpectralVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
            .map_err(D::Error::custom)
    }
}

/// Serde adapter writing a single rational as a `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(deserializer)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}
