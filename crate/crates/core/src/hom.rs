//! Exact homogeneities `a + b·κ` where κ is a formal positive infinitesimal.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value `base + kappa·κ`.
///
/// Ordering is the κ → 0⁺ limit order: compare `base` first, then `kappa`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Homogeneity {
    pub base: Rational64,
    pub kappa: Rational64,
}

impl Homogeneity {
    pub fn new(base: Rational64, kappa: Rational64) -> Self {
        Homogeneity { base, kappa }
    }

    pub fn from_ints(base: i64, kappa: i64) -> Self {
        Homogeneity::new(Rational64::from_integer(base), Rational64::from_integer(kappa))
    }

    /// `p/q + (r/s)·κ` from four integers.
    pub fn frac(p: i64, q: i64, r: i64, s: i64) -> Self {
        Homogeneity::new(Rational64::new(p, q), Rational64::new(r, s))
    }

    pub fn rational(base: Rational64) -> Self {
        Homogeneity::new(base, Rational64::zero())
    }

    pub fn zero() -> Self {
        Homogeneity::default()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.kappa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        *self > Homogeneity::zero()
    }

    pub fn is_negative(&self) -> bool {
        *self < Homogeneity::zero()
    }

    /// Substitutes a concrete value for κ.
    pub fn concrete(&self, kappa: Rational64) -> Rational64 {
        self.base + self.kappa * kappa
    }

    pub fn scale(&self, factor: Rational64) -> Self {
        Homogeneity::new(self.base * factor, self.kappa * factor)
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Add for Homogeneity {
    type Output = Homogeneity;
    fn add(self, rhs: Homogeneity) -> Homogeneity {
        Homogeneity::new(self.base + rhs.base, self.kappa + rhs.kappa)
    }
}

impl AddAssign for Homogeneity {
    fn add_assign(&mut self, rhs: Homogeneity) {
        *self = *self + rhs;
    }
}

impl Sub for Homogeneity {
    type Output = Homogeneity;
    fn sub(self, rhs: Homogeneity) -> Homogeneity {
        Homogeneity::new(self.base - rhs.base, self.kappa - rhs.kappa)
    }
}

impl Neg for Homogeneity {
    type Output = Homogeneity;
    fn neg(self) -> Homogeneity {
        Homogeneity::new(-self.base, -self.kappa)
    }
}

impl Mul<i64> for Homogeneity {
    type Output = Homogeneity;
    fn mul(self, rhs: i64) -> Homogeneity {
        self.scale(Rational64::from_integer(rhs))
    }
}

impl Mul<Rational64> for Homogeneity {
    type Output = Homogeneity;
    fn mul(self, rhs: Rational64) -> Homogeneity {
        self.scale(rhs)
    }
}

impl Sum for Homogeneity {
    fn sum<I: Iterator<Item = Homogeneity>>(iter: I) -> Homogeneity {
        iter.fold(Homogeneity::zero(), |a, b| a + b)
    }
}

/// Compares two homogeneities in the κ → 0⁺ order.
pub fn hom_cmp(a: &Homogeneity, b: &Homogeneity) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kappa.is_zero() {
            return write!(f, "{}", self.base);
        }
        let sign = if self.kappa.is_negative() { '-' } else { '+' };
        let mag = self.kappa.abs();
        let coeff = if mag == Rational64::from_integer(1) {
            String::new()
        } else {
            mag.to_string()
        };
        if self.base.is_zero() {
            if sign == '-' {
                write!(f, "-{coeff}κ")
            } else {
                write!(f, "{coeff}κ")
            }
        } else {
            write!(f, "{}{sign}{coeff}κ", self.base)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse homogeneity `{0}`: expected `BASE` or `BASE,KAPPA` with rationals like -3/2")]
pub struct ParseHomogeneityError(pub String);

/// Parses `BASE` or `BASE,KAPPA`, each an integer or `p/q`.
impl FromStr for Homogeneity {
    type Err = ParseHomogeneityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHomogeneityError(s.to_string());
        let mut parts = s.split(',');
        let base = parts.next().ok_or_else(err)?;
        let base = parse_rational(base).ok_or_else(err)?;
        let kappa = match parts.next() {
            Some(k) => parse_rational(k).ok_or_else(err)?,
            None => Rational64::zero(),
        };
        if parts.next().is_some() {
            return Err(err());
        }
        Ok(Homogeneity::new(base, kappa))
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        Some(Rational64::new(p, q))
    } else {
        s.parse::<i64>().ok().map(Rational64::from_integer)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomogeneityDoc {
    base: String,
    #[serde(default = "zero_string")]
    kappa: String,
}

fn zero_string() -> String {
    "0".to_string()
}

impl Serialize for Homogeneity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        HomogeneityDoc {
            base: self.base.to_string(),
            kappa: self.kappa.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Homogeneity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = HomogeneityDoc::deserialize(deserializer)?;
        let base = parse_rational(&doc.base)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", doc.base)))?;
        let kappa = parse_rational(&doc.kappa)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", doc.kappa)))?;
        Ok(Homogeneity::new(base, kappa))
    }
}
