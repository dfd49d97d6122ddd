//! Fractional mode indices and weights.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::VosaError;
use crate::scalar::{from_small, Scalar};

/// An element of `(1/D) Z` for the context denominator `D`.
///
/// Mode indices, weights and degrees all live here. Arithmetic is exact;
/// the lattice constraint is enforced by [`FracIndex::in_lattice`] where a
/// sector fixes `D`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FracIndex(Ratio<i64>);

impl FracIndex {
    pub const ZERO: FracIndex = FracIndex(Ratio::new_raw(0, 1));
    pub const HALF: FracIndex = FracIndex(Ratio::new_raw(1, 2));
    pub const ONE: FracIndex = FracIndex(Ratio::new_raw(1, 1));

    pub fn new(p: i64, q: i64) -> Self {
        FracIndex(Ratio::new(p, q))
    }

    pub fn int(n: i64) -> Self {
        FracIndex(Ratio::from_integer(n))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn to_scalar(self) -> Scalar {
        from_small(self.0)
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(self) -> bool {
        *self.0.numer() == 0
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn ceil(self) -> i64 {
        self.0.ceil().to_integer()
    }

    /// Integer value, if integral.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// Representative of the class mod Z in `[0, 1)`.
    pub fn frac_part(self) -> FracIndex {
        FracIndex(self.0 - self.0.floor())
    }

    pub fn same_class(self, other: FracIndex) -> bool {
        (self - other).is_integer()
    }

    pub fn in_lattice(self, d: i64) -> bool {
        d % self.denom() == 0
    }

    pub fn max(self, other: FracIndex) -> FracIndex {
        if self >= other {
            self
        } else {
            other
        }
    }
}

pub fn lcm_denominators<I: IntoIterator<Item = FracIndex>>(it: I) -> i64 {
    it.into_iter().fold(1i64, |acc, f| acc.lcm(&f.denom()))
}

impl Add for FracIndex {
    type Output = FracIndex;
    fn add(self, rhs: FracIndex) -> FracIndex {
        FracIndex(self.0 + rhs.0)
    }
}

impl AddAssign for FracIndex {
    fn add_assign(&mut self, rhs: FracIndex) {
        self.0 += rhs.0;
    }
}

impl Add<i64> for FracIndex {
    type Output = FracIndex;
    fn add(self, rhs: i64) -> FracIndex {
        FracIndex(self.0 + rhs)
    }
}

impl Sub for FracIndex {
    type Output = FracIndex;
    fn sub(self, rhs: FracIndex) -> FracIndex {
        FracIndex(self.0 - rhs.0)
    }
}

impl Sub<i64> for FracIndex {
    type Output = FracIndex;
    fn sub(self, rhs: i64) -> FracIndex {
        FracIndex(self.0 - rhs)
    }
}

impl Mul<i64> for FracIndex {
    type Output = FracIndex;
    fn mul(self, rhs: i64) -> FracIndex {
        FracIndex(self.0 * rhs)
    }
}

impl Neg for FracIndex {
    type Output = FracIndex;
    fn neg(self) -> FracIndex {
        FracIndex(-self.0)
    }
}

impl fmt::Display for FracIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for FracIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FracIndex {
    type Err = VosaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || VosaError::Parse(format!("not a fraction: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(FracIndex::new(p, q))
            }
            None => Ok(FracIndex::int(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for FracIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FracIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_classes() {
        let a = FracIndex::new(-3, 2);
        let b = FracIndex::new(-1, 2);
        assert!(a < b);
        assert!(a.same_class(b));
        assert_eq!(a.frac_part(), FracIndex::HALF);
        assert_eq!(FracIndex::new(-1, 3).frac_part(), FracIndex::new(2, 3));
        assert_eq!(a.floor(), -2);
        assert_eq!(a.ceil(), -1);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["5/2", "-1/3", "0", "7"] {
            let f: FracIndex = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("1/0".parse::<FracIndex>().is_err());
    }

    #[test]
    fn lattice() {
        assert!(FracIndex::new(1, 3).in_lattice(6));
        assert!(!FracIndex::new(1, 4).in_lattice(6));
        assert_eq!(lcm_denominators([FracIndex::new(1, 2), FracIndex::new(1, 3)]), 6);
    }
}
