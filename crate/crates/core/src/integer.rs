//! Arbitrary-precision integer coefficients.
//!
//! Values that fit in an `i64` are stored inline; anything larger is promoted to
//! a heap-backed [`BigInt`]. Every operation is checked, so overflow of the inline
//! form always promotes and never wraps.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Integer {
    Small(i64),
    Large(BigInt),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    fn normalize(big: BigInt) -> Integer {
        match big.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Large(big),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Large(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Integer::Small(v) => *v > 0,
            Integer::Large(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Large(b) => b.is_negative(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Large(_) => None,
        }
    }

    pub fn pow(&self, mut exp: u32) -> Integer {
        let mut base = self.clone();
        let mut acc = Integer::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Integer) -> Option<Integer> {
        if other.is_zero() {
            return None;
        }
        let (a, b) = (self.to_bigint(), other.to_bigint());
        if (&a % &b).is_zero() {
            Some(Integer::normalize(a / b))
        } else {
            None
        }
    }

    pub fn add_ref(&mut self, other: &Integer) {
        if let (Integer::Small(a), Integer::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_add(*b) {
                *self = Integer::Small(s);
                return;
            }
        }
        *self = Integer::normalize(self.to_bigint() + other.to_bigint());
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::Small(v as i64)
    }
}

impl From<u64> for Integer {
    fn from(v: u64) -> Self {
        Integer::normalize(BigInt::from(v))
    }
}

impl From<usize> for Integer {
    fn from(v: usize) -> Self {
        Integer::normalize(BigInt::from(v))
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::normalize(v)
    }
}

impl PartialEq for Integer {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a == b,
            // normalized: a Large never equals a Small
            (Integer::Large(a), Integer::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Integer {}

impl Hash for Integer {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Integer::Small(v) => v.hash(state),
            Integer::Large(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Large(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Integer::Small(v));
        }
        s.parse::<BigInt>().map(Integer::normalize)
    }
}

impl<'a> Add<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn add(self, rhs: &'a Integer) -> Integer {
        let mut out = self.clone();
        out.add_ref(rhs);
        out
    }
}

impl Add for Integer {
    type Output = Integer;
    fn add(mut self, rhs: Integer) -> Integer {
        self.add_ref(&rhs);
        self
    }
}

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        self.add_ref(rhs);
    }
}

impl AddAssign for Integer {
    fn add_assign(&mut self, rhs: Integer) {
        self.add_ref(&rhs);
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::normalize(-BigInt::from(v)),
            },
            Integer::Large(b) => Integer::normalize(-b),
        }
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -self.clone()
    }
}

impl<'a> Sub<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn sub(self, rhs: &'a Integer) -> Integer {
        self + &(-rhs)
    }
}

impl Sub for Integer {
    type Output = Integer;
    fn sub(self, rhs: Integer) -> Integer {
        self + (-rhs)
    }
}

impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        self.add_ref(&(-rhs));
    }
}

impl<'a> Mul<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn mul(self, rhs: &'a Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(p) = a.checked_mul(*b) {
                return Integer::Small(p);
            }
        }
        Integer::normalize(self.to_bigint() * rhs.to_bigint())
    }
}

impl Mul for Integer {
    type Output = Integer;
    fn mul(self, rhs: Integer) -> Integer {
        &self * &rhs
    }
}

impl MulAssign<&Integer> for Integer {
    fn mul_assign(&mut self, rhs: &Integer) {
        *self = &*self * rhs;
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}

impl Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::ZERO, |mut acc, v| {
            acc.add_ref(&v);
            acc
        })
    }
}

impl<'a> Sum<&'a Integer> for Integer {
    fn sum<I: Iterator<Item = &'a Integer>>(iter: I) -> Integer {
        iter.fold(Integer::ZERO, |mut acc, v| {
            acc.add_ref(v);
            acc
        })
    }
}

impl Product for Integer {
    fn product<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::ONE, |acc, v| &acc * &v)
    }
}

impl serde::Serialize for Integer {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Integer {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
