//! Rationals and the group Q/Z.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::NotIntegral(format!("cannot parse rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// An element of Q/Z, stored by its representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Rational);

impl QmodZ {
    pub fn new(value: Rational) -> Self {
        let fl = value.floor();
        QmodZ(value - fl)
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::new(rat(num, den))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Self::new(Rational::new(num, den))
    }

    pub fn zero() -> Self {
        QmodZ(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The order of this element in Q/Z.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(&self.0 * Rational::from_integer(k.clone()))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul_int(&BigInt::from(k))
    }

    /// Numerator of this value over the denominator `den`, if `den` is a multiple of the
    /// value's own denominator.
    pub fn scaled_to(&self, den: u64) -> Option<u64> {
        let d = BigInt::from(den);
        let (q, r) = d.div_rem(self.0.denom());
        if !r.is_zero() {
            return None;
        }
        (self.0.numer() * q).to_u64()
    }

    /// Solves `n * x = self` returning the smallest solution in `[0, 1)`.
    pub fn divide_smallest(&self, n: u64) -> Self {
        QmodZ(&self.0 / rat_int(n))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QmodZ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(QmodZ::new)
    }
}

impl From<Rational> for QmodZ {
    fn from(r: Rational) -> Self {
        QmodZ::new(r)
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a QmodZ> for &'a QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 + &rhs.0)
    }
}

impl AddAssign<&QmodZ> for QmodZ {
    fn add_assign(&mut self, rhs: &QmodZ) {
        *self = &*self + rhs;
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a QmodZ> for &'a QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 - &rhs.0)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0)
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0.clone())
    }
}

impl Mul<&BigInt> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, rhs: &BigInt) -> QmodZ {
        self.mul_int(rhs)
    }
}

/// `gcd` of a list of integers, `0` for an empty or all-zero list.
pub fn content(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / a.gcd(&b) * b
}

/// Least common multiple of the denominators of a rational vector.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_integral(r: &Rational) -> bool {
    r.is_integer()
}

pub fn to_u64(n: &BigInt, what: &str) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::Overflow(format!("{what} = {n} does not fit in 64 bits")))
}

pub fn abs_big(n: &BigInt) -> BigInt {
    n.abs()
}
