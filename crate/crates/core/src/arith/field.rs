//! The field abstraction used by generic polynomial and curve code.
//!
//! Elements carry whatever context they need (a number field, a finite field) so that generic
//! code can manufacture constants from an existing element.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// Rational numbers.
pub type Q = BigRational;

/// Exact field arithmetic.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    /// The zero of the field containing `self`.
    fn zero_like(&self) -> Self;
    /// The one of the field containing `self`.
    fn one_like(&self) -> Self;
    /// The image of an integer.
    fn from_i64_like(&self, n: i64) -> Self;
    /// The image of a rational number.
    fn from_rat_like(&self, q: &Q) -> Self;
    /// Whether `self` is zero.
    fn eq_zero(&self) -> bool;
    /// Sum.
    fn plus(&self, o: &Self) -> Self;
    /// Difference.
    fn minus(&self, o: &Self) -> Self;
    /// Product.
    fn times(&self, o: &Self) -> Self;
    /// Additive inverse.
    fn negate(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Whether `self` is one.
    fn eq_one(&self) -> bool {
        *self == self.one_like()
    }
    /// Quotient, `None` when dividing by zero.
    fn divide(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.times(&i))
    }
    /// Multiple by an integer.
    fn scale_i64(&self, n: i64) -> Self {
        self.times(&self.from_i64_like(n))
    }
    /// Integer power.
    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rat_like(&self, q: &Q) -> Self {
        q.clone()
    }
    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn eq_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Shorthand for an integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d` as a rational.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` into a rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        Some(Q::from_integer(s.parse().ok()?))
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Absolute value of a rational, as a convenience for bounds.
pub fn q_abs(q: &Q) -> Q {
    q.abs()
}
