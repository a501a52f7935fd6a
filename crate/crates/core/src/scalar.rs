//! Coefficient rings.
//!
//! Every engine in this crate is written against [`Scalar`], a small
//! extension of the `num-traits` ring vocabulary. Exact rationals are the
//! workhorse instance; [`Poly`](crate::algebra::Poly) over rationals is the
//! other one, used when a series carries polynomial dependence on a rank.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// A commutative ring with a unital map from the rationals.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rat(q: &Rat) -> Self;

    /// Multiplicative inverse, when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&rat(n))
    }

    fn scale(&self, q: &Rat) -> Self {
        if q.is_one() {
            return self.clone();
        }
        self.clone() * Self::from_rat(q)
    }
}

/// A [`Scalar`] in which every nonzero element is invertible.
pub trait Field: Scalar {
    fn inv(&self) -> Self {
        self.try_inverse().expect("inverse of zero")
    }
}

impl Scalar for Rat {
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn scale(&self, q: &Rat) -> Self {
        self * q
    }
}

impl Field for Rat {}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * rat(k as i64))
}

/// Generalized binomial `m(m-1)...(m-k+1)/k!` for any rational top argument.
pub fn binomial(top: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * (top - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

pub fn binomial_int(top: i64, k: u64) -> Rat {
    binomial(&rat(top), k)
}

/// Exact integer value, if the rational has denominator one.
pub fn as_integer(q: &Rat) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

/// `|q|`, exposed so callers need not import `Signed`.
pub fn abs(q: &Rat) -> Rat {
    q.abs()
}
