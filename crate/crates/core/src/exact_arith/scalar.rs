//! Coefficient-domain traits.
//!
//! Every algorithm in the crate is written against [`Ring`] or [`Field`].
//! Concrete domains are [`Rational`] and [`crate::NfElem`] (ℚ[t]/(m)),
//! truncated power series and polynomials over any of those.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational numbers.
pub type Rational = BigRational;

/// A commutative ring with identity whose equality is decidable.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// Exact quotient `self / d` when it exists in the ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A field of characteristic zero containing ℚ.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: &Rational) -> Self;

    /// Coordinates over ℚ in a fixed basis; used for deterministic ordering.
    fn coords(&self) -> Vec<Rational>;

    /// Whether two elements live in the same concrete field.
    fn same_domain(&self, _other: &Self) -> bool {
        true
    }

    fn div(&self, d: &Self) -> Self {
        self.clone() * d.inv().expect("division by zero")
    }
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn coords(&self) -> Vec<Rational> {
        vec![self.clone()]
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Lexicographic comparison of coordinate vectors; shorter vectors are padded with zeros.
pub fn cmp_coords(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
