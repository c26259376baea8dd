//! Exact arithmetic over `Q` and quadratic fields `Q(sqrt(d))`.
//!
//! [`Number`] is the closed currency: every field operation returns a
//! canonical [`Number`], demoting to [`Number::Rational`] whenever the
//! irrational part cancels.

mod approx;
mod parse;
mod surd;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use approx::{Approximation, Dyadic};
pub use parse::parse_number;
pub use surd::QuadraticSurd;

pub(crate) use surd::{floor_parts, is_perfect_square, squarefree_split};

use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision numerator and positive denominator,
/// always in lowest terms.
pub type Rational = num_rational::BigRational;

/// An exact rational or quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Number {
    Rational(Rational),
    Surd(QuadraticSurd),
}

impl From<Rational> for Number {
    fn from(r: Rational) -> Self {
        Number::Rational(r)
    }
}

impl From<QuadraticSurd> for Number {
    fn from(s: QuadraticSurd) -> Self {
        Number::Surd(s)
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::Rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Number {
    fn from(n: BigInt) -> Self {
        Number::Rational(Rational::from_integer(n))
    }
}

/// `(p, q, r)` with value `(p + q*sqrt(d))/r` in the field of `d`.
fn parts(x: &Number) -> (BigInt, BigInt, BigInt) {
    match x {
        Number::Rational(r) => (r.numer().clone(), BigInt::zero(), r.denom().clone()),
        Number::Surd(s) => (s.p().clone(), s.q().clone(), s.r().clone()),
    }
}

fn assemble(p: BigInt, q: BigInt, r: BigInt, d: i64) -> Number {
    if q.is_zero() {
        Number::Rational(Rational::new(p, r))
    } else {
        Number::Surd(QuadraticSurd::from_canonical_parts(p, q, r, d))
    }
}

impl Number {
    pub fn integer(n: i64) -> Self {
        n.into()
    }

    pub fn rational(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Number::Rational(Rational::new(numer.into(), denom.into())))
    }

    /// Radicand of the field this value lives in, `None` for rationals.
    pub fn field(&self) -> Option<i64> {
        match self {
            Number::Rational(_) => None,
            Number::Surd(s) => Some(s.d()),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Number::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Number::Rational(r) if r.is_zero())
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            Number::Surd(s) => Some(s),
            Number::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Number::Rational(r) => Some(r),
            Number::Surd(_) => None,
        }
    }

    fn common_field(&self, other: &Number) -> Result<i64> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => Err(Error::IncompatibleField(a, b)),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Ok(0),
        }
    }

    pub fn add(&self, other: &Number) -> Result<Number> {
        let d = self.common_field(other)?;
        let (p1, q1, r1) = parts(self);
        let (p2, q2, r2) = parts(other);
        Ok(assemble(
            &p1 * &r2 + &p2 * &r1,
            &q1 * &r2 + &q2 * &r1,
            r1 * r2,
            d,
        ))
    }

    pub fn sub(&self, other: &Number) -> Result<Number> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Number) -> Result<Number> {
        let d = self.common_field(other)?;
        let (p1, q1, r1) = parts(self);
        let (p2, q2, r2) = parts(other);
        let dd = BigInt::from(d);
        Ok(assemble(
            &p1 * &p2 + &q1 * &q2 * dd,
            &p1 * &q2 + &q1 * &p2,
            r1 * r2,
            d,
        ))
    }

    pub fn recip(&self) -> Result<Number> {
        match self {
            Number::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Number::Rational(r.recip()))
                }
            }
            Number::Surd(s) => {
                // r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
                let d = BigInt::from(s.d());
                let den = s.p() * s.p() - s.q() * s.q() * d;
                debug_assert!(!den.is_zero(), "nonsquare d has no zero divisors");
                Ok(assemble(s.r() * s.p(), -(s.r() * s.q()), den, s.d()))
            }
        }
    }

    pub fn div(&self, other: &Number) -> Result<Number> {
        self.common_field(other)?;
        self.mul(&other.recip()?)
    }

    pub fn neg(&self) -> Number {
        match self {
            Number::Rational(r) => Number::Rational(-r),
            Number::Surd(s) => {
                assemble(-s.p().clone(), -s.q().clone(), s.r().clone(), s.d())
            }
        }
    }

    /// Galois conjugate `sqrt(d) -> -sqrt(d)`; identity on rationals.
    pub fn conjugate(&self) -> Number {
        match self {
            Number::Rational(_) => self.clone(),
            Number::Surd(s) => Number::Surd(s.conjugate()),
        }
    }

    /// Exact floor of a real value.
    pub fn floor(&self) -> Result<BigInt> {
        match self {
            Number::Rational(r) => Ok(r.floor().to_integer()),
            Number::Surd(s) => s.floor(),
        }
    }

    /// Exact comparison of two real values.
    pub fn cmp_real(&self, other: &Number) -> Result<Ordering> {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => Ok(a.cmp(b)),
            (Number::Surd(s), o) => s.cmp_real(o),
            (r @ Number::Rational(_), Number::Surd(s)) => {
                s.cmp_real(r).map(Ordering::reverse)
            }
        }
    }

    /// Applies the fractional linear map `(a x + b)/(c x + d)`.
    pub fn mobius(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Result<Number> {
        let num = self.mul(&a.clone().into())?.add(&b.clone().into())?;
        let den = self.mul(&c.clone().into())?.add(&d.clone().into())?;
        num.div(&den)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Number::Rational(r) if r.is_one())
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Number::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) => write!(f, "{r}"),
            Number::Surd(s) => write!(f, "{s}"),
        }
    }
}
