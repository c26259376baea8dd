use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Number;

/// Integer 2x2 matrix `(a b; c d)` with determinant `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gl2Matrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

/// Integer 2x2 matrix of determinant exactly `1`, acting by `x -> (ax+b)/(cx+d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix(Gl2Matrix);

impl Gl2Matrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = Gl2Matrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::Contract(format!("determinant {det} is not a unit")))
        }
    }

    pub fn identity() -> Self {
        Gl2Matrix {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &Gl2Matrix) -> Gl2Matrix {
        Gl2Matrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Adjugate; the inverse up to the sign of the determinant.
    pub fn adjugate(&self) -> Gl2Matrix {
        Gl2Matrix {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn inverse(&self) -> Gl2Matrix {
        let adj = self.adjugate();
        if self.det().is_negative() {
            adj.negated()
        } else {
            adj
        }
    }

    pub fn negated(&self) -> Gl2Matrix {
        Gl2Matrix {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Sign-normalized representative of `{M, -M}`: `c > 0`, or `c = 0` and `d > 0`.
    pub fn projective(&self) -> Gl2Matrix {
        if self.c.is_negative() || (self.c.is_zero() && self.d.is_negative()) {
            self.negated()
        } else {
            self.clone()
        }
    }

    /// `(a x + b)/(c x + d)` in exact arithmetic.
    pub fn apply(&self, x: &Number) -> Result<Number> {
        x.mobius(&self.a, &self.b, &self.c, &self.d)
    }
}

impl UnimodularMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::try_from(Gl2Matrix::new(a, b, c, d)?)
    }

    pub fn identity() -> Self {
        UnimodularMatrix(Gl2Matrix::identity())
    }

    /// Translation `x -> x + n`.
    pub fn translation(n: impl Into<BigInt>) -> Self {
        UnimodularMatrix(Gl2Matrix {
            a: BigInt::one(),
            b: n.into(),
            c: BigInt::zero(),
            d: BigInt::one(),
        })
    }

    /// Inversion `x -> -1/x`.
    pub fn inversion() -> Self {
        UnimodularMatrix(Gl2Matrix {
            a: BigInt::zero(),
            b: -BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
        })
    }

    pub fn a(&self) -> &BigInt {
        &self.0.a
    }
    pub fn b(&self) -> &BigInt {
        &self.0.b
    }
    pub fn c(&self) -> &BigInt {
        &self.0.c
    }
    pub fn d(&self) -> &BigInt {
        &self.0.d
    }

    pub fn as_gl2(&self) -> &Gl2Matrix {
        &self.0
    }

    pub fn mul(&self, o: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix(self.0.mul(&o.0))
    }

    pub fn inverse(&self) -> UnimodularMatrix {
        UnimodularMatrix(self.0.adjugate())
    }

    pub fn projective(&self) -> UnimodularMatrix {
        UnimodularMatrix(self.0.projective())
    }

    pub fn apply(&self, x: &Number) -> Result<Number> {
        self.0.apply(x)
    }

    /// Entries as `i64`, if they fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        use num_traits::ToPrimitive;
        Some([
            self.0.a.to_i64()?,
            self.0.b.to_i64()?,
            self.0.c.to_i64()?,
            self.0.d.to_i64()?,
        ])
    }
}

impl TryFrom<Gl2Matrix> for UnimodularMatrix {
    type Error = Error;

    fn try_from(m: Gl2Matrix) -> Result<Self> {
        if m.det().is_one() {
            Ok(UnimodularMatrix(m))
        } else {
            Err(Error::Contract(format!("determinant {} is not 1", m.det())))
        }
    }
}

impl fmt::Display for Gl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Gl2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [
            [self.a.to_string(), self.b.to_string()],
            [self.c.to_string(), self.d.to_string()],
        ];
        rows.serialize(s)
    }
}

impl Serialize for UnimodularMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_enforced() {
        assert!(UnimodularMatrix::new(1, 1, 0, 1).is_ok());
        assert!(UnimodularMatrix::new(0, 1, 1, 0).is_err());
        assert!(Gl2Matrix::new(0, 1, 1, 0).is_ok());
        assert!(Gl2Matrix::new(2, 0, 0, 1).is_err());
    }

    #[test]
    fn inverse_and_product() {
        let m = UnimodularMatrix::new(2, 3, 1, 2).unwrap();
        assert_eq!(m.mul(&m.inverse()), UnimodularMatrix::identity());
        let s = UnimodularMatrix::inversion();
        assert_eq!(s.mul(&s).projective(), UnimodularMatrix::identity());
    }

    #[test]
    fn acts_on_numbers() {
        let x: Number = "sqrt(2)".parse().unwrap();
        let y = UnimodularMatrix::translation(1).apply(&x).unwrap();
        assert_eq!(y, "1 + sqrt(2)".parse().unwrap());
    }
}
