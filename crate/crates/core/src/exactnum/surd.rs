use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use super::{Number, Rational};
use crate::error::{Error, Result};

/// An element `(p + q*sqrt(d))/r` of the quadratic field `Q(sqrt(d))`.
///
/// Values are always canonical: `r > 0`, `gcd(p, q, r) = 1`, `d` squarefree
/// and not a perfect square, `q != 0`. Two surds are therefore equal exactly
/// when their fields are equal, so the derived `Eq`/`Hash` are value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: i64,
}

/// Splits `d` into `(s, core)` with `d = s^2 * core` and `core` squarefree.
pub(crate) fn squarefree_split(d: i64) -> (u64, i64) {
    let sign = d.signum();
    let mut n = d.unsigned_abs();
    let mut square = 1u64;
    let mut f = 2u64;
    while f.saturating_mul(f) <= n {
        while n % (f * f) == 0 {
            n /= f * f;
            square *= f;
        }
        f += 1;
    }
    (square, sign * n as i64)
}

pub(crate) fn is_perfect_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let s = (n as u64).sqrt();
    s * s == n as u64
}

impl QuadraticSurd {
    /// Canonicalizes `(p + q*sqrt(d))/r`.
    ///
    /// Returns a [`Number::Rational`] when `q = 0`. Square factors of `d` are
    /// absorbed into `q`.
    pub fn normalize(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: i64,
    ) -> Result<Number> {
        let (p, q, r) = (p.into(), q.into(), r.into());
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if q.is_zero() {
            return Ok(Number::Rational(Rational::new(p, r)));
        }
        if is_perfect_square(d) {
            return Err(Error::domain(format!(
                "sqrt({d}) is rational; fold the value into a Rational"
            )));
        }
        let (square, core) = squarefree_split(d);
        Ok(Number::Surd(Self::from_canonical_parts(
            p,
            q * BigInt::from(square),
            r,
            core,
        )))
    }

    /// Builds a surd from parts whose `d` is already squarefree; restores sign
    /// and gcd invariants.
    pub(crate) fn from_canonical_parts(p: BigInt, q: BigInt, r: BigInt, d: i64) -> Self {
        debug_assert!(!q.is_zero() && !r.is_zero());
        let (mut p, mut q, mut r) = (p, q, r);
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadraticSurd { p, q, r, d }
    }

    /// `sqrt(n)` for a nonsquare `n`.
    pub fn sqrt(n: i64) -> Result<Self> {
        match Self::normalize(0, 1, 1, n)? {
            Number::Surd(s) => Ok(s),
            Number::Rational(_) => unreachable!("q = 1"),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// Squarefree radicand.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// Rational part `p/r`.
    pub fn rational_part(&self) -> Rational {
        Rational::new(self.p.clone(), self.r.clone())
    }

    /// Coefficient of `sqrt(d)`, i.e. `q/r`.
    pub fn irrational_coefficient(&self) -> Rational {
        Rational::new(self.q.clone(), self.r.clone())
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d,
        }
    }

    /// Field norm `x * conj(x)`, a rational.
    pub fn norm(&self) -> Rational {
        let num = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
        Rational::new(num, &self.r * &self.r)
    }

    /// Field trace `x + conj(x)`.
    pub fn trace(&self) -> Rational {
        Rational::new(BigInt::from(2) * &self.p, self.r.clone())
    }

    /// Exact floor of a real surd, by integer square roots only.
    pub fn floor(&self) -> Result<BigInt> {
        if self.d < 0 {
            return Err(Error::domain("floor of an imaginary quadratic number"));
        }
        Ok(floor_parts(&self.p, &self.q, &self.r, self.d))
    }

    /// Sign of a real surd.
    pub fn signum(&self) -> Result<Sign> {
        if self.d < 0 {
            return Err(Error::domain("sign of an imaginary quadratic number"));
        }
        Ok(sign_of_sum(&self.p, &self.q, self.d))
    }

    /// Exact order on real surds of the same field (or against a rational).
    pub fn cmp_real(&self, other: &Number) -> Result<Ordering> {
        let diff = Number::Surd(self.clone()).sub(other)?;
        Ok(match diff {
            Number::Rational(r) => r.cmp(&Rational::zero()),
            Number::Surd(s) => match s.signum()? {
                Sign::Minus => Ordering::Less,
                Sign::NoSign => Ordering::Equal,
                Sign::Plus => Ordering::Greater,
            },
        })
    }
}

/// Sign of `p + q*sqrt(d)` for `d > 0` nonsquare.
fn sign_of_sum(p: &BigInt, q: &BigInt, d: i64) -> Sign {
    let (sp, sq) = (p.sign(), q.sign());
    if sq == Sign::NoSign {
        return sp;
    }
    if sp == Sign::NoSign || sp == sq {
        return sq;
    }
    // opposite signs: compare p^2 with q^2 d
    let lhs = p * p;
    let rhs = q * q * BigInt::from(d);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Sign::NoSign,
    }
}

/// `floor((p + q*sqrt(d))/r)` for `d > 0` nonsquare, `r != 0`; inputs need not
/// be canonical.
pub(crate) fn floor_parts(p: &BigInt, q: &BigInt, r: &BigInt, d: i64) -> BigInt {
    // Put q*sqrt(d) = sign(q) * sqrt(q^2 d) strictly between consecutive integers.
    let radicand = q * q * BigInt::from(d);
    let s = radicand.sqrt();
    let (p, q, r) = if r.is_negative() {
        (-p, -q, -r)
    } else {
        (p.clone(), q.clone(), r.clone())
    };
    if q.is_zero() {
        return p.div_floor(&r);
    }
    let exact = &s * &s == radicand;
    if exact {
        // only reachable for non-canonical input with d a square; handled exactly
        let v = if q.is_positive() { &p + &s } else { &p - &s };
        return v.div_floor(&r);
    }
    // N <= (p + q sqrt d)/r  <=>  N r - p <= q sqrt d
    if q.is_positive() {
        (&p + &s).div_floor(&r)
    } else {
        (&p - &s - BigInt::one()).div_floor(&r)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sign, qa) = if self.q.is_negative() {
            ('-', -&self.q)
        } else {
            ('+', self.q.clone())
        };
        write!(f, "({} {} {}*sqrt({}))/{}", self.p, sign, qa, self.d, self.r)
    }
}
