//! Continued fractions of quadratic irrationals, their convergents, and
//! SL2(Z)/GL2(Z) equivalence of real quadratic numbers.

mod equivalence;
mod expand;
mod matrix;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use equivalence::{gl2_equivalent, sl2_equivalent};
pub use expand::{continued_fraction, sqrt_cf, surd_cf, PQState, DEFAULT_MAX_TERMS};
pub use matrix::{Gl2Matrix, UnimodularMatrix};

use crate::error::{Error, Result};
use crate::exactnum::{Number, QuadraticSurd, Rational};

/// `[a0; preperiod, (period)]`, eventually periodic; `period` is empty for rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ContinuedFraction {
    #[serde(serialize_with = "ser_bigint")]
    head: BigInt,
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

impl ContinuedFraction {
    /// Builds a continued fraction and brings it to canonical form: minimal
    /// period, minimal preperiod, and no trailing `1` in a finite expansion.
    pub fn new(head: impl Into<BigInt>, preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if preperiod.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::Parameter(
                "partial quotients after a0 must be positive".into(),
            ));
        }
        let mut cf = ContinuedFraction {
            head: head.into(),
            preperiod,
            period,
        };
        cf.canonicalize();
        Ok(cf)
    }

    pub(crate) fn from_parts_unchecked(head: BigInt, preperiod: Vec<u64>, period: Vec<u64>) -> Self {
        ContinuedFraction {
            head,
            preperiod,
            period,
        }
    }

    fn canonicalize(&mut self) {
        if self.period.is_empty() {
            if self.preperiod.last() == Some(&1) {
                self.preperiod.pop();
                match self.preperiod.last_mut() {
                    Some(a) => *a += 1,
                    None => self.head += 1,
                }
            }
            return;
        }
        let l = self.period.len();
        if let Some(k) = (1..l).find(|&k| l % k == 0 && (k..l).all(|i| self.period[i] == self.period[i - k])) {
            self.period.truncate(k);
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("nonempty") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    /// Finite expansion of a rational.
    pub fn from_rational(x: &Rational) -> Result<Self> {
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        let (head, rem) = num.div_mod_floor(&den);
        let mut terms = Vec::new();
        num = den;
        den = rem;
        while !den.is_zero() {
            let (a, rem) = num.div_mod_floor(&den);
            let a = num_traits::ToPrimitive::to_u64(&a)
                .ok_or_else(|| Error::Resource(format!("partial quotient {a} exceeds 64 bits")))?;
            terms.push(a);
            num = den;
            den = rem;
        }
        Ok(ContinuedFraction {
            head,
            preperiod: terms,
            period: Vec::new(),
        })
    }

    pub fn head(&self) -> &BigInt {
        &self.head
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_rational(&self) -> bool {
        self.period.is_empty()
    }

    /// Partial quotients `a1, a2, ...`, cycling through the period.
    pub fn tail_terms(&self) -> impl Iterator<Item = u64> + '_ {
        let cycle = self.period.iter().copied().cycle();
        self.preperiod.iter().copied().chain(cycle)
    }

    /// First `n` convergents `p_k/q_k` (fewer if a finite expansion ends sooner).
    pub fn convergents(&self, n: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (self.head.clone(), BigInt::one());
        out.push(Rational::new(p1.clone(), q1.clone()));
        for a in self.tail_terms().take(n - 1) {
            let a = BigInt::from(a);
            let p2 = &a * &p1 + &p0;
            let q2 = &a * &q1 + &q0;
            p0 = std::mem::replace(&mut p1, p2);
            q0 = std::mem::replace(&mut q1, q2);
            out.push(Rational::new(p1.clone(), q1.clone()));
        }
        out
    }

    /// Structural law of `sqrt(D)` expansions: empty preperiod, period ending
    /// in `2 a0`, and a palindromic remainder.
    pub fn palindrome_check(&self) -> bool {
        let l = self.period.len();
        if l == 0 || !self.preperiod.is_empty() {
            return false;
        }
        let body = &self.period[..l - 1];
        BigInt::from(self.period[l - 1]) == &self.head * 2u32
            && body.iter().eq(body.iter().rev())
    }

    /// Exact value of the expansion.
    pub fn value(&self) -> Result<Number> {
        // x = M_pre (y) where y is the purely periodic tail
        let mut pre = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
        let push = |m: &mut [BigInt; 4], a: &BigInt| {
            let [p, q, r, s] = m.clone();
            *m = [&p * a + &q, p, &r * a + &s, r];
        };
        push(&mut pre, &self.head);
        for &a in &self.preperiod {
            push(&mut pre, &BigInt::from(a));
        }
        let [a, b, c, d] = pre;
        if self.period.is_empty() {
            // last partial quotient is the whole thing: x = a/c
            return Ok(Number::Rational(Rational::new(a, c)));
        }
        let mut per = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
        for &t in &self.period {
            push(&mut per, &BigInt::from(t));
        }
        // y = (A y + B)/(C y + D)  =>  C y^2 + (D - A) y - B = 0, y > 1
        let [pa, pb, pc, pd] = per;
        let disc = (&pd - &pa) * (&pd - &pa) + BigInt::from(4) * &pb * &pc;
        let disc: i64 = num_traits::ToPrimitive::to_i64(&disc)
            .ok_or_else(|| Error::Resource("period discriminant exceeds 64 bits".into()))?;
        let y = QuadraticSurd::normalize(&pa - &pd, 1, BigInt::from(2) * &pc, disc)?;
        y.mobius(&a, &b, &c, &d)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.head)?;
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        if !self.preperiod.is_empty() || !self.period.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str(&join(&self.preperiod))?;
        if !self.period.is_empty() {
            if !self.preperiod.is_empty() {
                f.write_str(", ")?;
            }
            write!(f, "({})", join(&self.period))?;
        }
        f.write_str("]")
    }
}

impl ContinuedFraction {
    /// TeX form with an overline on the period, e.g. `[4,\overline{2,1,3,1,2,8}]`.
    pub fn to_latex(&self) -> String {
        let mut parts = vec![self.head.to_string()];
        parts.extend(self.preperiod.iter().map(u64::to_string));
        if !self.period.is_empty() {
            let per: Vec<String> = self.period.iter().map(u64::to_string).collect();
            parts.push(format!("\\overline{{{}}}", per.join(",")));
        }
        format!("[{}]", parts.join(","))
    }
}
