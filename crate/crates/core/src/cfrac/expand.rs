use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ContinuedFraction;
use crate::error::{Error, Result};
use crate::exactnum::{is_perfect_square, squarefree_split, Number, QuadraticSurd};

/// Expansion state `(P + sqrt(D))/Q` with `Q | D - P^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PQState {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl PQState {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (p, q, d) = (p.into(), q.into(), d.into());
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !d.is_positive() || (&d.sqrt() * &d.sqrt()) == d {
            return Err(Error::domain(format!("{d} is not a positive nonsquare")));
        }
        if !(&d - &p * &p).is_multiple_of(&q) {
            return Err(Error::domain(format!("{q} does not divide {d} - {p}^2")));
        }
        Ok(PQState { p, q, d })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `floor((P + sqrt D)/Q)`.
    pub fn partial_quotient(&self) -> BigInt {
        let s = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + s).div_floor(&self.q)
        } else {
            (&self.p + s + BigInt::one()).div_floor(&self.q)
        }
    }

    /// One step of `x -> 1/(x - floor x)`; returns the partial quotient and the next state.
    pub fn step(&self) -> (BigInt, PQState) {
        let a = self.partial_quotient();
        let p = &a * &self.q - &self.p;
        let q = (&self.d - &p * &p) / &self.q;
        let next = PQState {
            p,
            q,
            d: self.d.clone(),
        };
        (a, next)
    }

    /// True when the represented surd is reduced: `x > 1` and `-1 < conj(x) < 0`.
    pub fn is_reduced(&self) -> bool {
        let s = self.d.sqrt();
        // 0 < P < sqrt D  and  sqrt D - P < Q < sqrt D + P
        self.p.is_positive() && self.p <= s && self.q > &s - &self.p && self.q <= &s + &self.p
    }
}

/// Full orbit data of an expansion: states, partial quotients and the
/// index where the period starts.
pub(crate) struct Orbit {
    pub states: Vec<PQState>,
    pub terms: Vec<BigInt>,
    pub period_start: usize,
    /// `sqrt(D) = root_coeff * sqrt(root_field)`
    pub root_coeff: BigInt,
    pub root_field: i64,
}

impl Orbit {
    pub fn period_len(&self) -> usize {
        self.terms.len() - self.period_start
    }

    /// Partial quotient `a_k` for any `k`, cycling through the period.
    pub fn term(&self, k: usize) -> &BigInt {
        if k < self.terms.len() {
            &self.terms[k]
        } else {
            let l = self.period_len();
            &self.terms[self.period_start + (k - self.period_start) % l]
        }
    }

    /// Complete quotient `x_k` as an exact number.
    pub fn complete_quotient(&self, k: usize) -> QuadraticSurd {
        let k = if k < self.states.len() {
            k
        } else {
            self.period_start + (k - self.period_start) % self.period_len()
        };
        let st = &self.states[k];
        match QuadraticSurd::normalize(st.p.clone(), self.root_coeff.clone(), st.q.clone(), self.root_field)
        {
            Ok(Number::Surd(s)) => s,
            _ => unreachable!("irrational state"),
        }
    }

    pub fn to_continued_fraction(&self) -> Result<ContinuedFraction> {
        let small = |a: &BigInt| {
            a.to_u64()
                .ok_or_else(|| Error::Resource(format!("partial quotient {a} exceeds 64 bits")))
        };
        let head = self.terms[0].clone();
        if self.period_start == 0 {
            // purely periodic: a0 belongs to the period, so rotate it to the end
            let mut period = self.terms[1..]
                .iter()
                .map(small)
                .collect::<Result<Vec<_>>>()?;
            period.push(small(&head)?);
            return Ok(ContinuedFraction::from_parts_unchecked(head, Vec::new(), period));
        }
        let preperiod = self.terms[1..self.period_start]
            .iter()
            .map(small)
            .collect::<Result<Vec<_>>>()?;
        let period = self.terms[self.period_start..]
            .iter()
            .map(small)
            .collect::<Result<Vec<_>>>()?;
        Ok(ContinuedFraction::from_parts_unchecked(head, preperiod, period))
    }
}

pub(crate) fn orbit(start: PQState, root_coeff: BigInt, root_field: i64, max_terms: usize) -> Result<Orbit> {
    let mut seen: HashMap<PQState, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut terms = Vec::new();
    let mut st = start;
    loop {
        if let Some(&i) = seen.get(&st) {
            return Ok(Orbit {
                states,
                terms,
                period_start: i,
                root_coeff,
                root_field,
            });
        }
        if states.len() >= max_terms {
            return Err(Error::Resource(format!(
                "no period found within {max_terms} terms"
            )));
        }
        seen.insert(st.clone(), states.len());
        let (a, next) = st.step();
        states.push(st);
        terms.push(a);
        st = next;
    }
}

/// Start state and root decomposition for a real quadratic irrational.
pub(crate) fn surd_orbit(x: &QuadraticSurd, max_terms: usize) -> Result<Orbit> {
    if !x.is_real() {
        return Err(Error::domain(format!("{x} is not real")));
    }
    // (p + q sqrt d)/r = (p r + sqrt(q^2 d r^2)) / r^2, sign of q moved into Q
    let r2 = x.r() * x.r();
    let big_d = x.q() * x.q() * BigInt::from(x.d()) * &r2;
    let (p, q) = if x.q().is_positive() {
        (x.p() * x.r(), r2)
    } else {
        (-(x.p() * x.r()), -r2)
    };
    let root_coeff = x.q().abs() * x.r();
    let start = PQState { p, q, d: big_d };
    orbit(start, root_coeff, x.d(), max_terms)
}

/// Default term budget for [`surd_cf`] callers without a specific bound.
pub const DEFAULT_MAX_TERMS: usize = 1 << 20;

/// Continued fraction of `sqrt(D)` for a nonsquare `D >= 2`.
///
/// The period length is below `2D`, since reduced states satisfy
/// `0 < P < sqrt D` and `0 < Q < 2 sqrt D`.
pub fn sqrt_cf(d: i64) -> Result<ContinuedFraction> {
    if d < 2 || is_perfect_square(d) {
        return Err(Error::domain(format!("sqrt_cf needs a nonsquare D >= 2, got {d}")));
    }
    let (s, core) = squarefree_split(d);
    let start = PQState {
        p: BigInt::zero(),
        q: BigInt::one(),
        d: BigInt::from(d),
    };
    let max = 2 * d as usize + 2;
    orbit(start, BigInt::from(s), core, max)?.to_continued_fraction()
}

/// Continued fraction of a real quadratic irrational with exact period detection.
pub fn surd_cf(x: &QuadraticSurd, max_terms: usize) -> Result<ContinuedFraction> {
    surd_orbit(x, max_terms)?.to_continued_fraction()
}

/// Continued fraction of any real exact number (finite for rationals).
pub fn continued_fraction(x: &Number, max_terms: usize) -> Result<ContinuedFraction> {
    match x {
        Number::Rational(r) => ContinuedFraction::from_rational(r),
        Number::Surd(s) => surd_cf(s, max_terms),
    }
}
