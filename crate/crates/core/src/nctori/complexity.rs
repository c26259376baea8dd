use serde::Serialize;

use crate::cfrac::sqrt_cf;
use crate::error::{Error, Result};

/// A rule turning the period of `sqrt(D)` into a complexity value `c >= 1`.
pub trait ComplexityEvaluator: Sync {
    fn name(&self) -> &'static str;
    fn evaluate(&self, period: &[u64]) -> u32;
}

/// `c = 2` when the period length is `2 mod 4`, otherwise `c = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PeriodLengthClass;

impl ComplexityEvaluator for PeriodLengthClass {
    fn name(&self) -> &'static str {
        "period-length-class"
    }

    fn evaluate(&self, period: &[u64]) -> u32 {
        if period.len() % 4 == 2 {
            2
        } else {
            1
        }
    }
}

/// Free entries of the palindromic part: `ceil((l - 1)/2)`, at least 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct SymmetricHalf;

impl ComplexityEvaluator for SymmetricHalf {
    fn name(&self) -> &'static str {
        "symmetric-half"
    }

    fn evaluate(&self, period: &[u64]) -> u32 {
        (period.len() as u32).saturating_sub(1).div_ceil(2).max(1)
    }
}

pub const DEFAULT_EVALUATOR: &str = "period-length-class";
pub const EVALUATORS: [&str; 2] = ["period-length-class", "symmetric-half"];

pub fn evaluator(name: &str) -> Result<&'static dyn ComplexityEvaluator> {
    match name {
        "period-length-class" => Ok(&PeriodLengthClass),
        "symmetric-half" => Ok(&SymmetricHalf),
        _ => Err(Error::Parameter(format!(
            "unknown evaluator `{name}`; available: {}",
            EVALUATORS.join(", ")
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    #[serde(rename = "D")]
    pub d: i64,
    pub period: Vec<u64>,
    pub period_length: usize,
    pub complexity: u32,
    pub evaluator_name: String,
    /// False outside primes `D = 3 mod 4`, where the rule has no validation.
    pub validated_range: bool,
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn in_theorem_scope(d: i64) -> bool {
    is_prime(d) && d % 4 == 3
}

pub fn arithmetic_complexity(d: i64, evaluator_name: &str) -> Result<ComplexityReport> {
    let ev = evaluator(evaluator_name)?;
    let cf = sqrt_cf(d)?;
    let period = cf.period().to_vec();
    Ok(ComplexityReport {
        d,
        period_length: period.len(),
        complexity: ev.evaluate(&period),
        period,
        evaluator_name: ev.name().to_string(),
        validated_range: in_theorem_scope(d),
    })
}

/// `rk = c - 1` for primes `D = 3 mod 4`, using the default evaluator.
pub fn rank_from_complexity(d: i64) -> Result<i64> {
    rank_from_complexity_with(d, DEFAULT_EVALUATOR)
}

pub fn rank_from_complexity_with(d: i64, evaluator_name: &str) -> Result<i64> {
    if !in_theorem_scope(d) {
        let why = if !is_prime(d) {
            "is not prime"
        } else {
            "is not 3 mod 4"
        };
        return Err(Error::OutOfScope(format!("D = {d} {why}")));
    }
    Ok(arithmetic_complexity(d, evaluator_name)?.complexity as i64 - 1)
}
