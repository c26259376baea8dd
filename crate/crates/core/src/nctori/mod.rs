//! Noncommutative tori `A_theta`: real multiplication, Morita equivalence,
//! the functor from CM curves, arithmetic complexity and the rank table.

mod complexity;
mod table;

use std::fmt;

use serde::Serialize;

pub use complexity::{
    arithmetic_complexity, evaluator, is_prime, rank_from_complexity, rank_from_complexity_with, ComplexityEvaluator,
    ComplexityReport, PeriodLengthClass, SymmetricHalf, DEFAULT_EVALUATOR, EVALUATORS,
};
pub use table::{
    golden_table, load_table, parse_table, verify_reconciliation, verify_records, RankRecord, ReconciliationReport,
    RowCheck, GOLDEN_TABLE,
};

use crate::cfrac::{sl2_equivalent, UnimodularMatrix};
use crate::curves::{cm_discriminant, Modulus};
use crate::error::{Error, Result};
use crate::exactnum::{parse_number, Number, QuadraticSurd, Rational};

/// The rotation number `theta` of `vu = e^{2 pi i theta} uv`.
#[derive(Clone, Debug, PartialEq)]
pub enum Theta {
    Surd(QuadraticSurd),
    /// Rational rotation; the algebra is not an irrational torus.
    Rational(Rational),
    Float(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorusDescriptor {
    pub theta: Theta,
    pub label: String,
}

impl TorusDescriptor {
    pub fn exact(theta: Number) -> Result<Self> {
        let label = format!("A_{{{theta}}}");
        let theta = match theta {
            Number::Rational(r) => Theta::Rational(r),
            Number::Surd(s) if s.is_real() => Theta::Surd(s),
            Number::Surd(s) => return Err(Error::Domain(format!("theta = {s} is not real"))),
        };
        Ok(TorusDescriptor { theta, label })
    }

    pub fn float(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta = {theta} is not finite")));
        }
        Ok(TorusDescriptor {
            theta: Theta::Float(theta),
            label: format!("A_{{{theta}}}"),
        })
    }

    /// Exact grammar first (`sqrt(7)`, `(3+2*sqrt(5))/4`, `22/7`), then a
    /// decimal float.
    pub fn parse(text: &str) -> Result<Self> {
        match parse_number(text) {
            Ok(n) => Self::exact(n),
            Err(e) => match text.trim().parse::<f64>() {
                Ok(x) if !text.contains('/') => Self::float(x),
                _ => Err(e),
            },
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Rational `theta` gives a commutative-like degenerate torus.
    pub fn is_degenerate(&self) -> bool {
        matches!(self.theta, Theta::Rational(_))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.theta, Theta::Float(_))
    }

    pub fn to_f64(&self) -> f64 {
        match &self.theta {
            Theta::Surd(s) => Number::Surd(s.clone()).to_f64(),
            Theta::Rational(r) => Number::Rational(r.clone()).to_f64(),
            Theta::Float(x) => *x,
        }
    }

    fn surd(&self) -> Result<&QuadraticSurd> {
        match &self.theta {
            Theta::Surd(s) => Ok(s),
            Theta::Rational(r) => Err(Error::Degenerate(format!("theta = {r} is rational"))),
            Theta::Float(x) => Err(Error::Refused(format!(
                "theta = {x} is a float; equivalence needs an exact quadratic irrational"
            ))),
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Surd(s) => write!(f, "{s}"),
            Theta::Rational(r) => write!(f, "{r}"),
            Theta::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for TorusDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TorusDescriptor", 4)?;
        st.serialize_field("theta", &self.theta.to_string())?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("degenerate", &self.is_degenerate())?;
        st.end()
    }
}

/// Squarefree `D` with `theta` in `Q(sqrt D)`. `None` for floating `theta`,
/// where real multiplication cannot be certified.
pub fn rm_discriminant(t: &TorusDescriptor) -> Result<Option<u64>> {
    match &t.theta {
        Theta::Surd(s) => Ok(Some(s.d() as u64)),
        Theta::Rational(r) => Err(Error::Degenerate(format!(
            "theta = {r} is rational and has no real multiplication"
        ))),
        Theta::Float(_) => Ok(None),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MoritaResult {
    pub equivalent: bool,
    /// `(a b; c d)` with `theta2 = (a theta1 + b)/(c theta1 + d)`.
    pub witness: Option<UnimodularMatrix>,
}

/// Morita equivalence of `A_theta1` and `A_theta2`, i.e. SL2(Z) equivalence
/// of `theta1` and `theta2`.
pub fn morita_equivalent(t1: &TorusDescriptor, t2: &TorusDescriptor) -> Result<MoritaResult> {
    let (x, y) = (t1.surd()?, t2.surd()?);
    let s = UnimodularMatrix::inversion();
    let xs = Number::Surd(x.clone());
    let witness = if s.apply(&xs)? == Number::Surd(y.clone()) {
        Some(s)
    } else {
        sl2_equivalent(x, y)?
    };
    Ok(MoritaResult {
        equivalent: witness.is_some(),
        witness,
    })
}

/// `F(E_tau) = A_{sqrt D}` for `tau` with complex multiplication by
/// `Q(sqrt(-D))`.
pub fn functor_f(tau: &Modulus) -> Result<TorusDescriptor> {
    let Some(d) = cm_discriminant(tau) else {
        return Err(Error::NotInDomain(
            "no closed form for theta(tau) without complex multiplication".into(),
        ));
    };
    if d <= 1 {
        return Err(Error::NotInDomain(format!(
            "CM field Q(sqrt(-{d})) gives the rational theta = sqrt({d})"
        )));
    }
    let theta = Number::Surd(QuadraticSurd::sqrt(d as i64)?);
    Ok(TorusDescriptor::exact(theta)?.with_label(format!("A_{{sqrt({d})}}")))
}
