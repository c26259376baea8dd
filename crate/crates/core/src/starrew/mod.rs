//! Relation DSL and rewriting for the four-generator presentations of the
//! noncommutative torus and the skew Sklyanin algebra.
//!
//! Generators are `x1 = u`, `x2 = u*`, `x3 = v`, `x4 = v*`; coefficients are
//! formal monomials `s q^k mu^m` with `q = e^{2 pi i theta}` and `mu = |q|`.

mod checks;
mod lemma;
mod parse;
mod rewrite;
mod rules;

use std::fmt;

use num_traits::One;
use serde::Serialize;

pub use checks::{
    involution_check, involution_check_relations, rel1_decomposition_check, rel1_decomposition_check_with,
    sklyanin_constraint, DecompositionReport, InvolutionReport, LedgerLine, Substitution,
};
pub use lemma::{lemma1_check, replay, search_derivation, Derivation, Lemma1Report, Move, SearchLimits, Step, TargetReport};
pub use parse::{parse_poly_relation, parse_relation, parse_term, PolyRelation, PolyTerm};
pub use rewrite::{normal_form, rewrite_trace, verify_relation, NormalForm};
pub use rules::RuleSet;

use crate::exactnum::Rational;

/// Generator index `1..=4`.
pub type Gen = u8;
/// A word in the generators; the empty word is the unit `e`.
pub type Word = Vec<Gen>;

/// `x1* = x2`, `x3* = x4`; for these unitaries this is also the inverse.
pub fn star_gen(g: Gen) -> Gen {
    match g {
        1 => 2,
        2 => 1,
        3 => 4,
        4 => 3,
        _ => panic!("generator index {g} out of range"),
    }
}

pub fn word_to_string(w: &[Gen]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|g| format!("x{g}")).collect::<Vec<_>>().join("*")
}

/// `s q^k mu^m`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub k: i64,
    pub m: i64,
    pub s: Rational,
}

impl Coefficient {
    pub fn one() -> Self {
        Coefficient {
            k: 0,
            m: 0,
            s: Rational::one(),
        }
    }

    pub fn q(k: i64) -> Self {
        Coefficient { k, ..Self::one() }
    }

    pub fn qm(k: i64, m: i64) -> Self {
        Coefficient { k, m, s: Rational::one() }
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.m == 0 && self.s.is_one()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Coefficient {
            k: self.k + o.k,
            m: self.m + o.m,
            s: &self.s * &o.s,
        }
    }

    /// `self / o`; `o` has a nonzero scalar by construction.
    pub fn div(&self, o: &Self) -> Self {
        Coefficient {
            k: self.k - o.k,
            m: self.m - o.m,
            s: &self.s / &o.s,
        }
    }

    /// Complex conjugation: `q -> q^-1`, `mu` and `s` real.
    pub fn conj(&self) -> Self {
        Coefficient {
            k: -self.k,
            ..self.clone()
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = coefficient_parts(self);
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn power(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn coefficient_parts(c: &Coefficient) -> Vec<String> {
    let mut parts = Vec::new();
    if !c.s.is_one() {
        parts.push(c.s.to_string());
    }
    parts.extend(power("q", c.k));
    parts.extend(power("mu", c.m));
    parts
}

impl Serialize for Coefficient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `coeff * word`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coefficient,
    pub word: Word,
}

impl Term {
    pub fn new(coeff: Coefficient, word: Word) -> Self {
        Term { coeff, word }
    }

    pub fn word(word: Word) -> Self {
        Term {
            coeff: Coefficient::one(),
            word,
        }
    }

    pub fn unit() -> Self {
        Term::word(Vec::new())
    }

    /// `t*`: reversed word with starred letters and conjugated coefficient.
    pub fn star(&self) -> Self {
        Term {
            coeff: self.coeff.conj(),
            word: self.word.iter().rev().map(|&g| star_gen(g)).collect(),
        }
    }

    pub fn mul(&self, o: &Term) -> Term {
        let mut word = self.word.clone();
        word.extend_from_slice(&o.word);
        Term {
            coeff: self.coeff.mul(&o.coeff),
            word,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = coefficient_parts(&self.coeff);
        if !self.word.is_empty() || parts.is_empty() {
            parts.push(word_to_string(&self.word));
        } else {
            parts.push("e".into());
        }
        f.write_str(&parts.join("*"))
    }
}

/// `lhs = rhs`, stored oriented but compared symmetrically via [`Relation::key`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Term,
    pub rhs: Term,
}

/// Orientation-free form `w1 = ratio * w2` with `w1 <= w2` (shortlex).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationKey {
    pub first: Word,
    pub second: Word,
    pub k: i64,
    pub m: i64,
    pub s: (String, String),
}

fn shortlex(a: &[Gen], b: &[Gen]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Relation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Relation { lhs, rhs }
    }

    pub fn star(&self) -> Relation {
        Relation::new(self.lhs.star(), self.rhs.star())
    }

    pub fn key(&self) -> RelationKey {
        let (a, b) = if shortlex(&self.lhs.word, &self.rhs.word).is_le() {
            (&self.lhs, &self.rhs)
        } else {
            (&self.rhs, &self.lhs)
        };
        // c_a a = c_b b  <=>  a = (c_b / c_a) b
        let ratio = b.coeff.div(&a.coeff);
        RelationKey {
            first: a.word.clone(),
            second: b.word.clone(),
            k: ratio.k,
            m: ratio.m,
            s: (ratio.s.numer().to_string(), ratio.s.denom().to_string()),
        }
    }

    /// Same relation up to orientation and overall scaling.
    pub fn equivalent(&self, o: &Relation) -> bool {
        self.key() == o.key()
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_an_anti_involution() {
        let t = Term::new(Coefficient::qm(2, -1), vec![1, 3, 4, 2]);
        let s = t.star();
        assert_eq!(s.word, vec![1, 3, 4, 2]);
        assert_eq!(s.coeff, Coefficient::qm(-2, -1));
        assert_eq!(s.star(), t);
    }

    #[test]
    fn keys_ignore_orientation_and_scale() {
        let r1 = parse_relation("x4*x1 = q^-1*x1*x4").unwrap();
        let r2 = parse_relation("x1*x4 = q*x4*x1").unwrap();
        let r3 = parse_relation("2*x1*x4 = 2*q*x4*x1").unwrap();
        assert!(r1.equivalent(&r2) && r2.equivalent(&r3));
        assert!(!r1.equivalent(&parse_relation("x1*x4 = x4*x1").unwrap()));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Term::unit().to_string(), "e");
        assert_eq!(Term::new(Coefficient::qm(0, -1), vec![]).to_string(), "mu^-1*e");
        assert_eq!(Term::new(Coefficient::q(1), vec![1, 3]).to_string(), "q*x1*x3");
    }
}
