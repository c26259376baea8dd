use std::fmt;

use serde::Serialize;

use super::rules::RuleSet;
use super::{Coefficient, Gen, Relation, Term};
use crate::error::{Error, Result};

/// `coeff * x1^a x3^b`, with `x2 = x1^-1` and `x4 = x3^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub coefficient: Coefficient,
    pub a: i64,
    pub b: i64,
}

impl NormalForm {
    pub fn to_term(&self) -> Term {
        let x = if self.a >= 0 { 1 } else { 2 };
        let y = if self.b >= 0 { 3 } else { 4 };
        let mut word: Vec<Gen> = vec![x; self.a.unsigned_abs() as usize];
        word.extend(std::iter::repeat_n(y, self.b.unsigned_abs() as usize));
        Term::new(self.coefficient.clone(), word)
    }

    /// `(nf)*`: conjugate coefficient; `(x1^a x3^b)* = x3^-b x1^-a = q^{ab} x1^-a x3^-b`.
    pub fn star(&self) -> NormalForm {
        let mut c = self.coefficient.conj();
        c.k += self.a * self.b;
        NormalForm {
            coefficient: c,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coefficient.is_one() {
            parts.push(self.coefficient.to_string());
        }
        for (name, e) in [("x1", self.a), ("x3", self.b)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() || (self.a == 0 && self.b == 0) {
            parts.push("e".into());
        }
        f.write_str(&parts.join("*"))
    }
}

/// Oriented rules `lhs -> q^k rhs` shared by both invertible systems.
const RULES: [([Gen; 2], i64, &[Gen]); 8] = [
    ([3, 1], 1, &[1, 3]),
    ([4, 1], -1, &[1, 4]),
    ([3, 2], -1, &[2, 3]),
    ([4, 2], 1, &[2, 4]),
    ([1, 2], 0, &[]),
    ([2, 1], 0, &[]),
    ([3, 4], 0, &[]),
    ([4, 3], 0, &[]),
];

fn rule_text(i: usize) -> String {
    let (l, k, r) = RULES[i];
    let lhs = Term::word(l.to_vec());
    let rhs = Term::new(Coefficient::q(k), r.to_vec());
    format!("{lhs} -> {rhs}")
}

fn check_system(system: RuleSet) -> Result<()> {
    match system {
        RuleSet::Rel2 => Ok(()),
        RuleSet::Easy => super::lemma::easy_companions(),
        other => Err(Error::Parameter(format!(
            "no normal form for {other}; supported systems are EASY and REL2"
        ))),
    }
}

/// One leftmost rewrite, if any redex exists.
fn step(t: &Term) -> Option<(Term, usize)> {
    for p in 0..t.word.len().saturating_sub(1) {
        let pair = [t.word[p], t.word[p + 1]];
        if let Some(i) = RULES.iter().position(|(l, _, _)| *l == pair) {
            let (_, k, r) = RULES[i];
            let mut word = t.word[..p].to_vec();
            word.extend_from_slice(r);
            word.extend_from_slice(&t.word[p + 2..]);
            return Some((Term::new(t.coeff.mul(&Coefficient::q(k)), word), i));
        }
    }
    None
}

/// Every intermediate term of leftmost rewriting with the rule applied.
pub fn rewrite_trace(t: &Term, system: RuleSet) -> Result<Vec<(String, Term)>> {
    check_system(system)?;
    if t.word.iter().any(|g| !(1..=4).contains(g)) {
        return Err(Error::Parameter("generator index out of range".into()));
    }
    let mut out = Vec::new();
    let mut cur = t.clone();
    while let Some((next, i)) = step(&cur) {
        out.push((rule_text(i), next.clone()));
        cur = next;
    }
    Ok(out)
}

pub(crate) fn normal_form_unchecked(t: &Term) -> NormalForm {
    let mut cur = t.clone();
    while let Some((next, _)) = step(&cur) {
        cur = next;
    }
    let count = |pos: Gen, neg: Gen| {
        cur.word.iter().filter(|&&g| g == pos).count() as i64 - cur.word.iter().filter(|&&g| g == neg).count() as i64
    };
    NormalForm {
        a: count(1, 2),
        b: count(3, 4),
        coefficient: cur.coeff,
    }
}

/// Normal form under EASY or REL2. For EASY the three companion
/// commutations are used only after they have been derived from EASY itself.
pub fn normal_form(t: &Term, system: RuleSet) -> Result<NormalForm> {
    check_system(system)?;
    if t.word.iter().any(|g| !(1..=4).contains(g)) {
        return Err(Error::Parameter("generator index out of range".into()));
    }
    Ok(normal_form_unchecked(t))
}

/// Equality of both sides in the quotient algebra.
pub fn verify_relation(rel: &Relation, system: RuleSet) -> Result<bool> {
    Ok(normal_form(&rel.lhs, system)? == normal_form(&rel.rhs, system)?)
}
