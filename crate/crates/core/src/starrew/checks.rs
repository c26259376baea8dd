use num_complex::Complex;
use serde::Serialize;

use super::rewrite::{normal_form_unchecked, verify_relation};
use super::rules::RuleSet;
use super::{Coefficient, Relation, Term};
use crate::curves::SKLYANIN_EPS;
use crate::error::{Error, Result};

/// `x2 := mu^x2_mu x1^-1`, `x4 := mu^x4_mu x3^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub x2_mu: i64,
    pub x4_mu: i64,
}

impl Substitution {
    /// The substitution forced by `x1 x2 = x3 x4 = mu^-1 e`.
    pub fn scaled() -> Self {
        Substitution { x2_mu: -1, x4_mu: -1 }
    }

    /// Plain inverses without the unit scaling.
    pub fn unscaled() -> Self {
        Substitution { x2_mu: 0, x4_mu: 0 }
    }

    fn apply(&self, t: &Term) -> Term {
        let n2 = t.word.iter().filter(|&&g| g == 2).count() as i64;
        let n4 = t.word.iter().filter(|&&g| g == 4).count() as i64;
        Term::new(
            t.coeff.mul(&Coefficient::qm(0, self.x2_mu * n2 + self.x4_mu * n4)),
            t.word.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerLine {
    /// `forward`, `converse` or `unit`.
    pub direction: &'static str,
    pub line: usize,
    pub source: Relation,
    pub target: Option<Relation>,
    pub monomial_match: bool,
    /// Exponents of `q` and `mu` left over when both sides are compared.
    pub q_residual: i64,
    pub mu_residual: i64,
    pub balanced: bool,
    pub balanced_at_mu_one: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub substitution: Substitution,
    pub lines: Vec<LedgerLine>,
    pub balanced: bool,
    /// Every ledger balances once `mu = 1`.
    pub balanced_at_mu_one: bool,
}

impl DecompositionReport {
    pub fn unbalanced(&self) -> impl Iterator<Item = &LedgerLine> {
        self.lines.iter().filter(|l| !l.balanced)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "substitution x2 := mu^{}*x1^-1, x4 := mu^{}*x3^-1\n",
            self.substitution.x2_mu, self.substitution.x4_mu
        );
        for l in &self.lines {
            out.push_str(&format!(
                "{:<8} line {}  {:<28} q^{:<3} mu^{:<3} {}\n",
                l.direction,
                l.line,
                l.source.to_string(),
                l.q_residual,
                l.mu_residual,
                if l.balanced { "balanced" } else { "UNBALANCED" }
            ));
        }
        out.push_str(&format!(
            "balanced: {}; balanced at mu = 1: {}\n",
            self.balanced, self.balanced_at_mu_one
        ));
        out
    }
}

fn ledger(direction: &'static str, line: usize, source: &Relation, target: Option<&Relation>, monomial_match: bool, residual: &Coefficient) -> LedgerLine {
    let at_one = monomial_match && residual.k == 0 && residual.s == num_traits::One::one();
    LedgerLine {
        direction,
        line,
        source: source.clone(),
        target: target.cloned(),
        monomial_match,
        q_residual: residual.k,
        mu_residual: residual.m,
        balanced: at_one && residual.m == 0,
        balanced_at_mu_one: at_one,
    }
}

/// `ratio` with `lhs = ratio * rhs` on the words as written.
fn ratio(r: &Relation) -> Coefficient {
    r.rhs.coeff.div(&r.lhs.coeff)
}

/// Checks each skew relation against the plain commutation system after
/// eliminating `x2`, `x4` through `sub`:
///
/// * forward: the substituted relation is compared coefficient by
///   coefficient with the commutation relation on the same words;
/// * converse: both sides are reduced to normal form in the commutation
///   system with scaled units;
/// * unit: the scaled unit relations must hold under `sub`.
pub fn rel1_decomposition_check_with(rel1: &[Relation], sub: Substitution) -> Result<DecompositionReport> {
    if rel1.len() != 6 {
        return Err(Error::Parameter(format!("expected 6 relations, got {}", rel1.len())));
    }
    let rel2 = RuleSet::rel2_lines();
    let mut lines = Vec::new();
    for (i, r) in rel1.iter().enumerate() {
        let line = i + 1;
        let target = rel2
            .iter()
            .find(|(l, t)| *l == line && t.lhs.word.len() == 2 && t.rhs.word.len() == 2)
            .map(|(_, t)| t)
            .expect("each line has a commutation");
        let s = Relation::new(sub.apply(&r.lhs), sub.apply(&r.rhs));
        let words_match = s.lhs.word == target.lhs.word && s.rhs.word == target.rhs.word;
        let residual = ratio(&s).div(&ratio(target));
        lines.push(ledger("forward", line, r, Some(target), words_match, &residual));
    }
    for (i, r) in rel1.iter().enumerate() {
        let l = normal_form_unchecked(&sub.apply(&r.lhs));
        let rr = normal_form_unchecked(&sub.apply(&r.rhs));
        let residual = rr.coefficient.div(&l.coefficient);
        lines.push(ledger("converse", i + 1, r, None, (l.a, l.b) == (rr.a, rr.b), &residual));
    }
    for (i, r) in RuleSet::Rel0.relations()?.iter().enumerate() {
        let l = normal_form_unchecked(&sub.apply(&r.lhs));
        let rr = normal_form_unchecked(&sub.apply(&r.rhs));
        let residual = rr.coefficient.div(&l.coefficient);
        lines.push(ledger("unit", i + 1, r, None, (l.a, l.b) == (rr.a, rr.b), &residual));
    }
    Ok(DecompositionReport {
        substitution: sub,
        balanced: lines.iter().all(|l| l.balanced),
        balanced_at_mu_one: lines.iter().all(|l| l.balanced_at_mu_one),
        lines,
    })
}

pub fn rel1_decomposition_check() -> DecompositionReport {
    rel1_decomposition_check_with(&RuleSet::Rel1.relations().expect("built-in"), Substitution::scaled())
        .expect("six relations")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvolutionImage {
    pub relation: Relation,
    pub image: Relation,
    /// The image is one of the relations up to orientation and scaling.
    pub in_set: bool,
    /// The image holds in the quotient, when a normal form is available.
    pub holds_in_quotient: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvolutionReport {
    pub system: String,
    pub images: Vec<InvolutionImage>,
    pub invariant: bool,
}

/// Applies `*` to every relation. Relations whose image is not literally in
/// the set are checked in the quotient by `quotient`, if given.
pub fn involution_check_relations(name: &str, rels: &[Relation], quotient: Option<RuleSet>) -> Result<InvolutionReport> {
    let keys: Vec<_> = rels.iter().map(Relation::key).collect();
    let mut images = Vec::new();
    for r in rels {
        let image = r.star();
        let in_set = keys.contains(&image.key());
        let holds_in_quotient = match quotient {
            Some(sys) if !in_set => Some(verify_relation(&image, sys)?),
            _ => None,
        };
        images.push(InvolutionImage {
            relation: r.clone(),
            image,
            in_set,
            holds_in_quotient,
        });
    }
    Ok(InvolutionReport {
        system: name.to_string(),
        invariant: images.iter().all(|i| i.in_set || i.holds_in_quotient == Some(true)),
        images,
    })
}

pub fn involution_check(system: RuleSet) -> Result<InvolutionReport> {
    let quotient = system.has_normal_form().then_some(system);
    match system {
        RuleSet::Sklyanin => Err(Error::Parameter(
            "involution check covers EASY, REL1, REL2 and REL0".into(),
        )),
        _ => involution_check_relations(system.name(), &system.relations()?, quotient),
    }
}

/// `|alpha + beta + gamma + alpha beta gamma| <= 1e-12`.
pub fn sklyanin_constraint(alpha: Complex<f64>, beta: Complex<f64>, gamma: Complex<f64>) -> bool {
    (alpha + beta + gamma + alpha * beta * gamma).norm() <= SKLYANIN_EPS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starrew::parse_relation;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn constraint_examples() {
        assert!(sklyanin_constraint(c(0.0), c(0.0), c(0.0)));
        assert!(sklyanin_constraint(c(1.0), c(1.0), c(-1.0)));
        assert!(!sklyanin_constraint(c(1.0), c(1.0), c(1.0)));
    }

    #[test]
    fn involution_examples() {
        for sys in [RuleSet::Easy, RuleSet::Rel1, RuleSet::Rel2, RuleSet::Rel0] {
            assert!(involution_check(sys).unwrap().invariant, "{sys}");
        }
        let easy = involution_check(RuleSet::Easy).unwrap();
        assert!(easy.images.iter().any(|i| !i.in_set && i.holds_in_quotient == Some(true)));
        let mut rel1 = RuleSet::Rel1.relations().unwrap();
        rel1[0] = parse_relation("x3*x1 = q^2*mu*x1*x3").unwrap();
        assert!(!involution_check_relations("mutated", &rel1, None).unwrap().invariant);
        assert!(involution_check(RuleSet::Sklyanin).is_err());
    }

    #[test]
    fn decomposition_ledgers() {
        let r = rel1_decomposition_check();
        let fwd: Vec<i64> = r.lines.iter().filter(|l| l.direction == "forward").map(|l| l.mu_residual).collect();
        assert_eq!(fwd, [1, -1, 1, -1, 0, 0]);
        let conv: Vec<i64> = r.lines.iter().filter(|l| l.direction == "converse").map(|l| l.mu_residual).collect();
        assert_eq!(conv, fwd);
        assert!(r.lines.iter().all(|l| l.q_residual == 0 && l.monomial_match));
        assert!(r.lines.iter().filter(|l| l.direction == "unit").all(|l| l.balanced));
        assert!(!r.balanced);
        assert!(r.balanced_at_mu_one);
    }

    #[test]
    fn injected_faults_are_detected() {
        let unscaled =
            rel1_decomposition_check_with(&RuleSet::Rel1.relations().unwrap(), Substitution::unscaled()).unwrap();
        assert!(unscaled.lines.iter().filter(|l| l.direction == "unit").all(|l| !l.balanced));
        let mut rel1 = RuleSet::Rel1.relations().unwrap();
        rel1[2] = parse_relation("x4*x1 = q^-2*mu*x1*x4").unwrap();
        let bad = rel1_decomposition_check_with(&rel1, Substitution::scaled()).unwrap();
        assert!(!bad.balanced_at_mu_one);
        assert_eq!(bad.lines.iter().filter(|l| l.q_residual != 0).count(), 2);
    }
}
