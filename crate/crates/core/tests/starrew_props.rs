use std::collections::HashSet;

use ecnc_core::starrew::{
    lemma1_check, normal_form, parse_relation, replay, verify_relation, Coefficient, NormalForm, RuleSet, Term,
};
use proptest::prelude::*;

/// Heisenberg product: `(k1,a1,b1)(k2,a2,b2) = (k1+k2+b1*a2, a1+a2, b1+b2)`,
/// realising `x3^b x1^a = q^{ab} x1^a x3^b`.
fn heisenberg(word: &[u8]) -> (i64, i64, i64) {
    word.iter().fold((0, 0, 0), |(k, a, b), &g| {
        let (da, db) = match g {
            1 => (1, 0),
            2 => (-1, 0),
            3 => (0, 1),
            _ => (0, -1),
        };
        (k + b * da, a + da, b + db)
    })
}

fn nf(word: &[u8]) -> NormalForm {
    normal_form(&Term::word(word.to_vec()), RuleSet::Rel2).unwrap()
}

const RULES: [([u8; 2], i64, &[u8]); 8] = [
    ([3, 1], 1, &[1, 3]),
    ([4, 1], -1, &[1, 4]),
    ([3, 2], -1, &[2, 3]),
    ([4, 2], 1, &[2, 4]),
    ([1, 2], 0, &[]),
    ([2, 1], 0, &[]),
    ([3, 4], 0, &[]),
    ([4, 3], 0, &[]),
];

/// All irreducible terms reachable by rewriting at any position in any order.
fn all_irreducible(word: &[u8]) -> HashSet<(i64, Vec<u8>)> {
    let mut out = HashSet::new();
    let mut stack = vec![(0i64, word.to_vec())];
    let mut seen = HashSet::new();
    while let Some((k, w)) = stack.pop() {
        if !seen.insert((k, w.clone())) {
            continue;
        }
        let mut reducible = false;
        for p in 0..w.len().saturating_sub(1) {
            if let Some((_, dk, r)) = RULES.iter().find(|(l, _, _)| l[..] == w[p..p + 2]) {
                reducible = true;
                let mut next = w[..p].to_vec();
                next.extend_from_slice(r);
                next.extend_from_slice(&w[p + 2..]);
                stack.push((k + dk, next));
            }
        }
        if !reducible {
            out.insert((k, w));
        }
    }
    out
}

fn word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=4, 0..=max)
}

proptest! {
    #[test]
    fn normal_form_matches_group_oracle(w in word(8)) {
        let n = nf(&w);
        prop_assert_eq!((n.coefficient.k, n.a, n.b), heisenberg(&w));
        prop_assert_eq!(n.coefficient.m, 0);
    }

    #[test]
    fn normal_form_idempotent(w in word(8)) {
        let n = nf(&w);
        let again = normal_form(&n.to_term(), RuleSet::Rel2).unwrap();
        prop_assert_eq!(again, n);
    }

    #[test]
    fn normal_form_multiplicative(u in word(8), v in word(8)) {
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        let prod = normal_form(&nf(&u).to_term().mul(&nf(&v).to_term()), RuleSet::Rel2).unwrap();
        prop_assert_eq!(nf(&uv), prod);
    }

    #[test]
    fn rewriting_is_confluent(w in word(6)) {
        let ends = all_irreducible(&w);
        prop_assert_eq!(ends.len(), 1);
        let (k, end) = ends.into_iter().next().unwrap();
        prop_assert_eq!(normal_form(&Term::new(Coefficient::q(k), end), RuleSet::Rel2).unwrap(), nf(&w));
    }

    #[test]
    fn star_commutes_with_normal_form(w in word(8), k in -3i64..=3, m in -2i64..=2) {
        let t = Term::new(Coefficient::qm(k, m), w);
        let lhs = normal_form(&t.star(), RuleSet::Rel2).unwrap();
        prop_assert_eq!(lhs, normal_form(&t, RuleSet::Rel2).unwrap().star());
    }

    #[test]
    fn easy_and_rel2_agree(w in word(8)) {
        let t = Term::word(w);
        prop_assert_eq!(normal_form(&t, RuleSet::Easy).unwrap(), normal_form(&t, RuleSet::Rel2).unwrap());
    }
}

#[test]
fn q_exponents_add() {
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            let mut w = Vec::new();
            w.extend(std::iter::repeat_n(if b >= 0 { 3 } else { 4 }, b.unsigned_abs() as usize));
            w.extend(std::iter::repeat_n(if a >= 0 { 1 } else { 2 }, a.unsigned_abs() as usize));
            let n = nf(&w);
            assert_eq!((n.coefficient.k, n.a, n.b), (a * b, a, b), "x3^{b} x1^{a}");
        }
    }
}

#[test]
fn lemma_derivations_replay() {
    let report = lemma1_check();
    assert!(report.all_ok, "{}", report.to_text());
    for t in &report.forward {
        let d = t.derivation.as_ref().unwrap();
        assert!(d.len() <= report.limits.max_depth + 1);
        assert!(replay(d));
        assert!(verify_relation(&t.relation, RuleSet::Rel2).unwrap());
    }
    let x1x4 = report
        .forward
        .iter()
        .find(|t| t.relation.equivalent(&parse_relation("x1*x4 = q*x4*x1").unwrap()))
        .expect("x4 x1 commutation is a target");
    assert!(x1x4.derivation.as_ref().unwrap().uses_unit_multiplication());
}
