//! Bounded breadth-first derivation of the full commutation system from
//! the torus relations, using only the moves of a hand proof: multiply both
//! sides by a generator, or rewrite a subword with a given relation.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::rewrite::verify_relation;
use super::rules::RuleSet;
use super::{Coefficient, Gen, Relation, RelationKey, Term};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    /// Start from axiom `i`.
    Given(usize),
    MulLeft(Gen),
    MulRight(Gen),
    /// Replace an occurrence of the left word of axiom `rule` at `pos` by
    /// its right-hand side (`forward`) or the reverse.
    Rewrite {
        side: Side,
        pos: usize,
        rule: usize,
        forward: bool,
    },
    /// Replace a bare unit `e` by the word of a unit axiom.
    ExpandUnit { side: Side, rule: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step {
    #[serde(rename = "move")]
    pub mv: Move,
    pub description: String,
    pub equation: Relation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Derivation {
    pub axioms: Vec<Relation>,
    pub target: Relation,
    pub steps: Vec<Step>,
}

impl Derivation {
    /// Number of moves after the starting axiom.
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn uses_unit_multiplication(&self) -> bool {
        self.steps
            .iter()
            .any(|s| matches!(s.mv, Move::MulLeft(_) | Move::MulRight(_)))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target: {}", self.target)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "  {i:>2}. {:<42} {}", s.description, s.equation)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub max_word: usize,
    pub max_q: i64,
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 12,
            max_word: 4,
            max_q: 3,
            max_states: 2_000_000,
        }
    }
}

fn side_term(r: &Relation, side: Side) -> &Term {
    match side {
        Side::Left => &r.lhs,
        Side::Right => &r.rhs,
    }
}

fn with_side(r: &Relation, side: Side, t: Term) -> Relation {
    match side {
        Side::Left => Relation::new(t, r.rhs.clone()),
        Side::Right => Relation::new(r.lhs.clone(), t),
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

/// `(from word, factor, to word)` with `from = factor * to`.
fn oriented(ax: &Relation, forward: bool) -> (Vec<Gen>, Coefficient, Vec<Gen>) {
    let (a, b) = if forward { (&ax.lhs, &ax.rhs) } else { (&ax.rhs, &ax.lhs) };
    (a.word.clone(), b.coeff.div(&a.coeff), b.word.clone())
}

/// Applies a move; `None` when it does not match.
fn apply(axioms: &[Relation], cur: &Relation, mv: Move) -> Option<Relation> {
    match mv {
        Move::Given(i) => axioms.get(i).cloned(),
        Move::MulLeft(g) => {
            let x = Term::word(vec![g]);
            Some(Relation::new(x.mul(&cur.lhs), x.mul(&cur.rhs)))
        }
        Move::MulRight(g) => {
            let x = Term::word(vec![g]);
            Some(Relation::new(cur.lhs.mul(&x), cur.rhs.mul(&x)))
        }
        Move::Rewrite { side, pos, rule, forward } => {
            let (from, factor, to) = oriented(axioms.get(rule)?, forward);
            let t = side_term(cur, side);
            if from.is_empty() || pos + from.len() > t.word.len() || t.word[pos..pos + from.len()] != from[..] {
                return None;
            }
            let mut word = t.word[..pos].to_vec();
            word.extend_from_slice(&to);
            word.extend_from_slice(&t.word[pos + from.len()..]);
            Some(with_side(cur, side, Term::new(t.coeff.mul(&factor), word)))
        }
        Move::ExpandUnit { side, rule } => {
            let ax = axioms.get(rule)?;
            let t = side_term(cur, side);
            if !t.word.is_empty() || !ax.rhs.word.is_empty() || ax.lhs.word.is_empty() {
                return None;
            }
            // e = (c_l / c_r) w
            let factor = ax.lhs.coeff.div(&ax.rhs.coeff);
            Some(with_side(cur, side, Term::new(t.coeff.mul(&factor), ax.lhs.word.clone())))
        }
    }
}

fn describe(axioms: &[Relation], mv: Move) -> String {
    match mv {
        Move::Given(i) => format!("given {}", axioms[i]),
        Move::MulLeft(g) => format!("multiply on the left by x{g}"),
        Move::MulRight(g) => format!("multiply on the right by x{g}"),
        Move::Rewrite { side, pos, rule, forward } => {
            let (from, factor, to) = oriented(&axioms[rule], forward);
            format!(
                "{} side at {pos}: {} -> {}",
                side_name(side),
                Term::word(from),
                Term::new(factor, to)
            )
        }
        Move::ExpandUnit { side, rule } => {
            format!("{} side: e -> {}", side_name(side), axioms[rule].lhs)
        }
    }
}

fn moves(axioms: &[Relation], cur: &Relation) -> Vec<Move> {
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let t = side_term(cur, side);
        for (rule, ax) in axioms.iter().enumerate() {
            for forward in [true, false] {
                let (from, _, _) = oriented(ax, forward);
                if from.is_empty() || from.len() > t.word.len() {
                    continue;
                }
                for pos in 0..=t.word.len() - from.len() {
                    if t.word[pos..pos + from.len()] == from[..] {
                        out.push(Move::Rewrite { side, pos, rule, forward });
                    }
                }
            }
            if t.word.is_empty() && ax.rhs.word.is_empty() {
                out.push(Move::ExpandUnit { side, rule });
            }
        }
    }
    for g in 1..=4 {
        out.push(Move::MulLeft(g));
    }
    for g in 1..=4 {
        out.push(Move::MulRight(g));
    }
    out
}

struct Node {
    eq: Relation,
    parent: Option<usize>,
    mv: Move,
}

/// Breadth-first search from the axioms for each target; returns one
/// shortest derivation per target (or `None`) and the number of states
/// explored.
pub fn search_derivation(
    axioms: &[Relation],
    targets: &[Relation],
    limits: SearchLimits,
) -> (Vec<Option<Derivation>>, usize) {
    let want: HashMap<RelationKey, usize> = targets.iter().enumerate().map(|(i, t)| (t.key(), i)).collect();
    let mut found: Vec<Option<usize>> = vec![None; targets.len()];
    let mut nodes: Vec<Node> = Vec::new();
    let mut seen: HashMap<RelationKey, usize> = HashMap::new();
    let mut frontier = Vec::new();
    let mut remaining = targets.len();
    let record = |idx: usize, key: &RelationKey, found: &mut Vec<Option<usize>>, remaining: &mut usize| {
        if let Some(&t) = want.get(key) {
            if found[t].is_none() {
                found[t] = Some(idx);
                *remaining -= 1;
            }
        }
    };
    for (i, ax) in axioms.iter().enumerate() {
        let key = ax.key();
        if seen.contains_key(&key) {
            continue;
        }
        nodes.push(Node {
            eq: ax.clone(),
            parent: None,
            mv: Move::Given(i),
        });
        let idx = nodes.len() - 1;
        seen.insert(key.clone(), idx);
        record(idx, &key, &mut found, &mut remaining);
        frontier.push(idx);
    }
    let mut depth = 0;
    while remaining > 0 && depth < limits.max_depth && !frontier.is_empty() && nodes.len() < limits.max_states {
        depth += 1;
        let mut next = Vec::new();
        for &idx in &frontier {
            let cur = nodes[idx].eq.clone();
            for mv in moves(axioms, &cur) {
                let Some(eq) = apply(axioms, &cur, mv) else { continue };
                if eq.lhs.word.len() > limits.max_word
                    || eq.rhs.word.len() > limits.max_word
                    || eq.is_trivial()
                {
                    continue;
                }
                let key = eq.key();
                if key.k.abs() > limits.max_q || seen.contains_key(&key) {
                    continue;
                }
                nodes.push(Node {
                    eq,
                    parent: Some(idx),
                    mv,
                });
                let n = nodes.len() - 1;
                seen.insert(key.clone(), n);
                record(n, &key, &mut found, &mut remaining);
                next.push(n);
            }
        }
        frontier = next;
    }
    let derivations = found
        .iter()
        .zip(targets)
        .map(|(f, target)| {
            f.map(|mut idx| {
                let mut steps = Vec::new();
                loop {
                    let n = &nodes[idx];
                    steps.push(Step {
                        mv: n.mv,
                        description: describe(axioms, n.mv),
                        equation: n.eq.clone(),
                    });
                    match n.parent {
                        Some(p) => idx = p,
                        None => break,
                    }
                }
                steps.reverse();
                Derivation {
                    axioms: axioms.to_vec(),
                    target: target.clone(),
                    steps,
                }
            })
        })
        .collect();
    (derivations, nodes.len())
}

/// Re-applies every move from the starting axiom and checks each recorded
/// equation and the final match with the target.
pub fn replay(d: &Derivation) -> bool {
    let Some(first) = d.steps.first() else { return false };
    let Move::Given(i) = first.mv else { return false };
    let Some(mut cur) = d.axioms.get(i).cloned() else { return false };
    if cur != first.equation {
        return false;
    }
    for s in &d.steps[1..] {
        if matches!(s.mv, Move::Given(_)) {
            return false;
        }
        match apply(&d.axioms, &cur, s.mv) {
            Some(next) if next == s.equation => cur = next,
            _ => return false,
        }
    }
    cur.equivalent(&d.target)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetReport {
    /// Display line of the target system.
    pub line: usize,
    pub relation: Relation,
    pub status: &'static str,
    pub derivation: Option<Derivation>,
    pub replay_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConverseCheck {
    pub relation: Relation,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub limits: SearchLimits,
    pub states_explored: usize,
    pub forward: Vec<TargetReport>,
    pub converse: Vec<ConverseCheck>,
    pub all_ok: bool,
}

impl Lemma1Report {
    pub fn to_text(&self) -> String {
        let mut out = String::from("EASY => REL2\n");
        for t in &self.forward {
            out.push_str(&format!("[line {}] {}: {}\n", t.line, t.relation, t.status));
            if let Some(d) = &t.derivation {
                for (i, s) in d.steps.iter().enumerate() {
                    out.push_str(&format!("    {i:>2}. {:<44} {}\n", s.description, s.equation));
                }
            }
        }
        out.push_str("REL2 => EASY\n");
        for c in &self.converse {
            out.push_str(&format!("  {}: {}\n", c.relation, if c.holds { "holds" } else { "FAILS" }));
        }
        out.push_str(if self.all_ok { "lemma verified\n" } else { "lemma NOT verified\n" });
        out
    }
}

fn easy() -> Vec<Relation> {
    RuleSet::Easy.relations().expect("built-in")
}

pub fn lemma1_check() -> Lemma1Report {
    lemma1_check_with(SearchLimits::default())
}

pub(crate) fn lemma1_check_with(limits: SearchLimits) -> Lemma1Report {
    let axioms = easy();
    let lines = RuleSet::rel2_lines();
    let targets: Vec<Relation> = lines.iter().map(|(_, r)| r.clone()).collect();
    let (derivs, states) = search_derivation(&axioms, &targets, limits);
    let forward: Vec<TargetReport> = lines
        .into_iter()
        .zip(derivs)
        .map(|((line, relation), derivation)| {
            let replay_ok = derivation.as_ref().is_some_and(replay);
            TargetReport {
                line,
                relation,
                status: if derivation.is_some() { "derived" } else { "inconclusive" },
                derivation,
                replay_ok,
            }
        })
        .collect();
    let converse: Vec<ConverseCheck> = axioms
        .iter()
        .map(|r| ConverseCheck {
            relation: r.clone(),
            holds: verify_relation(r, RuleSet::Rel2).unwrap_or(false),
        })
        .collect();
    let all_ok = forward.iter().all(|t| t.replay_ok) && converse.iter().all(|c| c.holds);
    Lemma1Report {
        limits,
        states_explored: states,
        forward,
        converse,
        all_ok,
    }
}

/// The companion commutations of EASY, derived once per process.
pub(crate) fn easy_companions() -> Result<()> {
    static DONE: OnceLock<bool> = OnceLock::new();
    let ok = *DONE.get_or_init(|| lemma1_check().forward.iter().all(|t| t.replay_ok));
    if ok {
        Ok(())
    } else {
        Err(Error::Resource(
            "could not derive the companion commutations from EASY within the search bounds".into(),
        ))
    }
}
