use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::parse::{parse_poly_relation, parse_relation, PolyRelation};
use super::Relation;
use crate::error::{Error, Result};

/// The presentations handled by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RuleSet {
    /// `x3 x1 = q x1 x3`, `x1 x2 = e = x2 x1`, `x3 x4 = e = x4 x3`
    Easy,
    /// Skew Sklyanin relations with `mu`.
    Rel1,
    /// All four `q`-commutations plus the unit relations.
    Rel2,
    /// `x1 x2 = x3 x4 = mu^-1 e`
    Rel0,
    /// Six quadratic relations with parameters `alpha, beta, gamma`.
    Sklyanin,
}

const EASY: &[&str] = &["x3*x1 = q*x1*x3", "x1*x2 = e", "x2*x1 = e", "x3*x4 = e", "x4*x3 = e"];

const REL1: &[&str] = &[
    "x3*x1 = q*mu*x1*x3",
    "x4*x2 = q*mu^-1*x2*x4",
    "x4*x1 = q^-1*mu*x1*x4",
    "x3*x2 = q^-1*mu^-1*x2*x3",
    "x2*x1 = x1*x2",
    "x4*x3 = x3*x4",
];

/// Display lines 5 and 6 are chains `x2 x1 = x1 x2 = e`; each link is a
/// separate relation tagged with its line.
const REL2: &[(usize, &str)] = &[
    (1, "x3*x1 = q*x1*x3"),
    (2, "x4*x2 = q*x2*x4"),
    (3, "x4*x1 = q^-1*x1*x4"),
    (4, "x3*x2 = q^-1*x2*x3"),
    (5, "x2*x1 = x1*x2"),
    (5, "x1*x2 = e"),
    (6, "x4*x3 = x3*x4"),
    (6, "x3*x4 = e"),
];

const REL0: &[&str] = &["x1*x2 = mu^-1*e", "x3*x4 = mu^-1*e"];

const SKLYANIN: &[&str] = &[
    "x1*x2 - x2*x1 = alpha*(x3*x4 + x4*x3)",
    "x1*x2 + x2*x1 = x3*x4 - x4*x3",
    "x1*x3 - x3*x1 = beta*(x4*x2 + x2*x4)",
    "x1*x3 + x3*x1 = x4*x2 - x2*x4",
    "x1*x4 - x4*x1 = gamma*(x2*x3 + x3*x2)",
    "x1*x4 + x4*x1 = x2*x3 - x3*x2",
];

fn parse_all(src: &[&str]) -> Vec<Relation> {
    src.iter().map(|s| parse_relation(s).expect("built-in relation parses")).collect()
}

impl RuleSet {
    pub const ALL: [RuleSet; 5] = [RuleSet::Easy, RuleSet::Rel1, RuleSet::Rel2, RuleSet::Rel0, RuleSet::Sklyanin];

    pub fn name(self) -> &'static str {
        match self {
            RuleSet::Easy => "EASY",
            RuleSet::Rel1 => "REL1",
            RuleSet::Rel2 => "REL2",
            RuleSet::Rel0 => "REL0",
            RuleSet::Sklyanin => "SKLYANIN",
        }
    }

    /// Monomial relations; the Sklyanin set has none.
    pub fn relations(self) -> Result<Vec<Relation>> {
        match self {
            RuleSet::Easy => Ok(parse_all(EASY)),
            RuleSet::Rel1 => Ok(parse_all(REL1)),
            RuleSet::Rel2 => Ok(REL2.iter().map(|(_, s)| parse_relation(s).expect("built-in")).collect()),
            RuleSet::Rel0 => Ok(parse_all(REL0)),
            RuleSet::Sklyanin => Err(Error::Parameter(
                "SKLYANIN relations are linear combinations; use polynomial_relations".into(),
            )),
        }
    }

    /// `(display line, relation)` for REL2.
    pub fn rel2_lines() -> Vec<(usize, Relation)> {
        REL2.iter().map(|(l, s)| (*l, parse_relation(s).expect("built-in"))).collect()
    }

    pub fn polynomial_relations(self) -> Result<Vec<PolyRelation>> {
        match self {
            RuleSet::Sklyanin => Ok(SKLYANIN
                .iter()
                .map(|s| parse_poly_relation(s).expect("built-in relation parses"))
                .collect()),
            other => Err(Error::Parameter(format!("{other} is a monomial presentation"))),
        }
    }

    /// Systems with a monomial normal form `q^k x1^a x3^b`.
    pub fn has_normal_form(self) -> bool {
        matches!(self, RuleSet::Easy | RuleSet::Rel2)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleSet::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown rule set `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_ins_parse() {
        assert_eq!(RuleSet::Easy.relations().unwrap().len(), 5);
        assert_eq!(RuleSet::Rel1.relations().unwrap().len(), 6);
        assert_eq!(RuleSet::Rel2.relations().unwrap().len(), 8);
        assert_eq!(RuleSet::Sklyanin.polynomial_relations().unwrap().len(), 6);
        assert!(RuleSet::Sklyanin.relations().is_err());
        assert_eq!("rel2".parse::<RuleSet>().unwrap(), RuleSet::Rel2);
    }
}
