//! ```text
//! relation := product "=" product
//! product  := factor { "*" factor }
//! factor   := "x1" | "x2" | "x3" | "x4" | "e" | "q" ["^" int] | "mu" ["^" int] | rational
//! ```
//! The polynomial form additionally allows `+`, `-`, parentheses and the
//! parameters `alpha`, `beta`, `gamma`. Error positions are 0-based byte
//! offsets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{word_to_string, Coefficient, Relation, Term, Word};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
    poly: bool,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[s..i].to_string()), s));
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[s..i].parse().expect("digits")), s));
        } else if b"*=^/-+()".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::UnknownSymbol {
                pos: i,
                symbol: ch.to_string(),
            });
        }
    }
    Ok(out)
}

/// Term of a polynomial relation: `coeff * alpha^a beta^b gamma^c * word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTerm {
    pub coeff: Coefficient,
    pub params: [u32; 3],
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRelation {
    pub lhs: Vec<PolyTerm>,
    pub rhs: Vec<PolyTerm>,
}

impl Parser {
    fn new(text: &str, poly: bool) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            i: 0,
            end: text.len(),
            poly,
        })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.is_sym('-');
        if neg {
            self.i += 1;
        }
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.i += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.syntax("expected an integer")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if !self.is_sym('^') {
            return Ok(1);
        }
        self.i += 1;
        let pos = self.pos();
        let e = self.int()?;
        i64::try_from(e).map_err(|_| Error::Syntax {
            pos,
            msg: "exponent out of range".into(),
        })
    }

    /// A single factor as a polynomial term.
    fn factor(&mut self) -> Result<Vec<PolyTerm>> {
        let pos = self.pos();
        let mut t = PolyTerm {
            coeff: Coefficient::one(),
            params: [0; 3],
            word: Vec::new(),
        };
        match self.peek().cloned() {
            None => return Err(self.syntax("expected a factor, found end of input")),
            Some(Tok::Sym('(')) if self.poly => {
                self.i += 1;
                let inner = self.sum()?;
                self.expect(')')?;
                return Ok(inner);
            }
            Some(Tok::Sym('-')) | Some(Tok::Int(_)) => {
                let n = self.int()?;
                let d = if self.is_sym('/') {
                    self.i += 1;
                    let dpos = self.pos();
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(Error::Syntax {
                            pos: dpos,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                if n.is_zero() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "zero coefficient".into(),
                    });
                }
                t.coeff.s = Rational::new(n, d);
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                match name.as_str() {
                    "x1" | "x2" | "x3" | "x4" => t.word.push(name.as_bytes()[1] - b'0'),
                    "e" => {}
                    "q" => t.coeff.k = self.exponent()?,
                    "mu" => t.coeff.m = self.exponent()?,
                    "alpha" | "beta" | "gamma" if self.poly => {
                        let idx = ["alpha", "beta", "gamma"].iter().position(|p| *p == name).unwrap_or(0);
                        t.params[idx] = 1;
                    }
                    _ => return Err(Error::UnknownSymbol { pos, symbol: name }),
                }
            }
            Some(Tok::Sym(c)) => return Err(self.syntax(format!("unexpected `{c}`"))),
        }
        Ok(vec![t])
    }

    fn product(&mut self) -> Result<Vec<PolyTerm>> {
        let mut acc = self.factor()?;
        while self.is_sym('*') {
            self.i += 1;
            let f = self.factor()?;
            acc = multiply(&acc, &f);
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<Vec<PolyTerm>> {
        let mut sign = Rational::one();
        if self.is_sym('+') {
            self.i += 1;
        } else if self.is_sym('-') && !matches!(self.toks.get(self.i + 1), Some((Tok::Int(_), _))) {
            self.i += 1;
            sign = -sign;
        }
        let mut out = Vec::new();
        loop {
            for mut t in self.product()? {
                t.coeff.s = &t.coeff.s * &sign;
                out.push(t);
            }
            if self.is_sym('+') {
                sign = Rational::one();
            } else if self.is_sym('-') {
                sign = -Rational::one();
            } else {
                break;
            }
            self.i += 1;
        }
        Ok(out)
    }

    fn finish(&self) -> Result<()> {
        if self.i < self.toks.len() {
            return Err(self.syntax("unexpected trailing input"));
        }
        Ok(())
    }
}

fn multiply(a: &[PolyTerm], b: &[PolyTerm]) -> Vec<PolyTerm> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let mut word = x.word.clone();
            word.extend_from_slice(&y.word);
            out.push(PolyTerm {
                coeff: x.coeff.mul(&y.coeff),
                params: [0, 1, 2].map(|i| x.params[i] + y.params[i]),
                word,
            });
        }
    }
    out
}

fn single(terms: Vec<PolyTerm>) -> Term {
    let t = terms.into_iter().next().expect("a product yields one term");
    Term::new(t.coeff, t.word)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text, false)?;
    let t = p.product()?;
    p.finish()?;
    Ok(single(t))
}

pub fn parse_relation(text: &str) -> Result<Relation> {
    let mut p = Parser::new(text, false)?;
    let lhs = p.product()?;
    p.expect('=')?;
    let rhs = p.product()?;
    p.finish()?;
    Ok(Relation::new(single(lhs), single(rhs)))
}

/// Linear relation such as `x1*x2 - x2*x1 = alpha*(x3*x4 + x4*x3)`.
pub fn parse_poly_relation(text: &str) -> Result<PolyRelation> {
    let mut p = Parser::new(text, true)?;
    let lhs = p.sum()?;
    p.expect('=')?;
    let rhs = p.sum()?;
    p.finish()?;
    Ok(PolyRelation { lhs, rhs })
}

impl fmt::Display for PolyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let s = &self.coeff.s;
        let neg = *s < Rational::zero();
        let abs = if neg { -s.clone() } else { s.clone() };
        if !abs.is_one() {
            parts.push(abs.to_string());
        }
        for (i, name) in ["alpha", "beta", "gamma"].iter().enumerate() {
            match self.params[i] {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        let c = Coefficient {
            s: Rational::one(),
            ..self.coeff.clone()
        };
        if !c.is_one() {
            parts.push(c.to_string());
        }
        parts.push(word_to_string(&self.word));
        write!(f, "{}{}", if neg { "-" } else { "" }, parts.join("*"))
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[PolyTerm]) -> fmt::Result {
    for (i, t) in terms.iter().enumerate() {
        let s = t.to_string();
        match (i, s.strip_prefix('-')) {
            (0, _) => f.write_str(&s)?,
            (_, Some(rest)) => write!(f, " - {rest}")?,
            (_, None) => write!(f, " + {s}")?,
        }
    }
    Ok(())
}

impl fmt::Display for PolyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, &self.lhs)?;
        f.write_str(" = ")?;
        write_sum(f, &self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let r = parse_relation("x3*x1 = q*x1*x3").unwrap();
        assert_eq!(r.lhs, Term::word(vec![3, 1]));
        assert_eq!(r.rhs, Term::new(Coefficient::q(1), vec![1, 3]));
        let r = parse_relation("x1*x2 = mu^-1*e").unwrap();
        assert_eq!(r.rhs, Term::new(Coefficient::qm(0, -1), vec![]));
        let r = parse_relation(" x4 * x2=q^-1 * 3/2 *x2*x4 ").unwrap();
        assert_eq!(r.rhs.coeff.s, Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn syntax_positions() {
        assert_eq!(
            parse_relation("x3*x1 = q*"),
            Err(Error::Syntax {
                pos: 10,
                msg: "expected a factor, found end of input".into()
            })
        );
        assert!(matches!(parse_relation("x3*x1 q*x1"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(
            parse_relation("x3*x5 = e"),
            Err(Error::UnknownSymbol { pos: 3, .. })
        ));
        assert!(matches!(parse_relation("x1 = alpha*x2"), Err(Error::UnknownSymbol { pos: 5, .. })));
        assert!(matches!(parse_relation("x1 = x2 %"), Err(Error::UnknownSymbol { pos: 8, .. })));
        assert!(matches!(parse_relation("x1 = 0*x2"), Err(Error::Syntax { pos: 5, .. })));
    }

    #[test]
    fn round_trip() {
        for s in ["x3*x1 = q*x1*x3", "x1*x2 = mu^-1*e", "x4*x1 = q^-1*mu*x1*x4", "-3/2*x1 = q^2*x2*x2*x1"] {
            let r = parse_relation(s).unwrap();
            assert_eq!(r.to_string(), s);
            assert_eq!(parse_relation(&r.to_string()).unwrap(), r);
        }
    }

    #[test]
    fn polynomial_relations() {
        let r = parse_poly_relation("x1*x2 - x2*x1 = alpha*(x3*x4 + x4*x3)").unwrap();
        assert_eq!(r.lhs.len(), 2);
        assert_eq!(r.rhs.len(), 2);
        assert_eq!(r.rhs[1].params, [1, 0, 0]);
        assert_eq!(r.to_string(), "x1*x2 - x2*x1 = alpha*x3*x4 + alpha*x4*x3");
        assert!(parse_poly_relation("x1*x2 = (x3").is_err());
    }
}
