use std::str::FromStr;

use num_bigint::BigInt;

use super::ContinuedFraction;
use crate::error::{Error, Result};

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, t: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(t.as_bytes()) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn int(&mut self, signed: bool) -> Result<String> {
        self.ws();
        let start = self.pos;
        if signed && matches!(self.s.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn term(&mut self) -> Result<u64> {
        let at = self.pos;
        let t = self.int(false)?;
        t.parse().map_err(|_| Error::Syntax {
            pos: at,
            msg: "partial quotient out of range".into(),
        })
    }

    fn list(&mut self, close: u8) -> Result<Vec<u64>> {
        let mut out = vec![self.term()?];
        while self.eat(b',') {
            out.push(self.term()?);
        }
        if !self.eat(close) {
            return Err(self.err(&format!("expected `{}`", close as char)));
        }
        Ok(out)
    }
}

/// Parses `[a0; p1,...,pk, (q1,...,qm)]`. Also accepts `[a0]` and the TeX
/// form `[a0,p1,...,\overline{q1,...,qm}]`.
pub(crate) fn parse_cf(text: &str) -> Result<ContinuedFraction> {
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
    };
    if !lx.eat(b'[') {
        return Err(lx.err("expected `[`"));
    }
    let head: BigInt = lx.int(true)?.parse().expect("validated digits");
    let mut pre = Vec::new();
    let mut period = Vec::new();
    let mut expect_item = lx.eat(b';') || lx.eat(b',');
    while expect_item {
        if lx.eat(b'(') {
            period = lx.list(b')')?;
            break;
        }
        if lx.eat_str("\\overline{") {
            period = lx.list(b'}')?;
            break;
        }
        if lx.peek() == Some(b']') {
            break;
        }
        pre.push(lx.term()?);
        expect_item = lx.eat(b',');
    }
    if !lx.eat(b']') {
        return Err(lx.err("expected `]`"));
    }
    if lx.peek().is_some() {
        return Err(lx.err("unexpected trailing input"));
    }
    ContinuedFraction::new(head, pre, period)
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_cf(s)
    }
}
