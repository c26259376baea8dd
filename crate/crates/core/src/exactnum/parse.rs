//! Text form of exact numbers: `(p + q*sqrt(d))/r`, with the usual
//! shorthands (`sqrt(5)`, `(1+sqrt(5))/2`, `-3*sqrt(-7)`, `22/7`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Number, QuadraticSurd};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(text.parse().expect("validated digits"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

#[derive(Default)]
struct Acc {
    p: BigInt,
    q: BigInt,
    d: Option<i64>,
}

fn term(c: &mut Cursor<'_>, sign: i32, acc: &mut Acc) -> Result<()> {
    let coeff = if c.keyword("sqrt") {
        None
    } else {
        Some(c.integer()?)
    };
    let is_sqrt = match coeff {
        None => true,
        Some(_) => {
            if c.eat(b'*') {
                if !c.keyword("sqrt") {
                    return Err(c.error("expected `sqrt`"));
                }
                true
            } else {
                false
            }
        }
    };
    let coeff = coeff.unwrap_or_else(|| BigInt::from(1)) * BigInt::from(sign);
    if !is_sqrt {
        acc.p += coeff;
        return Ok(());
    }
    c.expect(b'(')?;
    let at = c.pos;
    let d = c.integer()?;
    let d: i64 = d.try_into().map_err(|_| Error::Syntax {
        pos: at,
        msg: "radicand out of range".into(),
    })?;
    c.expect(b')')?;
    match acc.d {
        Some(prev) if prev != d => {
            return Err(Error::Syntax {
                pos: at,
                msg: format!("mixed radicands {prev} and {d}"),
            })
        }
        _ => acc.d = Some(d),
    }
    acc.q += coeff;
    Ok(())
}

fn sum(c: &mut Cursor<'_>, acc: &mut Acc) -> Result<()> {
    let mut sign = if c.eat(b'-') {
        -1
    } else {
        c.eat(b'+');
        1
    };
    loop {
        term(c, sign, acc)?;
        sign = match c.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => return Ok(()),
        };
        c.pos += 1;
    }
}

/// Parses the exact-number grammar used on the command line.
pub fn parse_number(text: &str) -> Result<Number> {
    let mut c = Cursor::new(text);
    let mut acc = Acc::default();
    if c.eat(b'(') {
        sum(&mut c, &mut acc)?;
        c.expect(b')')?;
    } else {
        sum(&mut c, &mut acc)?;
    }
    let mut r = BigInt::from(1);
    if c.eat(b'/') {
        let at = c.pos;
        r = c.integer()?;
        if r.is_zero() {
            return Err(Error::Syntax {
                pos: at,
                msg: "zero denominator".into(),
            });
        }
    }
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    match acc.d {
        None => QuadraticSurd::normalize(acc.p, 0, r, 2),
        Some(d) => QuadraticSurd::normalize(acc.p, acc.q, r, d),
    }
}

impl FromStr for Number {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_number(s)
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_number(s)? {
            Number::Surd(x) => Ok(x),
            Number::Rational(_) => Err(Error::domain(format!("`{s}` is rational"))),
        }
    }
}
