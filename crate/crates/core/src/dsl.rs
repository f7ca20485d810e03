//! Recursive-descent parser for the ring DSL.
//!
//! ```text
//! expr    := 'Z' '(' int ')'
//!          | 'M' '(' int ',' expr ')'
//!          | 'prod' '(' expr ',' expr ')'
//!          | 'sub' '(' expr ';' literal { ',' literal } ')'
//! literal := int | '[' row { ',' row } ']' | '(' literal ',' literal ')'
//! row     := '[' int { ',' int } ']'
//! ```
//!
//! Whitespace between tokens is ignored. Errors carry the byte offset of the
//! offending token and the set of tokens that would have been accepted there.

use crate::descriptor::{Literal, RingDescriptor};
use crate::error::{Error, Result};

pub const MAX_INPUT: usize = 64 * 1024;
const MAX_DEPTH: usize = 256;

pub fn parse_ring_expr(text: &str) -> Result<RingDescriptor> {
    let mut p = Parser::new(text)?;
    let d = p.expr(0)?;
    p.end()?;
    d.check()?;
    Ok(d)
}

pub fn parse_literal(text: &str) -> Result<Literal> {
    let mut p = Parser::new(text)?;
    let lit = p.literal(0)?;
    p.end()?;
    Ok(lit)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self> {
        if text.len() > MAX_INPUT {
            return Err(Error::InvalidDescriptor(format!(
                "input is {} bytes, limit is {MAX_INPUT}",
                text.len()
            )));
        }
        Ok(Parser {
            src: text.as_bytes(),
            pos: 0,
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, tok: u8) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: u8) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            let s = (tok as char).to_string();
            self.fail(&[s.as_str()])
        }
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.fail(&["end of input"]),
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(&["integer"]);
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Parse {
            offset: start,
            expected: vec!["integer below 2^64".into()],
        })
    }

    fn keyword(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_alphabetic() {
            end += 1;
        }
        let word = std::str::from_utf8(&self.src[start..end]).ok()?;
        match word {
            "Z" | "M" | "prod" | "sub" => {
                self.pos = end;
                Some(word)
            }
            _ => None,
        }
    }

    fn expr(&mut self, depth: usize) -> Result<RingDescriptor> {
        if depth > MAX_DEPTH {
            return self.fail(&["shallower nesting"]);
        }
        let Some(word) = self.keyword() else {
            return self.fail(&["Z", "M", "prod", "sub"]);
        };
        self.expect(b'(')?;
        let d = match word {
            "Z" => RingDescriptor::cyclic(self.int()?),
            "M" => {
                let n = self.int()?;
                self.expect(b',')?;
                let base = self.expr(depth + 1)?;
                RingDescriptor::Matrix {
                    n,
                    base: Box::new(base),
                }
            }
            "prod" => {
                let left = self.expr(depth + 1)?;
                self.expect(b',')?;
                let right = self.expr(depth + 1)?;
                RingDescriptor::product(left, right)
            }
            "sub" => {
                let parent = self.expr(depth + 1)?;
                self.expect(b';')?;
                let mut generators = vec![self.literal(depth + 1)?];
                while self.eat(b',') {
                    generators.push(self.literal(depth + 1)?);
                }
                RingDescriptor::subring(parent, generators)
            }
            _ => unreachable!(),
        };
        self.expect(b')')?;
        Ok(d)
    }

    fn literal(&mut self, depth: usize) -> Result<Literal> {
        if depth > MAX_DEPTH {
            return self.fail(&["shallower nesting"]);
        }
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut rows = vec![self.row()?];
                while self.eat(b',') {
                    rows.push(self.row()?);
                }
                self.expect(b']')?;
                Ok(Literal::Matrix(rows))
            }
            Some(b'(') => {
                self.pos += 1;
                let left = self.literal(depth + 1)?;
                self.expect(b',')?;
                let right = self.literal(depth + 1)?;
                self.expect(b')')?;
                Ok(Literal::pair(left, right))
            }
            Some(c) if c.is_ascii_digit() => Ok(Literal::Int(self.int()?)),
            _ => self.fail(&["integer", "[", "("]),
        }
    }

    fn row(&mut self) -> Result<Vec<u64>> {
        self.expect(b'[')?;
        let mut row = vec![self.int()?];
        while self.eat(b',') {
            row.push(self.int()?);
        }
        self.expect(b']')?;
        Ok(row)
    }
}
