//! The module expression grammar.
//!
//! ```text
//! expr  := "0" | term ("+" term)*
//! term  := ("F(" int ")" | "T(" int "," int ")" | "V(" int ")") ["[" int "]"]
//! ```
//!
//! A trailing `[s]` places the summand in cohomological degree `-s`; it is only accepted
//! where a derived object is expected.

use super::module::{GradedModule, Summand};
use crate::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { chars: src.chars().enumerate().collect(), i: 0, src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.src.chars().count(), |c| c.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.1.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.peek() == Some(ch) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected '{ch}'"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let mut neg = false;
        match self.peek() {
            Some('-') | Some('−') => {
                neg = true;
                self.i += 1;
            }
            Some('+') => self.i += 1,
            _ => {}
        }
        let start = self.i;
        while self.chars.get(self.i).is_some_and(|c| c.1.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected an integer");
        }
        let digits: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
        let v: i64 = match digits.parse() {
            Ok(v) => v,
            Err(_) => {
                self.i = start;
                return self.err("integer out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self) -> Result<(Summand, Option<i64>)> {
        let head = self.peek();
        let s = match head {
            Some('F') => {
                self.i += 1;
                self.expect('(')?;
                let d = self.int()?;
                self.expect(')')?;
                Summand::Free(d)
            }
            Some('V') => {
                self.i += 1;
                self.expect('(')?;
                let n = self.int()?;
                self.expect(')')?;
                Summand::v(n)
            }
            Some('T') => {
                self.i += 1;
                self.expect('(')?;
                let g = self.int()?;
                self.expect(',')?;
                let at = self.pos();
                let n = self.int()?;
                if n < 1 {
                    return Err(Error::Parse { pos: at, msg: "torsion length must be at least 1".into() });
                }
                self.expect(')')?;
                Summand::Torsion { g, n }
            }
            _ => return self.err("expected F(..), T(..,..) or V(..)"),
        };
        let shift = if self.peek() == Some('[') {
            self.i += 1;
            let s = self.int()?;
            self.expect(']')?;
            Some(s)
        } else {
            None
        };
        Ok((s, shift))
    }

    fn expr(&mut self) -> Result<Vec<(Summand, Option<i64>)>> {
        if self.peek() == Some('0') {
            self.i += 1;
            return match self.peek() {
                None => Ok(vec![]),
                Some(_) => self.err("unexpected input after 0"),
            };
        }
        let mut out = vec![self.term()?];
        loop {
            match self.peek() {
                None => return Ok(out),
                Some('+') | Some('⊕') => {
                    self.i += 1;
                    out.push(self.term()?);
                }
                Some(_) => return self.err("expected '+' or end of input"),
            }
        }
    }
}

/// Parse a module expression such as `F(1) + T(2,3) + V(-1)`.
pub fn module(src: &str) -> Result<GradedModule> {
    let mut c = Cursor::new(src);
    let terms = c.expr()?;
    if terms.iter().any(|t| t.1.is_some()) {
        return Err(Error::Parse { pos: 0, msg: "shift brackets are not allowed in a module".into() });
    }
    Ok(GradedModule::new(terms.into_iter().map(|t| t.0).collect()))
}

/// Parse `term[shift] + ...`; unshifted terms sit in degree 0. Returns (summand, degree).
pub fn shifted(src: &str) -> Result<Vec<(Summand, i64)>> {
    let mut c = Cursor::new(src);
    Ok(c.expr()?.into_iter().map(|(s, sh)| (s, -sh.unwrap_or(0))).collect())
}
