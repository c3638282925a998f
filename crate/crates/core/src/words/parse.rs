//! Recursive-descent parser for the word grammar:
//!
//! ```text
//! word      := term (('*')? term)*
//! term      := atom ('^' int)?
//! atom      := generator | '(' word ')' | '[' word ',' word ']' | '1'
//! generator := 'g' posint
//! ```
//!
//! Whitespace is ignored. `1` is the identity word.

use super::{Gen, Word};
use crate::error::{Error, Result};

pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
    };
    let w = p.word()?;
    p.skip_ws();
    if let Some((at, c)) = p.peek_raw() {
        return Err(err(at, format!("unexpected character {c:?}")));
    }
    Ok(w)
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_raw(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).copied()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw().map(|(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(err(
                self.offset(),
                format!("expected {want:?}, found {c:?}"),
            )),
            None => Err(err(
                self.offset(),
                format!("expected {want:?}, found end of input"),
            )),
        }
    }

    fn starts_atom(c: char) -> bool {
        matches!(c, 'g' | '(' | '[' | '1')
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.term()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let t = self.term()?;
                    w = w.multiply(&t);
                }
                Some(c) if Self::starts_atom(c) => {
                    let t = self.term()?;
                    w = w.multiply(&t);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.int()?;
            return base.pow(n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word> {
        let at = self.offset();
        match self.peek() {
            Some('g') => {
                self.pos += 1;
                let idx = self.digits()?;
                let idx: Gen = idx
                    .try_into()
                    .map_err(|_| err(at, "generator index too large"))?;
                if idx == 0 {
                    return Err(Error::ZeroGenerator);
                }
                Ok(Word::generator(idx))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) => Err(err(
                at,
                format!("expected a generator, '(', '[' or '1', found {c:?}"),
            )),
            None => Err(err(at, "unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let at = self.offset();
        let v = self.digits()?;
        let v: i64 = v.try_into().map_err(|_| err(at, "exponent too large"))?;
        Ok(if negative { -v } else { v })
    }

    // Digits must follow immediately; no whitespace inside a number.
    fn digits(&mut self) -> Result<u64> {
        let at = self.offset();
        let mut value: u64 = 0;
        let mut any = false;
        while let Some((_, c)) = self.peek_raw() {
            let Some(d) = c.to_digit(10) else { break };
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| err(at, "number too large"))?;
            any = true;
            self.pos += 1;
        }
        if !any {
            return Err(err(at, "expected a number"));
        }
        Ok(value)
    }
}
