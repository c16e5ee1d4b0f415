//! Surface syntax for identities.
//!
//! ```text
//! identity := term '=' term
//! term     := sum
//! sum      := prod (('\' | '/') prod)*
//! prod     := atom ('*' atom)*
//! atom     := var | '(' term ')'
//! var      := [a-z][a-z0-9]*
//! ```
//!
//! `*` binds tighter than `\` and `/`; all operators are left-associative;
//! whitespace is insignificant. The printer encloses every nested operation
//! in parentheses (variables and the top level of each side stay bare), so
//! printed text parses back to the identical tree.

use crate::error::Error;
use crate::term::{BinOp, Identity, Term};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
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

    fn error(&mut self, expected: &'static str) -> Error {
        self.skip_ws();
        Error::Syntax { position: self.pos, expected }
    }

    fn term(&mut self) -> Result<Term, Error> {
        let mut acc = self.prod()?;
        while let Some(c) = self.peek() {
            let op = match c {
                b'\\' => BinOp::LDiv,
                b'/' => BinOp::RDiv,
                _ => break,
            };
            self.pos += 1;
            acc = Term::bin(op, acc, self.prod()?);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<Term, Error> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = Term::bin(BinOp::Mul, acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.term()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Term::var(name))
            }
            _ => Err(self.error("variable or '('")),
        }
    }

    fn expect_eq(&mut self) -> Result<(), Error> {
        if self.peek() != Some(b'=') {
            return Err(self.error("'='"));
        }
        self.pos += 1;
        Ok(())
    }

    fn expect_end(&mut self) -> Result<(), Error> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

pub fn parse_identity(text: &str) -> Result<Identity, Error> {
    let mut p = Parser::new(text);
    let lhs = p.term()?;
    p.expect_eq()?;
    let rhs = p.term()?;
    p.expect_end()?;
    Ok(Identity::new(lhs, rhs))
}

/// Parses a bare term (no '=').
pub fn parse_term(text: &str) -> Result<Term, Error> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    fn rec(t: &Term, top: bool, out: &mut String) {
        match t {
            Term::Var(v) => out.push_str(v),
            Term::Bin { op, lhs, rhs } => {
                if !top {
                    out.push('(');
                }
                rec(lhs, false, out);
                out.push(op.symbol());
                rec(rhs, false, out);
                if !top {
                    out.push(')');
                }
            }
        }
    }
    rec(t, true, &mut out);
    out
}

pub fn print_identity(id: &Identity) -> String {
    format!("{} = {}", print_term(id.lhs()), print_term(id.rhs()))
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_identity(self))
    }
}
