//! Recursive-descent parser for the presentation grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! `zeta` names the primitive root of a cyclotomic field; other identifiers
//! are generators or entries of the scalar environment.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::NcPoly;
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if start >= bytes.len() {
            return Ok((start, Tok::End));
        }
        let c = bytes[start] as char;
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let v: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Tok::Int(v)));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.src[start..self.pos].to_string())));
        }
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok((start, Tok::Sym(c)));
        }
        Err(Error::Parse { column: start + 1, message: format!("unexpected character '{c}'") })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    col: usize,
    field: &'a Field,
    names: &'a [String],
    env: &'a BTreeMap<String, Scalar>,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (col, tok) = self.lex.next()?;
        self.col = col + 1;
        self.tok = tok;
        Ok(())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column: self.col, message: message.into() })
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Sym('+') => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.tok {
                Tok::Sym('*') => {
                    self.bump()?;
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    self.bump()?;
                    let col = self.col;
                    let d = self.unary()?;
                    let c = as_constant(&d)
                        .ok_or(Error::Parse { column: col, message: "division by a non-scalar".into() })?;
                    let inv = c.inv().map_err(|_| Error::Parse { column: col, message: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NcPoly> {
        if self.tok == Tok::Sym('-') {
            self.bump()?;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<NcPoly> {
        let base = self.atom()?;
        if self.tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump()?;
        let neg = if self.tok == Tok::Sym('-') {
            self.bump()?;
            true
        } else {
            false
        };
        let Tok::Int(e) = self.tok.clone() else {
            return self.err("expected integer exponent");
        };
        let e: u32 = match u32::try_from(&e) {
            Ok(v) if v <= 10_000 => v,
            _ => return self.err("exponent too large"),
        };
        let col = self.col;
        self.bump()?;
        if neg {
            let c = as_constant(&base)
                .ok_or(Error::Parse { column: col, message: "negative power of a non-scalar".into() })?;
            let inv = c.inv().map_err(|_| Error::Parse { column: col, message: "division by zero".into() })?;
            return Ok(NcPoly::constant(inv.pow(e as u64)));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<NcPoly> {
        match self.tok.clone() {
            Tok::Int(v) => {
                self.bump()?;
                Ok(NcPoly::constant(self.field.from_bigint(&v)))
            }
            Tok::Ident(name) => {
                let col = self.col;
                self.bump()?;
                if let Some(i) = self.names.iter().position(|n| *n == name) {
                    return Ok(NcPoly::var(self.field, i as u32));
                }
                if let Some(s) = self.env.get(&name) {
                    return Ok(NcPoly::constant(s.clone()));
                }
                if name == "zeta" {
                    let z = self
                        .field
                        .zeta()
                        .map_err(|e| Error::Parse { column: col, message: e.to_string() })?;
                    return Ok(NcPoly::constant(z));
                }
                Err(Error::Parse { column: col, message: format!("unknown name '{name}'") })
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.expr()?;
                if self.tok != Tok::Sym(')') {
                    return self.err("expected ')'");
                }
                self.bump()?;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Sym(c) => self.err(format!("unexpected '{c}'")),
        }
    }
}

fn as_constant(p: &NcPoly) -> Option<Scalar> {
    if p.terms().all(|(w, _)| w.is_empty()) {
        Some(p.constant_term())
    } else {
        None
    }
}

/// Parses `text` into a polynomial over the named generators.
pub fn parse_poly(text: &str, field: &Field, names: &[String], env: &BTreeMap<String, Scalar>) -> Result<NcPoly> {
    let mut p = Parser { lex: Lexer { src: text, pos: 0 }, tok: Tok::End, col: 1, field, names, env };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a scalar literal: integers, fractions, `zeta^k` and arithmetic on them.
pub fn parse_scalar(text: &str, field: &Field, env: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    let p = parse_poly(text, field, &[], env)?;
    as_constant(&p).ok_or(Error::Parse { column: 1, message: "expected a scalar".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn scalars() {
        let q4 = Field::cyclotomic(4).unwrap();
        let env = BTreeMap::new();
        assert_eq!(parse_scalar("zeta^2", &q4, &env).unwrap(), q4.from_int(-1));
        assert_eq!(parse_scalar("zeta^-1", &q4, &env).unwrap(), -q4.zeta().unwrap());
        assert_eq!(parse_scalar("3/6", &q4, &env).unwrap(), q4.from_ratio(1, 2).unwrap());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(parse_scalar("1/2", &f5, &env).unwrap(), f5.from_int(3));
        assert!(parse_scalar("zeta", &f5, &env).is_err());
    }

    #[test]
    fn errors_carry_columns() {
        let q = Field::rationals();
        let names = vec!["x".to_string()];
        let env = BTreeMap::new();
        assert_eq!(
            parse_poly("x + w", &q, &names, &env),
            Err(Error::Parse { column: 5, message: "unknown name 'w'".into() })
        );
        assert!(matches!(parse_poly("x / x", &q, &names, &env), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_poly("(x", &q, &names, &env), Err(Error::Parse { .. })));
    }
}
