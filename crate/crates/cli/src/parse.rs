//! Surface syntax for species expressions.
//!
//! ```text
//! sum     := product ('+' product)*
//! product := power ('*' power)*
//! power   := atom ('^' INT)*
//! atom    := '(' sum ')' | BUILTIN | Sub(INT) | RepCyclic(INT)
//!          | sym(INT, sum) | E(sum) | plus(sum) | mark(sum)
//! ```

use std::fmt;

use qspecies::{Builtin, SpeciesExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// `column` is 1-based.
    Syntax {
        column: usize,
        message: String,
    },
    Semantic(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { column, message } => {
                write!(f, "syntax error at column {column}: {message}")
            }
            ParseError::Semantic(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| ParseError::Syntax {
                column: start + 1,
                message: format!("integer {text} is too large"),
            })?;
            out.push((Tok::Int(n), start));
        } else if "+*^(),".contains(c) {
            out.push((Tok::Sym(c), start));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                column: start + 1,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err<T>(&self, message: String) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.toks[self.pos].1 + 1,
            message,
        })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.next();
                Ok(n)
            }
            other => self.err(format!("expected an integer, found {other}")),
        }
    }

    fn sum(&mut self) -> Result<SpeciesExpr, ParseError> {
        let mut e = self.product()?;
        while *self.peek() == Tok::Sym('+') {
            self.next();
            e = SpeciesExpr::sum(e, self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<SpeciesExpr, ParseError> {
        let mut e = self.power()?;
        while *self.peek() == Tok::Sym('*') {
            self.next();
            e = SpeciesExpr::product(e, self.power()?);
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<SpeciesExpr, ParseError> {
        let mut e = self.atom()?;
        while *self.peek() == Tok::Sym('^') {
            self.next();
            let n = self.int()?;
            e = SpeciesExpr::power(e, n);
        }
        Ok(e)
    }

    fn parenthesized(&mut self) -> Result<SpeciesExpr, ParseError> {
        self.expect('(')?;
        let e = self.sum()?;
        self.expect(')')?;
        Ok(e)
    }

    fn int_arg(&mut self) -> Result<usize, ParseError> {
        self.expect('(')?;
        let n = self.int()?;
        self.expect(')')?;
        Ok(n)
    }

    fn atom(&mut self) -> Result<SpeciesExpr, ParseError> {
        let name = match self.peek().clone() {
            Tok::Sym('(') => return self.parenthesized(),
            Tok::Ident(name) => name,
            other => return self.err(format!("expected an expression, found {other}")),
        };
        let b = |x: Builtin| Ok(SpeciesExpr::Builtin(x));
        let ident_pos = self.pos;
        self.next();
        match name.as_str() {
            "One" => b(Builtin::One),
            "Zero" => b(Builtin::Zero),
            "Elem" => b(Builtin::Elem),
            "Proj" => b(Builtin::Proj),
            "End" => b(Builtin::End),
            "Aut" => b(Builtin::Aut),
            "Bases" => b(Builtin::Bases),
            "V" => b(Builtin::V),
            "Vplus" => b(Builtin::Vplus),
            "Fscalar" => b(Builtin::Fscalar),
            "Fstar" => b(Builtin::Fstar),
            "Sub" => b(Builtin::Sub(self.int_arg()?)),
            "RepCyclic" => {
                let m = self.int_arg()?;
                if m == 0 {
                    return Err(ParseError::Syntax {
                        column: self.toks[ident_pos].1 + 1,
                        message: "RepCyclic(m) needs m >= 1".into(),
                    });
                }
                b(Builtin::RepCyclic(m))
            }
            "sym" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(',')?;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(SpeciesExpr::sym(e, n))
            }
            "E" => Ok(SpeciesExpr::assembly(self.parenthesized()?)),
            "plus" => Ok(SpeciesExpr::plus(self.parenthesized()?)),
            "mark" => Ok(SpeciesExpr::mark(self.parenthesized()?)),
            _ => {
                self.pos = ident_pos;
                self.err(format!("unknown species `{name}`"))
            }
        }
    }
}

/// Parse and check an expression.
pub fn parse(src: &str) -> Result<SpeciesExpr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected {}", p.peek()));
    }
    e.check()
        .map_err(|err| ParseError::Semantic(err.to_string()))?;
    Ok(e)
}
