//! Recursive-descent parser for the formula text format.
//!
//! ```text
//! formula  := [ "free" ident ("," ident)* ";" ] quant* iff EOF
//! quant    := ("A" | "E") ident "."
//! iff      := imp ("<->" imp)*          left associative
//! imp      := or ["->" imp]             right associative
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := "!" unary | primary
//! primary  := "(" iff ")" | "true" | "false" | ident ("~" | "=") ident
//! ident    := [a-z_][A-Za-z0-9_]*       except free, true, false
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use super::{Formula, FormulaError, Matrix, Quantifier, Variable};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Forall,
    Exists,
    Free,
    True,
    False,
    Ident(String),
    Dot,
    Comma,
    Semi,
    Tilde,
    Equals,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Forall => "`A`".into(),
            Tok::Exists => "`E`".into(),
            Tok::Free => "`free`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, FormulaError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let mut push = |tok: Tok, width: usize, i: &mut usize, column: &mut usize| {
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '.' => push(Tok::Dot, 1, &mut i, &mut column),
            ',' => push(Tok::Comma, 1, &mut i, &mut column),
            ';' => push(Tok::Semi, 1, &mut i, &mut column),
            '~' => push(Tok::Tilde, 1, &mut i, &mut column),
            '=' => push(Tok::Equals, 1, &mut i, &mut column),
            '!' => push(Tok::Not, 1, &mut i, &mut column),
            '&' => push(Tok::And, 1, &mut i, &mut column),
            '|' => push(Tok::Or, 1, &mut i, &mut column),
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Implies, 2, &mut i, &mut column),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(Tok::Iff, 3, &mut i, &mut column)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                column += i - start;
                let tok = match word.as_str() {
                    "A" => Tok::Forall,
                    "E" => Tok::Exists,
                    "free" => Tok::Free,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    w if w.starts_with(|c: char| c.is_ascii_lowercase() || c == '_') => {
                        Tok::Ident(word)
                    }
                    _ => {
                        return Err(syntax(
                            l,
                            col,
                            format!("identifiers must start with a lowercase letter or `_`, found `{word}`"),
                        ))
                    }
                };
                out.push(Spanned {
                    tok,
                    line: l,
                    column: col,
                });
            }
            other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> FormulaError {
        let t = &self.toks[self.pos];
        syntax(
            t.line,
            t.column,
            format!("expected {expected}, found {}", t.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FormulaError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<Variable, FormulaError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Variable::new(name))
            }
            _ => Err(self.error_here("a variable")),
        }
    }

    fn formula(&mut self) -> Result<Formula, FormulaError> {
        let mut free = Vec::new();
        if *self.peek() == Tok::Free {
            self.bump();
            free.push(self.ident()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                free.push(self.ident()?);
            }
            self.expect(Tok::Semi)?;
        }
        let mut prefix = Vec::new();
        loop {
            let q = match self.peek() {
                Tok::Forall => Quantifier::Forall,
                Tok::Exists => Quantifier::Exists,
                _ => break,
            };
            self.bump();
            let v = self.ident()?;
            self.expect(Tok::Dot)?;
            prefix.push((q, v));
        }
        let matrix = self.iff()?;
        if *self.peek() != Tok::Eof {
            return Err(self.error_here("a connective or end of input"));
        }
        Formula::new(prefix, free, matrix)
    }

    fn iff(&mut self) -> Result<Matrix, FormulaError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implies()?;
            lhs = Matrix::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Matrix, FormulaError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Matrix::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Matrix, FormulaError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Matrix::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Matrix, FormulaError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Matrix::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Matrix, FormulaError> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Matrix::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Matrix, FormulaError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let m = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(m)
            }
            Tok::True => {
                self.bump();
                Ok(Matrix::Const(true))
            }
            Tok::False => {
                self.bump();
                Ok(Matrix::Const(false))
            }
            Tok::Ident(_) => {
                let left = self.ident()?;
                let m = match self.peek() {
                    Tok::Tilde => {
                        self.bump();
                        Matrix::adj(left, self.ident()?)
                    }
                    Tok::Equals => {
                        self.bump();
                        Matrix::eq(left, self.ident()?)
                    }
                    _ => return Err(self.error_here("`~` or `=`")),
                };
                Ok(m)
            }
            Tok::Forall | Tok::Exists => Err(self.error_here(
                "an atom (quantifiers are only allowed in the leading prefix)",
            )),
            _ => Err(self.error_here("an atom, `!`, `(`, `true` or `false`")),
        }
    }
}

/// Parses the formula text format.
pub fn parse(text: &str) -> Result<Formula, FormulaError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.formula()
}
