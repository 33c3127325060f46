//! Pretty printer producing text that [`parse`](super::parse) maps back to the
//! same tree.

use std::fmt;

use super::{AtomKind, Formula, Matrix};

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const ATOM: u8 = 6;

fn precedence(m: &Matrix) -> u8 {
    match m {
        Matrix::Iff(..) => IFF,
        Matrix::Implies(..) => IMPLIES,
        Matrix::Or(..) => OR,
        Matrix::And(..) => AND,
        Matrix::Not(_) => NOT,
        Matrix::Const(_) | Matrix::Atom(_) => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, m: &Matrix, min: u8) -> fmt::Result {
    if precedence(m) < min {
        write!(f, "(")?;
        write_matrix(f, m)?;
        write!(f, ")")
    } else {
        write_matrix(f, m)
    }
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &Matrix) -> fmt::Result {
    match m {
        Matrix::Const(true) => write!(f, "true"),
        Matrix::Const(false) => write!(f, "false"),
        Matrix::Atom(a) => match a.kind {
            AtomKind::Adjacency => write!(f, "{} ~ {}", a.left, a.right),
            AtomKind::Equality => write!(f, "{} = {}", a.left, a.right),
        },
        Matrix::Not(inner) => {
            write!(f, "!")?;
            // `!(u ~ v)` reads better than `!u ~ v`
            let min = if matches!(**inner, Matrix::Atom(_)) { ATOM + 1 } else { NOT };
            write_at(f, inner, min)
        }
        // left-associative operators
        Matrix::And(a, b) | Matrix::Or(a, b) | Matrix::Iff(a, b) => {
            let p = precedence(m);
            let op = match m {
                Matrix::And(..) => "&",
                Matrix::Or(..) => "|",
                _ => "<->",
            };
            write_at(f, a, p)?;
            write!(f, " {op} ")?;
            write_at(f, b, p + 1)
        }
        Matrix::Implies(a, b) => {
            write_at(f, a, IMPLIES + 1)?;
            write!(f, " -> ")?;
            write_at(f, b, IMPLIES)
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_matrix(f, self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.free.is_empty() {
            write!(f, "free ")?;
            for (i, v) in self.free.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "; ")?;
        }
        for (q, v) in &self.prefix {
            write!(f, "{} {v}. ", q.symbol())?;
        }
        write_matrix(f, &self.matrix)
    }
}
