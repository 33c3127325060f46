//! Conjunctive normal form by textbook distribution (no auxiliary variables).

use super::{Atom, Matrix};

/// A possibly negated atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn to_matrix(&self) -> Matrix {
        let a = Matrix::Atom(self.atom.clone());
        if self.positive {
            a
        } else {
            Matrix::not(a)
        }
    }
}

/// Negation normal form with constants folded away, as nested and/or lists.
enum Nnf {
    Const(bool),
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(m: &Matrix, positive: bool) -> Nnf {
    match m {
        Matrix::Const(b) => Nnf::Const(*b == positive),
        Matrix::Atom(a) => Nnf::Lit(Literal {
            atom: a.clone(),
            positive,
        }),
        Matrix::Not(inner) => nnf(inner, !positive),
        Matrix::And(a, b) if positive => Nnf::And(vec![nnf(a, true), nnf(b, true)]),
        Matrix::And(a, b) => Nnf::Or(vec![nnf(a, false), nnf(b, false)]),
        Matrix::Or(a, b) if positive => Nnf::Or(vec![nnf(a, true), nnf(b, true)]),
        Matrix::Or(a, b) => Nnf::And(vec![nnf(a, false), nnf(b, false)]),
        Matrix::Implies(a, b) if positive => Nnf::Or(vec![nnf(a, false), nnf(b, true)]),
        Matrix::Implies(a, b) => Nnf::And(vec![nnf(a, true), nnf(b, false)]),
        // a <-> b  ==  (!a | b) & (a | !b);  !(a <-> b)  ==  (a | b) & (!a | !b)
        Matrix::Iff(a, b) if positive => Nnf::And(vec![
            Nnf::Or(vec![nnf(a, false), nnf(b, true)]),
            Nnf::Or(vec![nnf(a, true), nnf(b, false)]),
        ]),
        Matrix::Iff(a, b) => Nnf::And(vec![
            Nnf::Or(vec![nnf(a, true), nnf(b, true)]),
            Nnf::Or(vec![nnf(a, false), nnf(b, false)]),
        ]),
    }
}

/// Clauses of `n`. `vec![]` is TRUE; a clause `vec![]` is FALSE.
fn clauses(n: &Nnf) -> Vec<Vec<Literal>> {
    match n {
        Nnf::Const(true) => vec![],
        Nnf::Const(false) => vec![vec![]],
        Nnf::Lit(l) => vec![vec![l.clone()]],
        Nnf::And(parts) => parts.iter().flat_map(clauses).collect(),
        Nnf::Or(parts) => {
            let mut acc: Vec<Vec<Literal>> = vec![vec![]];
            for p in parts {
                let rhs = clauses(p);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for left in &acc {
                    for right in &rhs {
                        let mut c = left.clone();
                        c.extend(right.iter().cloned());
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

/// CNF of `m` as a list of clauses, each a list of literals in left-to-right
/// occurrence order. Repeated literals are kept, so occurrences can be
/// counted per position.
pub fn cnf_clauses(m: &Matrix) -> Vec<Vec<Literal>> {
    clauses(&nnf(m, true))
}

/// CNF of `m` as a matrix: a conjunction of disjunctions of literals.
pub fn to_cnf(m: &Matrix) -> Matrix {
    Matrix::all(
        cnf_clauses(m)
            .into_iter()
            .map(|c| Matrix::any(c.iter().map(Literal::to_matrix))),
    )
}
