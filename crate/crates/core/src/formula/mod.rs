//! Prenex first-order formulas over the graph vocabulary `{~, =}`.
//!
//! A [`Formula`] is a quantifier prefix, a list of free variables and a
//! quantifier-free [`Matrix`]. Construction goes through [`Formula::new`] (or
//! [`parse`]), which enforces the scoping invariants, so every `Formula` value
//! in the program is well scoped.

mod classify;
mod cnf;
mod parse;
mod print;
mod vertex;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use classify::{classify, PrefixClass, Side};
pub use cnf::{cnf_clauses, to_cnf, Literal};
pub use parse::parse;
pub use vertex::{build_vertex_formula, VertexFormula};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("variable `{0}` is quantified more than once")]
    Requantified(String),
    #[error("variable `{0}` is declared free more than once")]
    DuplicateFree(String),
    #[error("variable `{0}` is both free and quantified")]
    FreeAndBound(String),
    #[error("variable `{0}` is neither quantified nor declared free")]
    Undeclared(String),
    #[error("cannot open {requested} quantifiers of a prefix of length {available}")]
    OpenTooFar { requested: usize, available: usize },
    #[error("formula has free variables ({0}); a sentence is required")]
    NotSentence(String),
    #[error("the prefix contains no universal quantifier")]
    NotForallContaining,
}

/// A vertex variable, identified by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Variable(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Variable {
    fn from(s: &str) -> Self {
        Variable::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn symbol(self) -> char {
        match self {
            Quantifier::Forall => 'A',
            Quantifier::Exists => 'E',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Adjacency,
    Equality,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub kind: AtomKind,
    pub left: Variable,
    pub right: Variable,
}

impl Atom {
    pub fn adj(left: impl Into<Variable>, right: impl Into<Variable>) -> Self {
        Atom {
            kind: AtomKind::Adjacency,
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn eq(left: impl Into<Variable>, right: impl Into<Variable>) -> Self {
        Atom {
            kind: AtomKind::Equality,
            left: left.into(),
            right: right.into(),
        }
    }
}

impl From<&Variable> for Variable {
    fn from(v: &Variable) -> Self {
        v.clone()
    }
}

/// Quantifier-free part of a formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Matrix {
    Const(bool),
    Atom(Atom),
    Not(Box<Matrix>),
    And(Box<Matrix>, Box<Matrix>),
    Or(Box<Matrix>, Box<Matrix>),
    Implies(Box<Matrix>, Box<Matrix>),
    Iff(Box<Matrix>, Box<Matrix>),
}

impl Matrix {
    pub fn atom(a: Atom) -> Self {
        Matrix::Atom(a)
    }

    pub fn adj(a: impl Into<Variable>, b: impl Into<Variable>) -> Self {
        Matrix::Atom(Atom::adj(a, b))
    }

    pub fn eq(a: impl Into<Variable>, b: impl Into<Variable>) -> Self {
        Matrix::Atom(Atom::eq(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(m: Matrix) -> Self {
        Matrix::Not(Box::new(m))
    }

    pub fn and(a: Matrix, b: Matrix) -> Self {
        Matrix::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Matrix, b: Matrix) -> Self {
        Matrix::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Matrix, b: Matrix) -> Self {
        Matrix::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Matrix, b: Matrix) -> Self {
        Matrix::Iff(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `TRUE` for an empty iterator.
    pub fn all(items: impl IntoIterator<Item = Matrix>) -> Self {
        items
            .into_iter()
            .reduce(Matrix::and)
            .unwrap_or(Matrix::Const(true))
    }

    /// Left-nested disjunction; `FALSE` for an empty iterator.
    pub fn any(items: impl IntoIterator<Item = Matrix>) -> Self {
        items
            .into_iter()
            .reduce(Matrix::or)
            .unwrap_or(Matrix::Const(false))
    }

    /// Visits every atom, left to right.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Matrix::Const(_) => {}
            Matrix::Atom(a) => f(a),
            Matrix::Not(m) => m.for_each_atom(f),
            Matrix::And(a, b) | Matrix::Or(a, b) | Matrix::Implies(a, b) | Matrix::Iff(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
            }
        }
    }

    /// Rebuilds the matrix with every atom replaced by `f(atom)`.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Matrix) -> Matrix {
        match self {
            Matrix::Const(b) => Matrix::Const(*b),
            Matrix::Atom(a) => f(a),
            Matrix::Not(m) => Matrix::not(m.map_atoms(f)),
            Matrix::And(a, b) => Matrix::and(a.map_atoms(f), b.map_atoms(f)),
            Matrix::Or(a, b) => Matrix::or(a.map_atoms(f), b.map_atoms(f)),
            Matrix::Implies(a, b) => Matrix::implies(a.map_atoms(f), b.map_atoms(f)),
            Matrix::Iff(a, b) => Matrix::iff(a.map_atoms(f), b.map_atoms(f)),
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |a| {
            out.insert(a.left.clone());
            out.insert(a.right.clone());
        });
        out
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        match self {
            Matrix::Const(_) | Matrix::Atom(_) => 1,
            Matrix::Not(m) => 1 + m.size(),
            Matrix::And(a, b) | Matrix::Or(a, b) | Matrix::Implies(a, b) | Matrix::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Truth value under an assignment of truth values to atoms.
    pub fn eval_atoms(&self, value: &mut impl FnMut(&Atom) -> bool) -> bool {
        match self {
            Matrix::Const(b) => *b,
            Matrix::Atom(a) => value(a),
            Matrix::Not(m) => !m.eval_atoms(value),
            Matrix::And(a, b) => a.eval_atoms(value) && b.eval_atoms(value),
            Matrix::Or(a, b) => a.eval_atoms(value) || b.eval_atoms(value),
            Matrix::Implies(a, b) => !a.eval_atoms(value) || b.eval_atoms(value),
            Matrix::Iff(a, b) => a.eval_atoms(value) == b.eval_atoms(value),
        }
    }
}

/// A prenex formula `Q1 x1 ... Qt xt . matrix` with optional free variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    prefix: Vec<(Quantifier, Variable)>,
    free: Vec<Variable>,
    matrix: Matrix,
}

impl Formula {
    /// Checks the scoping invariants: no variable quantified twice, free and
    /// bound variables disjoint, every matrix variable declared.
    pub fn new(
        prefix: Vec<(Quantifier, Variable)>,
        free: Vec<Variable>,
        matrix: Matrix,
    ) -> Result<Self, FormulaError> {
        let mut bound = BTreeSet::new();
        for (_, v) in &prefix {
            if !bound.insert(v.clone()) {
                return Err(FormulaError::Requantified(v.0.clone()));
            }
        }
        let mut declared = BTreeSet::new();
        for v in &free {
            if bound.contains(v) {
                return Err(FormulaError::FreeAndBound(v.0.clone()));
            }
            if !declared.insert(v.clone()) {
                return Err(FormulaError::DuplicateFree(v.0.clone()));
            }
        }
        for v in matrix.variables() {
            if !bound.contains(&v) && !declared.contains(&v) {
                return Err(FormulaError::Undeclared(v.0));
            }
        }
        Ok(Formula {
            prefix,
            free,
            matrix,
        })
    }

    /// A sentence with the given prefix.
    pub fn sentence(prefix: Vec<(Quantifier, Variable)>, matrix: Matrix) -> Result<Self, FormulaError> {
        Formula::new(prefix, Vec::new(), matrix)
    }

    pub fn prefix(&self) -> &[(Quantifier, Variable)] {
        &self.prefix
    }

    pub fn free_vars(&self) -> &[Variable] {
        &self.free
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_sentence(&self) -> bool {
        self.free.is_empty()
    }

    pub fn quantified_count(&self) -> usize {
        self.prefix.len()
    }

    /// Number of distinct variables, free and quantified.
    pub fn variable_count(&self) -> usize {
        self.prefix.len() + self.free.len()
    }

    /// Prefix as a string over `{A, E}`, e.g. `"AAE"`.
    pub fn quantifier_string(&self) -> String {
        self.prefix.iter().map(|(q, _)| q.symbol()).collect()
    }

    /// True if some quantifier of the prefix is universal.
    pub fn is_forall_containing(&self) -> bool {
        self.prefix.iter().any(|(q, _)| *q == Quantifier::Forall)
    }

    /// Maximal runs of equal quantifiers, in prefix order.
    pub fn blocks(&self) -> Vec<(Quantifier, usize)> {
        let mut out: Vec<(Quantifier, usize)> = Vec::new();
        for (q, _) in &self.prefix {
            match out.last_mut() {
                Some((last, n)) if last == q => *n += 1,
                _ => out.push((*q, 1)),
            }
        }
        out
    }

    /// Block lengths `(r, s, t)` when the prefix reads `E^r A^s E^t`.
    pub fn split_eae(&self) -> Option<(usize, usize, usize)> {
        let qs: Vec<Quantifier> = self.prefix.iter().map(|(q, _)| *q).collect();
        let r = qs.iter().take_while(|q| **q == Quantifier::Exists).count();
        let s = qs[r..].iter().take_while(|q| **q == Quantifier::Forall).count();
        let t = qs[r + s..].iter().take_while(|q| **q == Quantifier::Exists).count();
        (r + s + t == qs.len()).then_some((r, s, t))
    }

    /// Block lengths `(r, s)` when the prefix reads `E^r A^s`.
    pub fn split_ea(&self) -> Option<(usize, usize)> {
        match self.split_eae()? {
            (r, s, 0) => Some((r, s)),
            _ => None,
        }
    }

    pub(crate) fn require_sentence(&self) -> Result<(), FormulaError> {
        if self.is_sentence() {
            Ok(())
        } else {
            let names: Vec<&str> = self.free.iter().map(|v| v.name()).collect();
            Err(FormulaError::NotSentence(names.join(", ")))
        }
    }

    /// Variables in evaluation order: free variables first, then the prefix.
    pub fn ordered_variables(&self) -> Vec<Variable> {
        self.free
            .iter()
            .cloned()
            .chain(self.prefix.iter().map(|(_, v)| v.clone()))
            .collect()
    }
}

/// Removes the first `r` quantifiers; their variables become free, appended
/// to the existing free variables in prefix order.
pub fn open(f: &Formula, r: usize) -> Result<Formula, FormulaError> {
    if r > f.prefix.len() {
        return Err(FormulaError::OpenTooFar {
            requested: r,
            available: f.prefix.len(),
        });
    }
    let mut free = f.free.clone();
    free.extend(f.prefix[..r].iter().map(|(_, v)| v.clone()));
    Ok(Formula {
        prefix: f.prefix[r..].to_vec(),
        free,
        matrix: f.matrix.clone(),
    })
}

/// Replaces each `a ~ b` by `!(a = b) & !(a ~ b)`. A graph `G` models `f`
/// exactly when the complement of `G` models the result.
pub fn complement_formula(f: &Formula) -> Formula {
    let matrix = f.matrix.map_atoms(&mut |a| match a.kind {
        AtomKind::Adjacency => Matrix::and(
            Matrix::not(Matrix::eq(&a.left, &a.right)),
            Matrix::not(Matrix::Atom(a.clone())),
        ),
        AtomKind::Equality => Matrix::Atom(a.clone()),
    });
    Formula {
        prefix: f.prefix.clone(),
        free: f.free.clone(),
        matrix,
    }
}

/// Returns a variable name not in `taken`, starting from `base` and appending
/// `_` until it is unused. The chosen name is added to `taken`.
pub(crate) fn fresh_variable(base: &str, taken: &mut BTreeSet<String>) -> Variable {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    taken.insert(name.clone());
    Variable(name)
}
