//! Evaluation of formulas on graphs.
//!
//! The matrix is compiled once into negation normal form over variable
//! indices (free variables first, then the prefix). Evaluation expands the
//! prefix over vertex domains with two refinements that keep the cost within
//! the `n^q` budget of plain expansion:
//!
//! * the matrix is evaluated three-valued under partial assignments, so a
//!   branch stops as soon as its value is fixed;
//! * quantifiers are pushed inwards: once the undecided part of a conjunction
//!   (disjunction) falls apart into pieces with disjoint unassigned variables,
//!   each piece is evaluated on its own, and a variable is only expanded when
//!   it occurs in the piece at hand.
//!
//! Both rewrites rely on nonempty domains. When some domain has fewer than two
//! vertices the evaluator falls back to expanding the prefix in order.
//!
//! `evaluations` counts the leaves of the expansion, i.e. the points where the
//! value of a subformula was read off the matrix. It never exceeds the product
//! of the domain sizes of the quantified variables.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{AtomKind, Formula, Matrix, Quantifier, Variable};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("assignment has {found} vertices but the formula has {expected} free variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("vertex {vertex} is not in the graph (n = {n})")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("formula has {0} variables; at most 128 are supported")]
    TooManyVariables(usize),
    #[error("variable `{0}` is not quantified in the prefix")]
    NotInPrefix(String),
    #[error("the prefix after the opened variables does not start with a universal block")]
    NoUniversalBlock,
}

/// Restricts some prefix variables to a subset of the vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DomainRestriction {
    domains: BTreeMap<Variable, VertexSet>,
}

impl DomainRestriction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn restrict(mut self, var: impl Into<Variable>, domain: VertexSet) -> Self {
        self.domains.insert(var.into(), domain);
        self
    }

    /// Every prefix variable of `f` ranges over `domain`.
    pub fn all(f: &Formula, domain: &VertexSet) -> Self {
        let domains = f
            .prefix()
            .iter()
            .map(|(_, v)| (v.clone(), domain.clone()))
            .collect();
        DomainRestriction { domains }
    }

    pub fn get(&self, var: &Variable) -> Option<&VertexSet> {
        self.domains.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    And,
    Or,
}

impl Kind {
    /// Value that decides the junction on its own.
    fn dominant(self) -> bool {
        self == Kind::Or
    }
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Adj { a: usize, b: usize, positive: bool },
    Eq { a: usize, b: usize, positive: bool },
    Junction(Kind, Vec<usize>),
}

#[derive(Debug, Clone)]
struct Compiled {
    nodes: Vec<Node>,
    masks: Vec<u128>,
    root: usize,
    free: usize,
    /// Quantifier of each variable index; `None` for free variables.
    quantifiers: Vec<Option<Quantifier>>,
    /// Variable indices of the prefix, in order.
    prefix: Vec<usize>,
}

struct Compiler<'a> {
    index: BTreeMap<&'a Variable, usize>,
    nodes: Vec<Node>,
    masks: Vec<u128>,
}

impl<'a> Compiler<'a> {
    fn push(&mut self, node: Node) -> usize {
        let mask = match &node {
            Node::Const(_) => 0,
            Node::Adj { a, b, .. } | Node::Eq { a, b, .. } => 1u128 << a | 1u128 << b,
            Node::Junction(_, children) => children.iter().fold(0, |m, &c| m | self.masks[c]),
        };
        self.nodes.push(node);
        self.masks.push(mask);
        self.nodes.len() - 1
    }

    fn junction(&mut self, kind: Kind, parts: Vec<usize>) -> usize {
        let mut children = Vec::new();
        for p in parts {
            match &self.nodes[p] {
                Node::Const(b) if *b == kind.dominant() => return self.push(Node::Const(*b)),
                Node::Const(_) => {}
                Node::Junction(k, inner) if *k == kind => children.extend(inner.iter().copied()),
                _ => children.push(p),
            }
        }
        match children.len() {
            0 => self.push(Node::Const(!kind.dominant())),
            1 => children[0],
            _ => self.push(Node::Junction(kind, children)),
        }
    }

    fn nnf(&mut self, m: &'a Matrix, positive: bool) -> usize {
        let (and, or) = if positive {
            (Kind::And, Kind::Or)
        } else {
            (Kind::Or, Kind::And)
        };
        match m {
            Matrix::Const(b) => self.push(Node::Const(*b == positive)),
            Matrix::Atom(atom) => {
                let (a, b) = (self.index[&atom.left], self.index[&atom.right]);
                match atom.kind {
                    AtomKind::Equality if a == b => self.push(Node::Const(positive)),
                    AtomKind::Adjacency if a == b => self.push(Node::Const(!positive)),
                    AtomKind::Equality => self.push(Node::Eq { a, b, positive }),
                    AtomKind::Adjacency => self.push(Node::Adj { a, b, positive }),
                }
            }
            Matrix::Not(inner) => self.nnf(inner, !positive),
            Matrix::And(l, r) => {
                let parts = vec![self.nnf(l, positive), self.nnf(r, positive)];
                self.junction(and, parts)
            }
            Matrix::Or(l, r) => {
                let parts = vec![self.nnf(l, positive), self.nnf(r, positive)];
                self.junction(or, parts)
            }
            Matrix::Implies(l, r) => {
                let parts = vec![self.nnf(l, !positive), self.nnf(r, positive)];
                self.junction(or, parts)
            }
            Matrix::Iff(l, r) => {
                // (l & r) | (!l & !r), negated: (l | r) & (!l | !r)
                let (lp, rp) = (self.nnf(l, true), self.nnf(r, true));
                let (ln, rn) = (self.nnf(l, false), self.nnf(r, false));
                if positive {
                    let both = self.junction(Kind::And, vec![lp, rp]);
                    let neither = self.junction(Kind::And, vec![ln, rn]);
                    self.junction(Kind::Or, vec![both, neither])
                } else {
                    let some = self.junction(Kind::Or, vec![lp, rp]);
                    let not_all = self.junction(Kind::Or, vec![ln, rn]);
                    self.junction(Kind::And, vec![some, not_all])
                }
            }
        }
    }
}

fn compile(f: &Formula) -> Result<Compiled, EvalError> {
    let vars = f.ordered_variables();
    if vars.len() > 128 {
        return Err(EvalError::TooManyVariables(vars.len()));
    }
    let free = f.free_vars().len();
    let mut compiler = Compiler {
        index: BTreeMap::new(),
        nodes: Vec::new(),
        masks: Vec::new(),
    };
    for (i, v) in f.free_vars().iter().enumerate() {
        compiler.index.insert(v, i);
    }
    for (i, (_, v)) in f.prefix().iter().enumerate() {
        compiler.index.insert(v, free + i);
    }
    let root = compiler.nnf(f.matrix(), true);
    let mut quantifiers = vec![None; free];
    quantifiers.extend(f.prefix().iter().map(|(q, _)| Some(*q)));
    Ok(Compiled {
        nodes: compiler.nodes,
        masks: compiler.masks,
        root,
        free,
        quantifiers,
        prefix: (free..vars.len()).collect(),
    })
}

const UNASSIGNED: u32 = u32::MAX;

/// One evaluation: a graph, per-variable domains and a partial assignment.
struct Eval<'a> {
    g: &'a Graph,
    c: &'a Compiled,
    domains: Vec<Vec<u32>>,
    values: Vec<u32>,
    unassigned: u128,
    leaves: u64,
}

impl<'a> Eval<'a> {
    fn assign(&mut self, var: usize, vertex: u32) {
        self.values[var] = vertex;
        self.unassigned &= !(1u128 << var);
    }

    fn unassign(&mut self, var: usize) {
        self.values[var] = UNASSIGNED;
        self.unassigned |= 1u128 << var;
    }

    /// Kleene value of a node; `None` if it depends on unassigned variables.
    fn value(&self, id: usize) -> Option<bool> {
        match &self.c.nodes[id] {
            Node::Const(b) => Some(*b),
            Node::Adj { a, b, positive } => {
                let (x, y) = (self.values[*a], self.values[*b]);
                if x == UNASSIGNED || y == UNASSIGNED {
                    None
                } else {
                    Some(self.g.has_edge(x as usize, y as usize) == *positive)
                }
            }
            Node::Eq { a, b, positive } => {
                let (x, y) = (self.values[*a], self.values[*b]);
                if x == UNASSIGNED || y == UNASSIGNED {
                    None
                } else {
                    Some((x == y) == *positive)
                }
            }
            Node::Junction(kind, children) => {
                let mut open = false;
                for &ch in children {
                    match self.value(ch) {
                        Some(v) if v == kind.dominant() => return Some(v),
                        Some(_) => {}
                        None => open = true,
                    }
                }
                if open {
                    None
                } else {
                    Some(!kind.dominant())
                }
            }
        }
    }

    /// True if every unassigned variable has at least two candidate vertices.
    fn wide_domains(&self) -> bool {
        (0..self.values.len())
            .filter(|&v| self.unassigned >> v & 1 == 1)
            .all(|v| self.domains[v].len() >= 2)
    }

    /// Value of the formula under the current partial assignment, with every
    /// unassigned variable quantified as in the prefix.
    fn run(&mut self) -> bool {
        if self.wide_domains() {
            self.solve(Kind::And, vec![self.c.root])
        } else {
            self.plain(0)
        }
    }

    /// Prefix expansion in written order, starting at prefix position `pos`.
    fn plain(&mut self, pos: usize) -> bool {
        if let Some(v) = self.value(self.c.root) {
            // A quantifier over an empty domain overrides the matrix.
            for &var in &self.c.prefix[pos..] {
                if self.values[var] == UNASSIGNED && self.domains[var].is_empty() {
                    return self.c.quantifiers[var] == Some(Quantifier::Forall);
                }
            }
            self.leaves += 1;
            return v;
        }
        let Some(offset) = self.c.prefix[pos..]
            .iter()
            .position(|&v| self.values[v] == UNASSIGNED)
        else {
            unreachable!("matrix undecided under a full assignment")
        };
        let var = self.c.prefix[pos + offset];
        let exists = self.c.quantifiers[var] == Some(Quantifier::Exists);
        let mut result = !exists;
        for i in 0..self.domains[var].len() {
            let vertex = self.domains[var][i];
            self.assign(var, vertex);
            let r = self.plain(pos + offset + 1);
            self.unassign(var);
            if r == exists {
                result = exists;
                break;
            }
        }
        result
    }

    /// Collects the undecided parts of a `kind`-junction over `items`,
    /// flattening nested junctions of the same kind. Returns the value if
    /// some part already decides the junction.
    fn expand(&self, kind: Kind, items: &[usize], out: &mut Vec<usize>) -> Option<bool> {
        for &id in items {
            match self.value(id) {
                Some(v) if v == kind.dominant() => return Some(v),
                Some(_) => {}
                None => match &self.c.nodes[id] {
                    Node::Junction(k, children) if *k == kind => {
                        if let Some(v) = self.expand(kind, children, out) {
                            return Some(v);
                        }
                    }
                    _ => out.push(id),
                },
            }
        }
        None
    }

    fn solve(&mut self, mut kind: Kind, mut items: Vec<usize>) -> bool {
        loop {
            let mut open = Vec::new();
            if let Some(v) = self.expand(kind, &items, &mut open) {
                self.leaves += 1;
                return v;
            }
            match open.len() {
                0 => {
                    self.leaves += 1;
                    return !kind.dominant();
                }
                1 => match &self.c.nodes[open[0]] {
                    Node::Junction(k, children) => {
                        kind = *k;
                        items = children.clone();
                    }
                    _ => {
                        items = open;
                        break;
                    }
                },
                _ => {
                    items = open;
                    break;
                }
            }
        }

        let components = self.components(&items);
        if components.len() > 1 {
            for (_, part) in components {
                if self.solve(kind, part) == kind.dominant() {
                    return kind.dominant();
                }
            }
            return !kind.dominant();
        }
        let mask = components[0].0;
        let var = *self
            .c
            .prefix
            .iter()
            .find(|&&v| mask >> v & 1 == 1)
            .expect("undecided component has an unassigned variable");
        let exists = self.c.quantifiers[var] == Some(Quantifier::Exists);
        let mut result = !exists;
        for i in 0..self.domains[var].len() {
            let vertex = self.domains[var][i];
            self.assign(var, vertex);
            let r = self.solve(kind, items.clone());
            self.unassign(var);
            if r == exists {
                result = exists;
                break;
            }
        }
        result
    }

    /// Groups items whose unassigned variables overlap.
    fn components(&self, items: &[usize]) -> Vec<(u128, Vec<usize>)> {
        let mut comps: Vec<(u128, Vec<usize>)> = Vec::new();
        for &id in items {
            let mut mask = self.c.masks[id] & self.unassigned;
            let mut members = vec![id];
            let mut i = 0;
            while i < comps.len() {
                if comps[i].0 & mask != 0 {
                    let (m, mut ids) = comps.swap_remove(i);
                    mask |= m;
                    ids.append(&mut members);
                    members = ids;
                } else {
                    i += 1;
                }
            }
            comps.push((mask, members));
        }
        comps
    }
}

/// Compiled formula with a running count of expansion leaves.
#[derive(Debug, Clone)]
pub struct ModelChecker {
    compiled: Compiled,
    prefix_vars: Vec<Variable>,
    restriction: Vec<Option<Vec<u32>>>,
    evaluations: u64,
}

impl ModelChecker {
    pub fn new(f: &Formula) -> Result<Self, EvalError> {
        let compiled = compile(f)?;
        let restriction = vec![None; compiled.quantifiers.len()];
        Ok(ModelChecker {
            compiled,
            prefix_vars: f.prefix().iter().map(|(_, v)| v.clone()).collect(),
            restriction,
            evaluations: 0,
        })
    }

    pub fn with_restriction(f: &Formula, d: &DomainRestriction) -> Result<Self, EvalError> {
        let mut mc = ModelChecker::new(f)?;
        for (var, set) in &d.domains {
            let pos = mc
                .prefix_vars
                .iter()
                .position(|v| v == var)
                .ok_or_else(|| EvalError::NotInPrefix(var.name().to_string()))?;
            mc.restriction[mc.compiled.free + pos] = Some(set.iter().map(|&v| v as u32).collect());
        }
        Ok(mc)
    }

    /// Matrix leaves visited so far, summed over all calls.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn reset_evaluations(&mut self) {
        self.evaluations = 0;
    }

    pub fn free_count(&self) -> usize {
        self.compiled.free
    }

    fn start<'a>(
        &'a self,
        g: &'a Graph,
        removed: &VertexSet,
        assignment: &[usize],
    ) -> Result<Eval<'a>, EvalError> {
        let c = &self.compiled;
        if assignment.len() != c.free {
            return Err(EvalError::AssignmentLength {
                expected: c.free,
                found: assignment.len(),
            });
        }
        let n = g.vertex_count();
        for &v in assignment {
            if v >= n {
                return Err(EvalError::NoSuchVertex { vertex: v, n });
            }
        }
        let total = c.quantifiers.len();
        let mut domains = vec![Vec::new(); total];
        for &var in &c.prefix {
            domains[var] = match &self.restriction[var] {
                Some(list) => list
                    .iter()
                    .copied()
                    .filter(|&v| (v as usize) < n && !removed.contains(&(v as usize)))
                    .collect(),
                None => (0..n as u32)
                    .filter(|v| !removed.contains(&(*v as usize)))
                    .collect(),
            };
        }
        let mut values = vec![UNASSIGNED; total];
        for (i, &v) in assignment.iter().enumerate() {
            values[i] = v as u32;
        }
        let unassigned = c.prefix.iter().fold(0u128, |m, &v| m | 1u128 << v);
        Ok(Eval {
            g,
            c,
            domains,
            values,
            unassigned,
            leaves: 0,
        })
    }

    /// `(g, assignment) |= f`.
    pub fn check(&mut self, g: &Graph, assignment: &[usize]) -> Result<bool, EvalError> {
        self.check_without(g, &VertexSet::new(), assignment)
    }

    /// `(g - removed, assignment) |= f`. The assignment may use removed
    /// vertices; only the quantified variables avoid them.
    pub fn check_without(
        &mut self,
        g: &Graph,
        removed: &VertexSet,
        assignment: &[usize],
    ) -> Result<bool, EvalError> {
        let mut e = self.start(g, removed, assignment)?;
        let r = e.run();
        let leaves = e.leaves;
        self.evaluations += leaves;
        Ok(r)
    }

    /// Lexicographically smallest tuple for the leading universal block of
    /// the prefix under which the rest of the formula fails on
    /// `g - removed`, or `None` if `(g - removed, assignment) |= f`.
    ///
    /// The prefix must be empty or start with a universal quantifier. With an
    /// empty universal block the result is `Some(vec![])` when the formula is
    /// false.
    pub fn find_violating(
        &mut self,
        g: &Graph,
        removed: &VertexSet,
        assignment: &[usize],
    ) -> Result<Option<Vec<usize>>, EvalError> {
        let c = &self.compiled;
        if c.prefix.first().is_some_and(|&v| c.quantifiers[v] == Some(Quantifier::Exists)) {
            return Err(EvalError::NoUniversalBlock);
        }
        let block: Vec<usize> = c
            .prefix
            .iter()
            .copied()
            .take_while(|&v| c.quantifiers[v] == Some(Quantifier::Forall))
            .collect();
        let mut e = self.start(g, removed, assignment)?;
        let found = if e.run() {
            None
        } else {
            // The current partial tuple is violating; extend it by the first
            // vertex that keeps it violating.
            let mut tuple = Vec::with_capacity(block.len());
            for &var in &block {
                let mut extended = false;
                for i in 0..e.domains[var].len() {
                    let vertex = e.domains[var][i];
                    e.assign(var, vertex);
                    if !e.run() {
                        tuple.push(vertex as usize);
                        extended = true;
                        break;
                    }
                    e.unassign(var);
                }
                assert!(extended, "a false universal has a falsifying instance");
            }
            Some(tuple)
        };
        let leaves = e.leaves;
        self.evaluations += leaves;
        Ok(found)
    }
}

/// `(g, a) |= f`, optionally with some prefix variables restricted.
pub fn models(
    g: &Graph,
    f: &Formula,
    a: &[usize],
    d: Option<&DomainRestriction>,
) -> Result<bool, EvalError> {
    let mut mc = match d {
        Some(d) => ModelChecker::with_restriction(f, d)?,
        None => ModelChecker::new(f)?,
    };
    mc.check(g, a)
}

/// Lexicographically smallest violating tuple for the universal block that
/// follows the opened variables of `f_open`, bound to `u`.
pub fn find_violating_tuple(
    g: &Graph,
    u: &[usize],
    f_open: &Formula,
) -> Result<Option<Vec<usize>>, EvalError> {
    ModelChecker::new(f_open)?.find_violating(g, &VertexSet::new(), u)
}
