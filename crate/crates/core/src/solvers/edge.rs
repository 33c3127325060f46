//! Bounded search for edge removal and edge editing to `E^r A^s chi`.
//!
//! For a fixed tuple `u` and the current edit set `F`, take the least tuple
//! `v` violating the formula in the edited graph. The matrix only looks at
//! pairs inside `u v`, so any solution extending `F` changes one of those
//! pairs: for removal an edge of the current graph inside `u v`, for editing
//! any pair inside `u v` not yet in `F`. That is at most `C(r + s, 2)`
//! children per node and depth at most `k`.

use std::time::Instant;

use super::{accept, first_success, tuple_at, tuple_count, Certificate, Method, Outcome, SearchStats, SolveError, Variant};
use crate::formula::{open, Formula};
use crate::graph::{edit_edges, EditMode, Graph, Pair, PairSet, VertexSet};
use crate::modelcheck::ModelChecker;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeMode {
    Removal,
    Editing,
}

impl EdgeMode {
    fn variant(self) -> Variant {
        match self {
            EdgeMode::Removal => Variant::EdgeRemoval,
            EdgeMode::Editing => Variant::EdgeEditing,
        }
    }
}

/// Edge removal or editing for a formula whose prefix reads `E* A*`.
pub fn solve_edge_sigma2(g: &Graph, f: &Formula, k: usize, mode: EdgeMode) -> Result<Outcome, SolveError> {
    solve(g, f, k, mode, 1)
}

pub(crate) fn solve(
    g: &Graph,
    f: &Formula,
    k: usize,
    mode: EdgeMode,
    threads: usize,
) -> Result<Outcome, SolveError> {
    f.require_sentence()?;
    let (r, _) = f.split_ea().ok_or_else(|| SolveError::Shape {
        method: Method::EdgeBranching,
        expected: "E*A*",
        found: f.quantifier_string(),
    })?;
    let start = Instant::now();
    let opened = open(f, r)?;
    let checker = ModelChecker::new(&opened)?;
    let n = g.vertex_count();
    let (found, mut stats) = first_success(tuple_count(n, r), threads, |i, stats| {
        let u = tuple_at(i, n, r);
        stats.outer_tuples += 1;
        let mut search = Search {
            g,
            k,
            mode,
            u: &u,
            checker: checker.clone(),
            stats,
        };
        let mut edits = PairSet::new();
        let hit = search.branch(&mut edits)?.then_some(edits);
        stats.matrix_evaluations += search.checker.evaluations();
        Ok(hit)
    })?;
    stats.elapsed = start.elapsed();
    match found {
        Some(edits) => accept(g, f, k, mode.variant(), Certificate::Pairs(edits), Method::EdgeBranching, stats),
        None => Ok(Outcome::No {
            method: Method::EdgeBranching,
            stats,
        }),
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    mode: EdgeMode,
    u: &'a [usize],
    checker: ModelChecker,
    stats: &'a mut SearchStats,
}

impl Search<'_> {
    fn branch(&mut self, edits: &mut PairSet) -> Result<bool, SolveError> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(edits.len());
        let current = match self.mode {
            EdgeMode::Removal => edit_edges(self.g, edits, EditMode::Remove)?,
            EdgeMode::Editing => edit_edges(self.g, edits, EditMode::Toggle)?,
        };
        self.stats.tuples_examined += 1;
        let Some(v) = self.checker.find_violating(&current, &VertexSet::new(), self.u)? else {
            return Ok(true);
        };
        if edits.len() == self.k {
            return Ok(false);
        }
        let touched: VertexSet = self.u.iter().chain(&v).copied().collect();
        let touched: Vec<usize> = touched.into_iter().collect();
        let mut children = Vec::new();
        for (i, &a) in touched.iter().enumerate() {
            for &b in &touched[i + 1..] {
                let p = Pair::new(a, b);
                let eligible = match self.mode {
                    EdgeMode::Removal => current.has_edge(a, b),
                    EdgeMode::Editing => !edits.contains(&p),
                };
                if eligible {
                    children.push(p);
                }
            }
        }
        self.stats.max_branching = self.stats.max_branching.max(children.len());
        for p in children {
            edits.insert(p);
            if self.branch(edits)? {
                return Ok(true);
            }
            edits.remove(&p);
        }
        Ok(false)
    }
}
