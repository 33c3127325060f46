//! Bounded search for vertex removal to `E^r A^s E^t chi`.
//!
//! For a fixed tuple `u` for the leading existential block, a set `S` with
//! `u` outside `S` and `(G - S, u) |= phi[x]` is searched as follows: take the
//! least tuple `v` for the universal block that violates the formula in
//! `G - S`. Every solution extending `S` must delete a vertex of `v` that is
//! not in `u`, so the search branches on those vertices, at most `s` of them,
//! to depth at most `k`.

use std::time::Instant;

use super::{accept, first_success, tuple_at, tuple_count, Certificate, Method, Outcome, SearchStats, SolveError, Variant};
use crate::formula::{open, Formula};
use crate::graph::{Graph, VertexSet};
use crate::modelcheck::ModelChecker;

/// Vertex removal for a formula whose prefix reads `E* A* E*`.
pub fn solve_vertex_sigma3(g: &Graph, f: &Formula, k: usize) -> Result<Outcome, SolveError> {
    solve(g, f, k, 1)
}

pub(crate) fn solve(g: &Graph, f: &Formula, k: usize, threads: usize) -> Result<Outcome, SolveError> {
    f.require_sentence()?;
    let (r, _, _) = f.split_eae().ok_or_else(|| SolveError::Shape {
        method: Method::VertexBranching,
        expected: "E*A*E*",
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
            u: &u,
            checker: checker.clone(),
            stats,
        };
        let mut s = VertexSet::new();
        let hit = search.branch(&mut s)?.then_some(s);
        stats.matrix_evaluations += search.checker.evaluations();
        Ok(hit)
    })?;
    stats.elapsed = start.elapsed();
    match found {
        Some(s) => accept(g, f, k, Variant::VertexRemoval, Certificate::Vertices(s), Method::VertexBranching, stats),
        None => Ok(Outcome::No {
            method: Method::VertexBranching,
            stats,
        }),
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    u: &'a [usize],
    checker: ModelChecker,
    stats: &'a mut SearchStats,
}

impl Search<'_> {
    /// True if `s` can be extended to a solution; `s` then holds it.
    fn branch(&mut self, s: &mut VertexSet) -> Result<bool, SolveError> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(s.len());
        self.stats.tuples_examined += 1;
        let Some(v) = self.checker.find_violating(self.g, s, self.u)? else {
            return Ok(true);
        };
        if s.len() == self.k {
            return Ok(false);
        }
        let mut children: Vec<usize> = v.into_iter().filter(|x| !self.u.contains(x)).collect();
        children.sort_unstable();
        children.dedup();
        self.stats.max_branching = self.stats.max_branching.max(children.len());
        for c in children {
            s.insert(c);
            if self.branch(s)? {
                return Ok(true);
            }
            s.remove(&c);
        }
        Ok(false)
    }
}
