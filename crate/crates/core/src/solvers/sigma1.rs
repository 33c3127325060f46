//! Purely existential formulas.
//!
//! An existential sentence stays true in every induced supergraph, so vertex
//! deletion cannot create a model: the answer is YES (with `S` empty) exactly
//! when `G` is already a model. For the edge problems a model after editing
//! has a witness tuple on at most `r` vertices, and only pairs inside the
//! witness matter, so it suffices to try every vertex set `U` of size
//! `min(r, n)` and every admissible pair set inside `U` of size at most `k`.

use std::time::Instant;

use itertools::Itertools;

use super::{accept, Certificate, Method, Outcome, SearchStats, SolveError, Variant};
use crate::formula::Formula;
use crate::graph::{edit_edges, EditMode, Graph, Pair, PairSet, VertexSet};
use crate::modelcheck::ModelChecker;

pub fn solve_sigma1(g: &Graph, f: &Formula, k: usize, variant: Variant) -> Result<Outcome, SolveError> {
    f.require_sentence()?;
    if f.is_forall_containing() {
        return Err(SolveError::Shape {
            method: Method::Sigma1,
            expected: "E*",
            found: f.quantifier_string(),
        });
    }
    let start = Instant::now();
    let mut checker = ModelChecker::new(f)?;
    let mut stats = SearchStats::default();
    let found = match variant {
        Variant::VertexRemoval => {
            stats.nodes = 1;
            checker
                .check(g, &[])?
                .then(|| Certificate::Vertices(VertexSet::new()))
        }
        _ => edge_search(g, f, k, variant, &mut checker, &mut stats)?.map(Certificate::Pairs),
    };
    stats.matrix_evaluations = checker.evaluations();
    stats.elapsed = start.elapsed();
    match found {
        Some(cert) => accept(g, f, k, variant, cert, Method::Sigma1, stats),
        None => Ok(Outcome::No {
            method: Method::Sigma1,
            stats,
        }),
    }
}

fn edge_search(
    g: &Graph,
    f: &Formula,
    k: usize,
    variant: Variant,
    checker: &mut ModelChecker,
    stats: &mut SearchStats,
) -> Result<Option<PairSet>, SolveError> {
    let n = g.vertex_count();
    let size = f.quantified_count().min(n);
    let mode = match variant {
        Variant::EdgeRemoval => EditMode::Remove,
        Variant::EdgeCompletion => EditMode::Add,
        _ => EditMode::Toggle,
    };
    for u in (0..n).combinations(size) {
        stats.outer_tuples += 1;
        let candidates: Vec<Pair> = u
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| Pair::new(a, b))
            .filter(|p| match mode {
                EditMode::Remove => g.has_edge(p.low(), p.high()),
                EditMode::Add => !g.has_edge(p.low(), p.high()),
                EditMode::Toggle => true,
            })
            .collect();
        for j in 0..=k.min(candidates.len()) {
            for chosen in candidates.iter().copied().combinations(j) {
                stats.nodes += 1;
                stats.max_depth = stats.max_depth.max(j);
                let edits: PairSet = chosen.into_iter().collect();
                let h = edit_edges(g, &edits, mode)?;
                if checker.check(&h, &[])? {
                    return Ok(Some(edits));
                }
            }
        }
    }
    Ok(None)
}
