//! Exhaustive reference solver.

use std::time::Instant;

use itertools::Itertools;

use super::{accept, Certificate, Method, ModificationInstance, Outcome, SearchStats, SolveError, Variant};
use crate::graph::{all_pairs, edit_edges, EditMode, Pair, PairSet, VertexSet};
use crate::modelcheck::ModelChecker;

/// Tries every certificate of size at most `k`, smallest first and in
/// lexicographic order within a size, and returns the first that works.
/// Vertex sets range over `V(G)`; pair sets over the edges (removal), the
/// non-edges (completion) or all pairs (editing).
pub fn brute_force(inst: &ModificationInstance) -> Result<Outcome, SolveError> {
    inst.formula.require_sentence()?;
    let start = Instant::now();
    let g = &inst.graph;
    let mut checker = ModelChecker::new(&inst.formula)?;
    let mut stats = SearchStats::default();
    let found = match inst.variant {
        Variant::VertexRemoval => {
            let mut found = None;
            'sizes: for j in 0..=inst.k.min(g.vertex_count()) {
                for s in g.vertices().combinations(j) {
                    stats.nodes += 1;
                    let s: VertexSet = s.into_iter().collect();
                    if checker.check_without(g, &s, &[])? {
                        stats.max_depth = j;
                        found = Some(Certificate::Vertices(s));
                        break 'sizes;
                    }
                }
            }
            found
        }
        variant => {
            let (candidates, mode): (Vec<Pair>, EditMode) = match variant {
                Variant::EdgeRemoval => (g.edges(), EditMode::Remove),
                Variant::EdgeCompletion => (g.non_edges(), EditMode::Add),
                _ => (all_pairs(g.vertex_count()), EditMode::Toggle),
            };
            let mut found = None;
            'sizes: for j in 0..=inst.k.min(candidates.len()) {
                for f in candidates.iter().copied().combinations(j) {
                    stats.nodes += 1;
                    let f: PairSet = f.into_iter().collect();
                    let h = edit_edges(g, &f, mode)?;
                    if checker.check(&h, &[])? {
                        stats.max_depth = j;
                        found = Some(Certificate::Pairs(f));
                        break 'sizes;
                    }
                }
            }
            found
        }
    };
    stats.matrix_evaluations = checker.evaluations();
    stats.elapsed = start.elapsed();
    match found {
        Some(cert) => accept(g, &inst.formula, inst.k, inst.variant, cert, Method::BruteForce, stats),
        None => Ok(Outcome::No {
            method: Method::BruteForce,
            stats,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::graph::Graph;

    fn inst(variant: Variant, g: Graph, text: &str, k: usize) -> ModificationInstance {
        ModificationInstance::new(variant, g, parse(text).unwrap(), k).unwrap()
    }

    #[test]
    fn triangle_cover() {
        let out = brute_force(&inst(Variant::VertexRemoval, Graph::complete(3), "A u. A v. !(u ~ v)", 2)).unwrap();
        assert_eq!(
            out.solution().unwrap().certificate,
            Certificate::Vertices([0, 1].into())
        );
        let out = brute_force(&inst(Variant::VertexRemoval, Graph::complete(3), "A u. A v. !(u ~ v)", 1)).unwrap();
        assert_eq!(out.answer(), Some(false));
    }

    #[test]
    fn already_a_model() {
        for variant in Variant::ALL {
            let out = brute_force(&inst(variant, Graph::cycle(5), "A u. E v. u ~ v", 0)).unwrap();
            assert!(out.solution().unwrap().certificate.is_empty());
        }
    }

    #[test]
    fn edge_variants() {
        let edgeless = "A u. A v. !(u ~ v)";
        let out = brute_force(&inst(Variant::EdgeRemoval, Graph::complete(3), edgeless, 3)).unwrap();
        assert_eq!(out.solution().unwrap().certificate.len(), 3);
        let out = brute_force(&inst(Variant::EdgeCompletion, Graph::new(2), "E x. E y. x ~ y", 1)).unwrap();
        assert_eq!(out.solution().unwrap().certificate.len(), 1);
        let out = brute_force(&inst(Variant::EdgeCompletion, Graph::complete(3), edgeless, 3)).unwrap();
        assert_eq!(out.answer(), Some(false));
    }
}
