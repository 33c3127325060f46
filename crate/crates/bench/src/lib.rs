//! Deterministic benchmark fixtures.

use fogm_core::corpus;
use fogm_core::{Formula, Graph};

/// Vertex Cover on the Petersen graph; the minimum is 6.
pub fn petersen_cover() -> (Graph, Formula) {
    (Graph::petersen(), corpus::VERTEX_COVER.formula())
}

/// `t` disjoint paths on three vertices: cluster editing needs one edit each.
pub fn disjoint_p3s(t: usize) -> Graph {
    let path = Graph::path(3);
    (0..t).fold(Graph::new(0), |acc, _| acc.disjoint_union(&path))
}

/// Cycle with every `step`-th chord, a sparse graph of diameter above two.
pub fn chorded_cycle(n: usize, step: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    edges.extend((0..n).step_by(step.max(1)).map(|v| (v, (v + n / 2) % n)));
    edges.retain(|(a, b)| a != b);
    edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
    edges.dedup_by_key(|&mut (a, b)| (a.min(b), a.max(b)));
    Graph::from_edges(n, &edges).expect("valid chorded cycle")
}
