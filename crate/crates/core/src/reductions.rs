//! Instance transformations between the modification problems.

use thiserror::Error;

use crate::corpus;
use crate::formula::{build_vertex_formula, complement_formula, Formula, FormulaError, VertexFormula};
use crate::graph::{complement, gadgetize, GadgetGraph, Graph, Origin, Pair, PairSet, Role, VertexSet};
use crate::solvers::{ModificationInstance, SolveError, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("expected a {expected} instance, got {found}")]
    WrongVariant { expected: Variant, found: Variant },
    #[error("no instances to compose")]
    EmptyBatch,
    #[error("instance {index} has {found} vertices, expected {expected}")]
    VertexCountMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("instance {index} has budget {found}, expected {expected}")]
    BudgetMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("clique size {k} must satisfy 1 <= k <= n = {n}")]
    CliqueSize { k: usize, n: usize },
}

/// Output of [`edge_to_vertex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeToVertex {
    /// Vertex removal on the gadget graph, same budget.
    pub instance: ModificationInstance,
    pub gadget: GadgetGraph,
    pub formulas: VertexFormula,
}

impl EdgeToVertex {
    /// Edges of the original graph whose subdivision vertex is in `s`.
    /// Deleted pendants carry no information and are dropped.
    pub fn map_back(&self, s: &VertexSet) -> PairSet {
        s.iter()
            .filter(|&&v| self.gadget.role(v) == Role::Subdivision)
            .filter_map(|&v| match self.gadget.origin(v) {
                Origin::Edge(e) => Some(e),
                _ => None,
            })
            .collect()
    }
}

/// Edge removal to `f` on `(g, k)` becomes vertex removal to the gadget
/// formula on `gadgetize(g, k)` with the same `k`.
pub fn edge_to_vertex(g: &Graph, f: &Formula, k: usize) -> Result<EdgeToVertex, ReductionError> {
    let formulas = build_vertex_formula(f)?;
    let gadget = gadgetize(g, k);
    let instance = ModificationInstance::new(
        Variant::VertexRemoval,
        gadget.graph.clone(),
        formulas.psi.clone(),
        k,
    )?;
    Ok(EdgeToVertex {
        instance,
        gadget,
        formulas,
    })
}

fn expect(inst: &ModificationInstance, expected: Variant) -> Result<(), ReductionError> {
    if inst.variant == expected {
        Ok(())
    } else {
        Err(ReductionError::WrongVariant {
            expected,
            found: inst.variant,
        })
    }
}

/// Edge removal to `f` on `G` is edge completion to the complemented formula
/// on the complement of `G`; certificates carry over unchanged.
pub fn removal_to_completion(inst: &ModificationInstance) -> Result<ModificationInstance, ReductionError> {
    expect(inst, Variant::EdgeRemoval)?;
    Ok(ModificationInstance::new(
        Variant::EdgeCompletion,
        complement(&inst.graph),
        complement_formula(&inst.formula),
        inst.k,
    )?)
}

/// Inverse direction of [`removal_to_completion`].
pub fn completion_to_removal(inst: &ModificationInstance) -> Result<ModificationInstance, ReductionError> {
    expect(inst, Variant::EdgeCompletion)?;
    Ok(ModificationInstance::new(
        Variant::EdgeRemoval,
        complement(&inst.graph),
        complement_formula(&inst.formula),
        inst.k,
    )?)
}

/// Composes Clique instances `(G_i, k)`, all on `n` vertices, into one
/// vertex-removal instance for the clique-neighbourhood formula with budget
/// `n - k`. Each copy of `G_i` gets `n - k + 2` pairwise non-adjacent apex
/// vertices joined to all of it; the result is a YES-instance iff some `G_i`
/// has a clique on `k` vertices.
pub fn cross_compose_clique(instances: &[(Graph, usize)]) -> Result<ModificationInstance, ReductionError> {
    let (first, k) = instances.first().ok_or(ReductionError::EmptyBatch)?;
    let (n, k) = (first.vertex_count(), *k);
    if k == 0 || k > n {
        return Err(ReductionError::CliqueSize { k, n });
    }
    for (index, (g, ki)) in instances.iter().enumerate() {
        if g.vertex_count() != n {
            return Err(ReductionError::VertexCountMismatch {
                index,
                expected: n,
                found: g.vertex_count(),
            });
        }
        if *ki != k {
            return Err(ReductionError::BudgetMismatch {
                index,
                expected: k,
                found: *ki,
            });
        }
    }
    let apexes = n - k + 2;
    let mut composed = Graph::new(0);
    for (g, _) in instances {
        let base = composed.vertex_count();
        let (grown, first_apex) = composed.disjoint_union(g).with_extra_vertices(apexes);
        let joins = (first_apex..first_apex + apexes)
            .flat_map(|a| (base..base + n).map(move |v| Pair::new(v, a)));
        composed = grown.add_edges(joins);
    }
    Ok(ModificationInstance::new(
        Variant::VertexRemoval,
        composed,
        corpus::CLIQUE_NEIGHBORHOOD.formula(),
        n - k,
    )?)
}
