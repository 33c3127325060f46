use super::{Graph, Pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Branching,
    Subdivision,
    Pendant,
}

/// Where a gadget vertex comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// A branching vertex: the original vertex it copies.
    Vertex(usize),
    /// A subdivision vertex: the original edge it subdivides.
    Edge(Pair),
    /// A pendant: the gadget id of the branching vertex it hangs from.
    PendantOf(usize),
}

/// Subdivided copy of a graph with `k + 3` pendants on every original vertex.
///
/// Layout: branching vertices keep their ids `0..n`, subdivision vertices
/// follow in edge order, then the pendants of vertex 0, of vertex 1, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub origins: Vec<Origin>,
    pub budget: usize,
}

impl GadgetGraph {
    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn origin(&self, v: usize) -> Origin {
        self.origins[v]
    }

    pub fn vertices_with_role(&self, role: Role) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| self.roles[v] == role).collect()
    }

    /// Gadget id of the subdivision vertex of original edge `e`, if any.
    pub fn subdivision_of(&self, e: Pair) -> Option<usize> {
        self.origins.iter().position(|o| *o == Origin::Edge(e))
    }

    /// Checks the degree profile: subdivision vertices have degree 2,
    /// pendants degree 1, and every branching vertex has exactly
    /// `budget + 3` pendant neighbours (so degree at least 3).
    pub fn check_invariants(&self) -> Result<(), String> {
        let g = &self.graph;
        for v in g.vertices() {
            let d = g.degree(v);
            match self.roles[v] {
                Role::Subdivision if d != 2 => return Err(format!("subdivision {v} has degree {d}")),
                Role::Pendant if d != 1 => return Err(format!("pendant {v} has degree {d}")),
                Role::Branching => {
                    let pendants = g
                        .neighbors(v)
                        .iter()
                        .filter(|&&w| self.roles[w] == Role::Pendant)
                        .count();
                    if pendants != self.budget + 3 {
                        return Err(format!("branching {v} has {pendants} pendants"));
                    }
                    if d < 3 {
                        return Err(format!("branching {v} has degree {d}"));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Subdivides every edge of `g` and attaches `k + 3` pendants to every
/// original vertex.
pub fn gadgetize(g: &Graph, k: usize) -> GadgetGraph {
    let n = g.vertex_count();
    let edges = g.edges();
    let m = edges.len();
    let total = n + m + n * (k + 3);
    let mut pairs = Vec::with_capacity(2 * m + n * (k + 3));
    let mut roles = vec![Role::Branching; n];
    let mut origins: Vec<Origin> = (0..n).map(Origin::Vertex).collect();
    for (i, e) in edges.iter().enumerate() {
        let s = n + i;
        pairs.push(Pair::new(e.low(), s));
        pairs.push(Pair::new(e.high(), s));
        roles.push(Role::Subdivision);
        origins.push(Origin::Edge(*e));
    }
    for u in 0..n {
        for j in 0..k + 3 {
            let p = n + m + u * (k + 3) + j;
            pairs.push(Pair::new(u, p));
            roles.push(Role::Pendant);
            origins.push(Origin::PendantOf(u));
        }
    }
    GadgetGraph {
        graph: Graph::from_pairs(total, pairs),
        roles,
        origins,
        budget: k,
    }
}
