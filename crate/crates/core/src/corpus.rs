//! Named example formulas.

use crate::formula::{parse, Formula};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub name: &'static str,
    pub text: &'static str,
    pub description: &'static str,
}

impl Entry {
    pub fn formula(&self) -> Formula {
        parse(self.text).expect("corpus formulas parse")
    }
}

pub const VERTEX_COVER: Entry = Entry {
    name: "vertex-cover",
    text: "A u. A v. !(u ~ v)",
    description: "edgeless graph; vertex removal is Vertex Cover",
};

pub const DIAMETER_TWO: Entry = Entry {
    name: "diameter-two",
    text: "A u. A v. E w. (u = v) | (u ~ v) | ((u ~ w) & (v ~ w))",
    description: "any two vertices are at distance at most two",
};

pub const CLIQUE_NEIGHBORHOOD: Entry = Entry {
    name: "clique-neighborhood",
    text: "E x. A y. A z. ((x ~ y) & (x ~ z)) -> ((y = z) | (y ~ z))",
    description: "some vertex has a clique as its neighbourhood",
};

pub const NO_ISOLATED: Entry = Entry {
    name: "no-isolated",
    text: "A u. E v. u ~ v",
    description: "no isolated vertex",
};

pub const CLUSTER: Entry = Entry {
    name: "cluster",
    text: "A x. A y. A z. ((x ~ y) & (y ~ z)) -> ((x = z) | (x ~ z))",
    description: "disjoint union of cliques; edge editing is Cluster Editing",
};

pub const HAS_EDGE: Entry = Entry {
    name: "has-edge",
    text: "E x. E y. x ~ y",
    description: "at least one edge",
};

pub const DOMINATING_VERTEX: Entry = Entry {
    name: "dominating-vertex",
    text: "E x. A y. (x = y) | (x ~ y)",
    description: "some vertex is adjacent to all others",
};

pub const W_WITNESS: Entry = Entry {
    name: "w-witness",
    text: "A x. E y1. E y2. E y3. E y4. (x ~ y1) & (x ~ y2) & (x ~ y3) & (x ~ y4) \
           & (y1 ~ y2) & (y1 ~ y3) & (y2 ~ y3) & (y2 ~ y4) & (y3 ~ y4) \
           & !(y1 = y4) & !(y1 ~ y4)",
    description: "every vertex x roots an induced copy of K5 minus an edge not at x",
};

pub const PENDANT_NEIGHBOR: Entry = Entry {
    name: "pendant-neighbor",
    text: "A x. E y. A z. (x ~ y) & ((y ~ z) -> (z = x))",
    description: "every vertex has a neighbour of degree one",
};

pub const ALL: &[Entry] = &[
    VERTEX_COVER,
    DIAMETER_TWO,
    CLIQUE_NEIGHBORHOOD,
    NO_ISOLATED,
    CLUSTER,
    HAS_EDGE,
    DOMINATING_VERTEX,
    W_WITNESS,
    PENDANT_NEIGHBOR,
];

pub fn lookup(name: &str) -> Option<Entry> {
    ALL.iter().copied().find(|e| e.name == name)
}

/// The graph defined by [`W_WITNESS`]: `x = 0` adjacent to `y1..y4 = 1..4`,
/// all `y` pairs adjacent except `y1 y4`.
pub fn witness_graph() -> Graph {
    let mut edges = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            if (a, b) != (1, 4) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(5, &edges).expect("valid edge list")
}
