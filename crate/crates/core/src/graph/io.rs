//! Graph file formats.
//!
//! Edge list: one `u v` pair per line, `#` comments. A line with a single
//! token declares a vertex, which is how isolated vertices are written. If
//! every token is a non-negative integer the tokens are the vertex ids and the
//! graph has `max + 1` vertices; otherwise tokens are labels, numbered in
//! order of first appearance. A gadget graph appends a `[roles]` section with
//! lines `v branching u`, `v subdivision a b` or `v pendant u`.
//!
//! DIMACS: `c` comment lines, a `p edge n m` header, then `m` lines `e u v`
//! with 1-based ids.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::{gadget::Origin, GadgetGraph, Graph, GraphError, Pair, Role};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// `.dimacs`, `.col` and `.clq` files are DIMACS; everything else is an
    /// edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dimacs" | "col" | "clq") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }

    /// Guesses from content: a leading `p ` or `c ` line means DIMACS.
    pub fn detect(text: &str) -> Self {
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if t.starts_with("p ") || t.starts_with("c ") || t == "c" {
                return GraphFormat::Dimacs;
            }
            return GraphFormat::EdgeList;
        }
        GraphFormat::EdgeList
    }
}

const ROLES_HEADER: &str = "[roles]";

fn malformed(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Malformed {
        line,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

/// Parses graph text, detecting the format from its content.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    match GraphFormat::detect(text) {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = strip_comment(line);
        if body == ROLES_HEADER {
            break;
        }
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() > 2 {
            return Err(malformed(i + 1, format!("expected `u v` or `u`, found `{body}`")));
        }
        rows.push((i + 1, toks));
    }
    let numeric = rows
        .iter()
        .all(|(_, t)| t.iter().all(|s| s.parse::<usize>().is_ok()));
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut resolve = |s: &str| -> usize {
        if numeric {
            s.parse().unwrap()
        } else {
            *ids.entry(s.to_string()).or_insert_with(|| {
                labels.push(s.to_string());
                labels.len() - 1
            })
        }
    };
    let mut n = 0usize;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (line, toks) in &rows {
        let a = resolve(toks[0]);
        n = n.max(a + 1);
        if toks.len() == 2 {
            let b = resolve(toks[1]);
            n = n.max(b + 1);
            edges.push((*line, a, b));
        }
    }
    let mut g = Graph::new(n);
    for (line, a, b) in edges {
        if a == b {
            return Err(malformed(line, format!("loop at `{}`", toks_name(&labels, numeric, a))));
        }
        if g.has_edge(a, b) {
            return Err(malformed(
                line,
                format!(
                    "duplicate edge `{} {}`",
                    toks_name(&labels, numeric, a),
                    toks_name(&labels, numeric, b)
                ),
            ));
        }
        g.set(a, b, true);
    }
    g.sort_neighbors();
    if !numeric {
        g = g.with_labels(labels);
    }
    Ok(g)
}

fn toks_name(labels: &[String], numeric: bool, v: usize) -> String {
    if numeric {
        v.to_string()
    } else {
        labels[v].clone()
    }
}

fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut g: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut seen = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if g.is_some() {
                    return Err(malformed(line_no, "second `p` line"));
                }
                if toks.len() != 4 {
                    return Err(malformed(line_no, "expected `p edge n m`"));
                }
                let n: usize = toks[2]
                    .parse()
                    .map_err(|_| malformed(line_no, "bad vertex count"))?;
                declared_m = toks[3]
                    .parse()
                    .map_err(|_| malformed(line_no, "bad edge count"))?;
                g = Some(Graph::new(n));
            }
            "e" => {
                let graph = g
                    .as_mut()
                    .ok_or_else(|| malformed(line_no, "edge before `p` line"))?;
                if toks.len() != 3 {
                    return Err(malformed(line_no, "expected `e u v`"));
                }
                let parse_v = |s: &str| -> Result<usize, GraphError> {
                    let v: usize = s
                        .parse()
                        .map_err(|_| malformed(line_no, format!("bad vertex `{s}`")))?;
                    if v == 0 || v > graph.vertex_count() {
                        return Err(malformed(line_no, format!("vertex {v} out of range")));
                    }
                    Ok(v - 1)
                };
                let (a, b) = (parse_v(toks[1])?, parse_v(toks[2])?);
                if a == b {
                    return Err(malformed(line_no, format!("loop at {}", a + 1)));
                }
                if graph.has_edge(a, b) {
                    return Err(malformed(
                        line_no,
                        format!("duplicate edge {} {}", a + 1, b + 1),
                    ));
                }
                graph.set(a, b, true);
                seen += 1;
            }
            other => return Err(malformed(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let mut g = g.ok_or_else(|| malformed(0, "missing `p edge n m` line"))?;
    if seen != declared_m {
        return Err(malformed(
            0,
            format!("header declares {declared_m} edges, found {seen}"),
        ));
    }
    g.sort_neighbors();
    Ok(g)
}

/// Serialises `g` in the given format. Labels survive the edge-list format
/// only.
pub fn format_graph(g: &Graph, format: GraphFormat) -> String {
    let mut out = String::new();
    match format {
        GraphFormat::EdgeList => {
            out.push_str(&format!(
                "# {} vertices, {} edges\n",
                g.vertex_count(),
                g.edge_count()
            ));
            match g.labels() {
                // labelled: declare every vertex so ids follow the label order
                Some(_) => {
                    for v in g.vertices() {
                        out.push_str(&format!("{}\n", g.label(v)));
                    }
                }
                None => {
                    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
                        out.push_str(&format!("{v}\n"));
                    }
                }
            }
            for e in g.edges() {
                out.push_str(&format!("{} {}\n", g.label(e.low()), g.label(e.high())));
            }
        }
        GraphFormat::Dimacs => {
            out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
            for e in g.edges() {
                out.push_str(&format!("e {} {}\n", e.low() + 1, e.high() + 1));
            }
        }
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, Error> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let g = match GraphFormat::from_path(path) {
        GraphFormat::Dimacs => parse_dimacs(&text)?,
        GraphFormat::EdgeList => parse_graph(&text)?,
    };
    Ok(g)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), Error> {
    let path = path.as_ref();
    fs::write(path, format_graph(g, GraphFormat::from_path(path))).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Edge list of the gadget graph followed by its `[roles]` section.
pub fn write_gadget(gg: &GadgetGraph) -> String {
    let mut out = format_graph(&gg.graph.clone().without_labels(), GraphFormat::EdgeList);
    out.push_str(ROLES_HEADER);
    out.push('\n');
    out.push_str(&format!("# budget {}\n", gg.budget));
    for v in gg.graph.vertices() {
        let line = match gg.origins[v] {
            Origin::Vertex(u) => format!("{v} branching {u}"),
            Origin::Edge(e) => format!("{v} subdivision {} {}", e.low(), e.high()),
            Origin::PendantOf(u) => format!("{v} pendant {u}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Inverse of [`write_gadget`]. The budget is recovered from the pendant count.
pub fn parse_gadget(text: &str) -> Result<GadgetGraph, GraphError> {
    let graph = parse_edge_list(text)?;
    let n = graph.vertex_count();
    let mut roles = vec![None; n];
    let mut origins = vec![None; n];
    let mut in_roles = false;
    for (i, line) in text.lines().enumerate() {
        let body = strip_comment(line);
        if body == ROLES_HEADER {
            in_roles = true;
            continue;
        }
        if !in_roles || body.is_empty() {
            continue;
        }
        let bad = || malformed(i + 1, format!("bad role line `{body}`"));
        let toks: Vec<&str> = body.split_whitespace().collect();
        let nums: Vec<usize> = toks
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != 1)
            .map(|(_, s)| s.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        if nums.is_empty() || nums[0] >= n {
            return Err(bad());
        }
        let v = nums[0];
        let (role, origin) = match (toks.get(1).copied(), nums.len()) {
            (Some("branching"), 2) => (Role::Branching, Origin::Vertex(nums[1])),
            (Some("subdivision"), 3) => (
                Role::Subdivision,
                Origin::Edge(Pair::try_new(nums[1], nums[2]).map_err(|_| bad())?),
            ),
            (Some("pendant"), 2) => (Role::Pendant, Origin::PendantOf(nums[1])),
            _ => return Err(bad()),
        };
        roles[v] = Some(role);
        origins[v] = Some(origin);
    }
    let roles: Vec<Role> = roles
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| malformed(0, format!("vertex {v} has no role"))))
        .collect::<Result<_, _>>()?;
    let origins: Vec<Origin> = origins.into_iter().map(Option::unwrap).collect();
    let branching = roles.iter().filter(|r| **r == Role::Branching).count();
    let pendants = roles.iter().filter(|r| **r == Role::Pendant).count();
    let budget = match branching {
        0 => 0,
        b => (pendants / b).saturating_sub(3),
    };
    Ok(GadgetGraph {
        graph,
        roles,
        origins,
        budget,
    })
}
