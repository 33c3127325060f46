//! Solvers for the four modification problems.
//!
//! | prefix      | vertex removal              | edge removal / completion / editing |
//! |-------------|-----------------------------|-------------------------------------|
//! | `E*`        | [`solve_sigma1`]            | [`solve_sigma1`]                    |
//! | `A*`        | [`solve_pi1`] (hitting set) | [`solve_edge_sigma2`]               |
//! | `E*A*`      | [`solve_vertex_sigma3`]     | [`solve_edge_sigma2`]               |
//! | `E*A*E*`    | [`solve_vertex_sigma3`]     | unsupported                         |
//! | otherwise   | unsupported                 | unsupported                         |
//!
//! Completion is solved as removal on the complement graph with the
//! complemented formula. [`dispatch`] applies this table; [`brute_force`] is
//! the exhaustive reference used to test it.
//!
//! Every solver re-checks its certificate with the model checker before
//! returning it and fails with [`SolveError::Verification`] if the check does
//! not hold.

mod brute;
mod edge;
mod hitting;
mod sigma1;
mod vertex;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use thiserror::Error;

use crate::formula::{Formula, FormulaError};
use crate::graph::{complement, delete_vertices, edit_edges, EditMode, Graph, GraphError, PairSet, VertexSet};
use crate::modelcheck::{models, EvalError};

pub use brute::brute_force;
pub use edge::{solve_edge_sigma2, EdgeMode};
pub use hitting::{
    extract_hitting_family, find_sunflower, kernelize_hitting_family, min_hitting_set, solve_pi1,
    sunflower_bound, HittingFamily, KernelOutcome,
};
pub use sigma1::solve_sigma1;
pub use vertex::solve_vertex_sigma3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{method} needs a prefix of the form {expected}, found `{found}`")]
    Shape {
        method: Method,
        expected: &'static str,
        found: String,
    },
    #[error("{method} does not solve {variant}")]
    Variant { method: Method, variant: Variant },
    #[error("certificate from {method} failed verification: {detail}")]
    Verification { method: Method, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    VertexRemoval,
    EdgeRemoval,
    EdgeCompletion,
    EdgeEditing,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::VertexRemoval,
        Variant::EdgeRemoval,
        Variant::EdgeCompletion,
        Variant::EdgeEditing,
    ];

    pub fn is_edge(self) -> bool {
        self != Variant::VertexRemoval
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::VertexRemoval => "vertex-removal",
            Variant::EdgeRemoval => "edge-removal",
            Variant::EdgeCompletion => "edge-completion",
            Variant::EdgeEditing => "edge-editing",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vertex" | "vertex-removal" => Ok(Variant::VertexRemoval),
            "removal" | "edge-removal" => Ok(Variant::EdgeRemoval),
            "completion" | "edge-completion" => Ok(Variant::EdgeCompletion),
            "editing" | "edge-editing" => Ok(Variant::EdgeEditing),
            other => Err(format!(
                "unknown variant `{other}` (expected vertex, removal, completion or editing)"
            )),
        }
    }
}

/// Which algorithm produced an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Sigma1,
    VertexBranching,
    EdgeBranching,
    HittingSet,
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Sigma1 => "sigma1",
            Method::VertexBranching => "vertex-branching",
            Method::EdgeBranching => "edge-branching",
            Method::HittingSet => "hitting-set",
            Method::BruteForce => "brute-force",
        })
    }
}

/// `(variant, G, phi, k)`: can `G` be turned into a model of `phi` with at
/// most `k` modifications of the given kind?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModificationInstance {
    pub variant: Variant,
    pub graph: Graph,
    pub formula: Formula,
    pub k: usize,
}

impl ModificationInstance {
    /// Fails if the formula has free variables.
    pub fn new(variant: Variant, graph: Graph, formula: Formula, k: usize) -> Result<Self, SolveError> {
        formula.require_sentence()?;
        Ok(ModificationInstance {
            variant,
            graph,
            formula,
            k,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Vertices(VertexSet),
    Pairs(PairSet),
}

impl Certificate {
    pub fn len(&self) -> usize {
        match self {
            Certificate::Vertices(s) => s.len(),
            Certificate::Pairs(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The modified graph. Vertex deletion renumbers the survivors densely.
    pub fn apply(&self, g: &Graph, variant: Variant) -> Result<Graph, SolveError> {
        let out = match (self, variant) {
            (Certificate::Vertices(s), Variant::VertexRemoval) => delete_vertices(g, s)?,
            (Certificate::Pairs(f), Variant::EdgeRemoval) => edit_edges(g, f, EditMode::Remove)?,
            (Certificate::Pairs(f), Variant::EdgeCompletion) => edit_edges(g, f, EditMode::Add)?,
            (Certificate::Pairs(f), Variant::EdgeEditing) => edit_edges(g, f, EditMode::Toggle)?,
            (_, variant) => {
                return Err(SolveError::Verification {
                    method: Method::BruteForce,
                    detail: format!("certificate kind does not match {variant}"),
                })
            }
        };
        Ok(out)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Vertices(s) => {
                let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            Certificate::Pairs(p) => {
                let items: Vec<String> = p.iter().map(|e| e.to_string()).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
        }
    }
}

/// Counters recorded during a search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search-tree nodes (one per recursive call).
    pub nodes: u64,
    /// Tuples on which the formula was evaluated to look for a violation.
    pub tuples_examined: u64,
    /// Iterations of the outer loop over the existential block.
    pub outer_tuples: u64,
    /// Largest certificate size on the current path.
    pub max_depth: usize,
    /// Largest number of children of one node.
    pub max_branching: usize,
    /// Expansion leaves reported by the model checker.
    pub matrix_evaluations: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    pub(crate) fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.tuples_examined += other.tuples_examined;
        self.outer_tuples += other.outer_tuples;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.max_branching = self.max_branching.max(other.max_branching);
        self.matrix_evaluations += other.matrix_evaluations;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub certificate: Certificate,
    pub method: Method,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Yes(Solution),
    No { method: Method, stats: SearchStats },
    Unsupported { reason: String },
}

impl Outcome {
    /// `Some(true)` for YES, `Some(false)` for NO.
    pub fn answer(&self) -> Option<bool> {
        match self {
            Outcome::Yes(_) => Some(true),
            Outcome::No { .. } => Some(false),
            Outcome::Unsupported { .. } => None,
        }
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Yes(s) => Some(s),
            _ => None,
        }
    }

    pub fn stats(&self) -> Option<&SearchStats> {
        match self {
            Outcome::Yes(s) => Some(&s.stats),
            Outcome::No { stats, .. } => Some(stats),
            Outcome::Unsupported { .. } => None,
        }
    }
}

/// Whether applying `cert` to `g` yields a model of `f` within budget `k`.
pub fn verify_certificate(
    g: &Graph,
    f: &Formula,
    k: usize,
    variant: Variant,
    cert: &Certificate,
) -> Result<bool, SolveError> {
    if cert.len() > k {
        return Ok(false);
    }
    let h = match cert.apply(g, variant) {
        Ok(h) => h,
        Err(SolveError::Graph(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(models(&h, f, &[], None)?)
}

/// Verifies `cert` and wraps it in a YES outcome.
pub(crate) fn accept(
    g: &Graph,
    f: &Formula,
    k: usize,
    variant: Variant,
    cert: Certificate,
    method: Method,
    stats: SearchStats,
) -> Result<Outcome, SolveError> {
    if !verify_certificate(g, f, k, variant, &cert)? {
        return Err(SolveError::Verification {
            method,
            detail: format!("{variant} by {cert} does not give a model within budget {k}"),
        });
    }
    Ok(Outcome::Yes(Solution {
        certificate: cert,
        method,
        stats,
    }))
}

/// All `r`-tuples over `0..n` in lexicographic order, indexed.
pub(crate) fn tuple_at(mut index: usize, n: usize, r: usize) -> Vec<usize> {
    let mut t = vec![0; r];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

pub(crate) fn tuple_count(n: usize, r: usize) -> usize {
    n.checked_pow(r as u32).expect("tuple count overflows usize")
}

/// Runs `work` on indices `0..count` and returns the result of the smallest
/// index for which it yields `Some`, exactly as a sequential scan would.
/// Workers skip indices above the best one found so far.
pub(crate) fn first_success<T: Send>(
    count: usize,
    threads: usize,
    work: impl Fn(usize, &mut SearchStats) -> Result<Option<T>, SolveError> + Sync,
) -> Result<(Option<T>, SearchStats), SolveError> {
    let mut stats = SearchStats::default();
    if threads <= 1 || count <= 1 {
        for i in 0..count {
            if let Some(t) = work(i, &mut stats)? {
                return Ok((Some(t), stats));
            }
        }
        return Ok((None, stats));
    }
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let found: Mutex<Option<(usize, T)>> = Mutex::new(None);
    let error: Mutex<Option<SolveError>> = Mutex::new(None);
    let totals = Mutex::new(SearchStats::default());
    std::thread::scope(|scope| {
        for _ in 0..threads.min(count) {
            scope.spawn(|| {
                let mut local = SearchStats::default();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= count || i > best.load(Ordering::Relaxed) {
                        break;
                    }
                    match work(i, &mut local) {
                        Ok(Some(t)) => {
                            best.fetch_min(i, Ordering::Relaxed);
                            let mut slot = found.lock().unwrap();
                            if slot.as_ref().is_none_or(|(j, _)| i < *j) {
                                *slot = Some((i, t));
                            }
                        }
                        Ok(None) => {}
                        Err(e) => {
                            error.lock().unwrap().get_or_insert(e);
                            best.store(0, Ordering::Relaxed);
                            break;
                        }
                    }
                }
                totals.lock().unwrap().merge(&local);
            });
        }
    });
    if let Some(e) = error.into_inner().unwrap() {
        return Err(e);
    }
    stats.merge(&totals.into_inner().unwrap());
    Ok((found.into_inner().unwrap().map(|(_, t)| t), stats))
}

/// Options for [`dispatch_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Run [`brute_force`] when no algorithm applies to the prefix.
    pub brute_force_fallback: bool,
    /// Worker threads for the outer loop of the branching solvers. Answers and
    /// certificates do not depend on it; search counters may.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            brute_force_fallback: false,
            threads: 1,
        }
    }
}

/// Solves `inst` with the strongest method its prefix admits.
pub fn dispatch(inst: &ModificationInstance) -> Result<Outcome, SolveError> {
    dispatch_with(inst, &SolveOptions::default())
}

pub fn dispatch_with(inst: &ModificationInstance, opts: &SolveOptions) -> Result<Outcome, SolveError> {
    inst.formula.require_sentence()?;
    let f = &inst.formula;
    let g = &inst.graph;
    let k = inst.k;
    let prefix = f.quantifier_string();
    let existential = !prefix.contains('A');
    let universal = !prefix.is_empty() && !prefix.contains('E');
    let outcome = match inst.variant {
        Variant::VertexRemoval if existential => solve_sigma1(g, f, k, inst.variant)?,
        Variant::VertexRemoval if universal => solve_pi1(g, f, k)?,
        Variant::VertexRemoval if f.split_eae().is_some() => vertex::solve(g, f, k, opts.threads)?,
        Variant::VertexRemoval => Outcome::Unsupported {
            reason: format!(
                "prefix `{prefix}` is not of the form E*A*E*; vertex removal is W[2]-hard \
                 for some formulas with prefix AEA"
            ),
        },
        _ if existential => solve_sigma1(g, f, k, inst.variant)?,
        _ if f.split_ea().is_some() => match inst.variant {
            Variant::EdgeRemoval => edge::solve(g, f, k, EdgeMode::Removal, opts.threads)?,
            Variant::EdgeEditing => edge::solve(g, f, k, EdgeMode::Editing, opts.threads)?,
            _ => completion_by_duality(g, f, k, opts.threads)?,
        },
        _ => Outcome::Unsupported {
            reason: format!(
                "prefix `{prefix}` is not of the form E*A*; {} is W[2]-hard for some \
                 formulas with prefix AE",
                inst.variant
            ),
        },
    };
    match outcome {
        Outcome::Unsupported { .. } if opts.brute_force_fallback => brute_force(inst),
        other => Ok(other),
    }
}

/// Completion to `f` on `g` as removal to the complemented formula on the
/// complement graph; the pairs carry over unchanged.
fn completion_by_duality(g: &Graph, f: &Formula, k: usize, threads: usize) -> Result<Outcome, SolveError> {
    let gc = complement(g);
    let fc = crate::formula::complement_formula(f);
    match edge::solve(&gc, &fc, k, EdgeMode::Removal, threads)? {
        Outcome::Yes(sol) => accept(g, f, k, Variant::EdgeCompletion, sol.certificate, sol.method, sol.stats),
        other => Ok(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert_eq!("vertex".parse::<Variant>().unwrap(), Variant::VertexRemoval);
        assert!("delete".parse::<Variant>().is_err());
    }

    #[test]
    fn routing() {
        let cases = [
            ("A u. A v. E w. (u = v) | (u ~ v) | ((u ~ w) & (v ~ w))", Variant::VertexRemoval, Some(Method::VertexBranching)),
            ("A u. A v. !(u ~ v)", Variant::VertexRemoval, Some(Method::HittingSet)),
            ("E x. E y. x ~ y", Variant::VertexRemoval, Some(Method::Sigma1)),
            ("A x. E y. A z. x ~ y | y = z", Variant::VertexRemoval, None),
            ("A u. A v. !(u ~ v)", Variant::EdgeCompletion, Some(Method::EdgeBranching)),
            ("A u. E v. u ~ v", Variant::EdgeRemoval, None),
            ("E x. E y. x ~ y", Variant::EdgeEditing, Some(Method::Sigma1)),
        ];
        for (text, variant, method) in cases {
            let f = parse(text).unwrap();
            let inst = ModificationInstance::new(variant, Graph::path(4), f, 3).unwrap();
            let out = dispatch(&inst).unwrap();
            match (out, method) {
                (Outcome::Unsupported { reason }, None) => assert!(reason.contains("W[2]-hard")),
                (Outcome::Yes(s), Some(m)) => assert_eq!(s.method, m, "{text}"),
                (Outcome::No { method: got, .. }, Some(m)) => assert_eq!(got, m, "{text}"),
                (out, m) => panic!("{text}: {out:?} vs {m:?}"),
            }
        }
    }

    #[test]
    fn fallback_to_brute_force() {
        let f = parse("A x. E y. A z. x ~ y | y = z").unwrap();
        let inst = ModificationInstance::new(Variant::VertexRemoval, Graph::path(3), f, 2).unwrap();
        let opts = SolveOptions {
            brute_force_fallback: true,
            threads: 1,
        };
        let out = dispatch_with(&inst, &opts).unwrap();
        assert!(out.answer().is_some());
        assert!(out.stats().is_some());
    }

    #[test]
    fn instances_must_be_sentences() {
        let f = parse("free x; E y. x ~ y").unwrap();
        assert!(ModificationInstance::new(Variant::VertexRemoval, Graph::new(2), f, 0).is_err());
    }

    #[test]
    fn first_success_matches_sequential() {
        let work = |i: usize, s: &mut SearchStats| -> Result<Option<usize>, SolveError> {
            s.nodes += 1;
            Ok((i % 7 == 5 || i == 40).then_some(i * 10))
        };
        for threads in [1, 2, 4, 8] {
            let (found, _) = first_success(100, threads, work).unwrap();
            assert_eq!(found, Some(50));
            let (none, _) = first_success(5, threads, work).unwrap();
            assert_eq!(none, None);
        }
    }

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<Vec<usize>> = (0..tuple_count(3, 2)).map(|i| tuple_at(i, 3, 2)).collect();
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(all[8], vec![2, 2]);
        assert_eq!(tuple_count(0, 0), 1);
        assert_eq!(tuple_at(0, 0, 0), Vec::<usize>::new());
    }
}
