//! Graph modification problems whose target property is a first-order formula
//! in prenex normal form.
//!
//! The crate is organised bottom-up:
//!
//! * [`formula`]: syntax, parsing, prefix classification and the formula
//!   transformations used by the reductions.
//! * [`graph`]: simple undirected graphs, edit operations, the subdivision
//!   gadget and file formats.
//! * [`modelcheck`]: evaluation of sentences and opened formulas.
//! * [`solvers`]: bounded search trees, the polynomial existential cases, the
//!   hitting-set kernel for universal formulas, a brute-force oracle and the
//!   dispatcher that picks the strongest applicable method.
//! * [`reductions`]: edge-to-vertex reduction, removal/completion duality and
//!   the clique cross-composition generator.

pub mod corpus;
pub mod error;
pub mod formula;
pub mod graph;
pub mod modelcheck;
pub mod reductions;
pub mod report;
pub mod solvers;

pub use error::Error;
pub use formula::{
    classify, complement_formula, open, parse, to_cnf, Atom, AtomKind, Formula, Matrix,
    PrefixClass, Quantifier, Side, Variable,
};
pub use graph::{Graph, Pair, PairSet, VertexSet};
pub use modelcheck::{find_violating_tuple, models, DomainRestriction, ModelChecker};
pub use report::RunReport;
pub use solvers::{
    brute_force, dispatch, dispatch_with, Certificate, Method, ModificationInstance, Outcome,
    SearchStats, Solution, SolveOptions, Variant,
};
