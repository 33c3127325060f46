use thiserror::Error;

pub use crate::formula::FormulaError;
pub use crate::graph::GraphError;
pub use crate::modelcheck::EvalError;
pub use crate::reductions::ReductionError;
pub use crate::solvers::SolveError;

/// Umbrella error for callers that mix several modules (the CLI, mostly).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
