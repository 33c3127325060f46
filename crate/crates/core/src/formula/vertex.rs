//! Formula half of the edge-removal to vertex-removal reduction.
//!
//! The graph half is [`crate::graph::gadgetize`]: every edge is subdivided and
//! every original vertex receives `k + 3` pendant neighbours. In that graph
//! the original ("branching") vertices are exactly the vertices with three
//! distinct neighbours, two branching vertices were adjacent iff they have a
//! common neighbour, and deleting a branching vertex leaves isolated pendants.
//! The construction below rewrites a formula about the original graph into
//! one about the gadget graph using those three facts.

use std::collections::BTreeSet;

use super::cnf::cnf_clauses;
use super::{fresh_variable, AtomKind, Formula, FormulaError, Matrix, Quantifier, Variable};

/// Output of [`build_vertex_formula`] together with its intermediate stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFormula {
    /// Final formula, including the isolated-vertex guard.
    pub psi: Formula,
    /// Formula with every original variable restricted to branching vertices.
    pub gamma: Formula,
    /// Original prefix followed by the new adjacency-witness quantifiers.
    pub alpha: Formula,
    /// Number of positive adjacency occurrences in the CNF matrix.
    pub positive_occurrences: usize,
    /// Number of negated adjacency occurrences in the CNF matrix.
    pub negative_occurrences: usize,
}

fn distinct3(r: &[Variable; 3]) -> Matrix {
    Matrix::all([
        Matrix::not(Matrix::eq(&r[0], &r[1])),
        Matrix::not(Matrix::eq(&r[0], &r[2])),
        Matrix::not(Matrix::eq(&r[1], &r[2])),
    ])
}

fn adjacent3(x: &Variable, r: &[Variable; 3]) -> Matrix {
    Matrix::all(r.iter().map(|ri| Matrix::adj(x, ri)))
}

/// Builds the vertex-removal formula for a universally-containing sentence.
///
/// Steps, in order:
/// 1. the matrix is put in CNF;
/// 2. each positive occurrence `xi ~ xj` becomes
///    `!(xi = xj) & xi ~ y & y ~ xj` with a fresh existential `y`, and each
///    negated occurrence becomes `xi = xj | !(xi ~ z) | !(z ~ xj)` with a fresh
///    universal `z`;
/// 3. the new quantifiers are appended after the original prefix, the block
///    matching the last original quantifier first (`alpha`);
/// 4. each original variable `x` gets three companions of the same quantifier
///    forcing `x` to have three distinct neighbours, conjunctively under `E`
///    and as an implication guard under `A` (`gamma`);
/// 5. `A s1` is inserted before the first universal block and `E s2` before
///    the first later existential (or at the end), and the matrix becomes
///    `s1 ~ s2 & mu` (`psi`).
pub fn build_vertex_formula(f: &Formula) -> Result<VertexFormula, FormulaError> {
    f.require_sentence()?;
    if !f.is_forall_containing() {
        return Err(FormulaError::NotForallContaining);
    }
    let mut taken: BTreeSet<String> = f
        .prefix()
        .iter()
        .map(|(_, v)| v.name().to_string())
        .collect();

    // Steps 1 and 2.
    let mut ys = Vec::new();
    let mut zs = Vec::new();
    let mut clauses = Vec::new();
    for clause in cnf_clauses(f.matrix()) {
        let mut lits = Vec::new();
        for lit in clause {
            let (a, b) = (&lit.atom.left, &lit.atom.right);
            let m = match (lit.atom.kind, lit.positive) {
                (AtomKind::Equality, _) => lit.to_matrix(),
                (AtomKind::Adjacency, true) => {
                    let y = fresh_variable(&format!("y{}", ys.len() + 1), &mut taken);
                    let m = Matrix::all([
                        Matrix::not(Matrix::eq(a, b)),
                        Matrix::adj(a, &y),
                        Matrix::adj(&y, b),
                    ]);
                    ys.push(y);
                    m
                }
                (AtomKind::Adjacency, false) => {
                    let z = fresh_variable(&format!("z{}", zs.len() + 1), &mut taken);
                    let m = Matrix::any([
                        Matrix::eq(a, b),
                        Matrix::not(Matrix::adj(a, &z)),
                        Matrix::not(Matrix::adj(&z, b)),
                    ]);
                    zs.push(z);
                    m
                }
            };
            lits.push(m);
        }
        clauses.push(Matrix::any(lits));
    }
    let chi_prime = Matrix::all(clauses);

    // Step 3.
    let exists_y = ys.iter().map(|y| (Quantifier::Exists, y.clone()));
    let forall_z = zs.iter().map(|z| (Quantifier::Forall, z.clone()));
    let sigma_prefix: Vec<(Quantifier, Variable)> = match f.prefix().last() {
        Some((Quantifier::Exists, _)) => exists_y.chain(forall_z).collect(),
        _ => forall_z.chain(exists_y).collect(),
    };
    let mut alpha_prefix = f.prefix().to_vec();
    alpha_prefix.extend(sigma_prefix.iter().cloned());
    let alpha = Formula::sentence(alpha_prefix, chi_prime.clone())?;

    // Step 4, innermost variable first.
    let mut prefix = sigma_prefix;
    let mut mu = chi_prime;
    for (q, x) in f.prefix().iter().rev() {
        let base = format!("r_{}_", x.name());
        let r = [1, 2, 3].map(|j| fresh_variable(&format!("{base}{j}"), &mut taken));
        let guard = Matrix::and(distinct3(&r), adjacent3(x, &r));
        mu = match q {
            Quantifier::Exists => Matrix::and(guard, mu),
            Quantifier::Forall => Matrix::implies(guard, mu),
        };
        let mut outer = vec![(*q, x.clone())];
        outer.extend(r.iter().map(|ri| (*q, ri.clone())));
        outer.extend(prefix);
        prefix = outer;
    }
    let gamma = Formula::sentence(prefix.clone(), mu.clone())?;

    // Step 5.
    let s1 = fresh_variable("s1", &mut taken);
    let s2 = fresh_variable("s2", &mut taken);
    let first_forall = prefix
        .iter()
        .position(|(q, _)| *q == Quantifier::Forall)
        .expect("forall-containing prefix");
    let first_exists_after = prefix[first_forall..]
        .iter()
        .position(|(q, _)| *q == Quantifier::Exists)
        .map_or(prefix.len(), |i| first_forall + i);
    let mut psi_prefix = prefix[..first_forall].to_vec();
    psi_prefix.push((Quantifier::Forall, s1.clone()));
    psi_prefix.extend_from_slice(&prefix[first_forall..first_exists_after]);
    psi_prefix.push((Quantifier::Exists, s2.clone()));
    psi_prefix.extend_from_slice(&prefix[first_exists_after..]);
    let psi = Formula::sentence(psi_prefix, Matrix::and(Matrix::adj(&s1, &s2), mu))?;

    Ok(VertexFormula {
        psi,
        gamma,
        alpha,
        positive_occurrences: ys.len(),
        negative_occurrences: zs.len(),
    })
}
