//! Vertex removal to a universal formula as a hitting-set problem.
//!
//! For `phi = A x1 ... xr chi`, a set `S` is a solution exactly when it meets
//! the vertex set of every `r`-tuple violating `chi`. The family of those
//! sets has members of size at most `r`, so it can be shrunk with the
//! sunflower kernel for `d`-hitting set and then solved by branching on the
//! first set that is not yet hit.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use super::{accept, tuple_at, tuple_count, Certificate, Method, Outcome, SearchStats, SolveError, Variant};
use crate::formula::{open, Formula, Quantifier};
use crate::graph::{Graph, VertexSet};
use crate::modelcheck::ModelChecker;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingFamily {
    pub universe: VertexSet,
    /// Distinct nonempty sets, in increasing order.
    pub sets: Vec<VertexSet>,
}

impl HittingFamily {
    /// Deduplicates and sorts `sets`.
    pub fn new(universe: VertexSet, sets: impl IntoIterator<Item = VertexSet>) -> Self {
        let sets: BTreeSet<VertexSet> = sets.into_iter().collect();
        HittingFamily {
            universe,
            sets: sets.into_iter().collect(),
        }
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn is_hit_by(&self, s: &VertexSet) -> bool {
        self.sets.iter().all(|set| !set.is_disjoint(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    /// An equivalent family within the sunflower bound.
    Kernel(HittingFamily),
    /// No hitting set of size at most `k` exists.
    No,
}

fn universal_arity(f: &Formula) -> Result<usize, SolveError> {
    if f.prefix().iter().any(|(q, _)| *q == Quantifier::Exists) {
        return Err(SolveError::Shape {
            method: Method::HittingSet,
            expected: "A*",
            found: f.quantifier_string(),
        });
    }
    Ok(f.quantified_count())
}

/// The sets `U_v` of distinct vertices of the `r`-tuples `v` that violate the
/// matrix, for `phi = A x1 ... xr chi`.
pub fn extract_hitting_family(g: &Graph, f: &Formula) -> Result<HittingFamily, SolveError> {
    extract(g, f, &mut SearchStats::default())
}

fn extract(g: &Graph, f: &Formula, stats: &mut SearchStats) -> Result<HittingFamily, SolveError> {
    f.require_sentence()?;
    let r = universal_arity(f)?;
    let matrix = open(f, r)?;
    let mut checker = ModelChecker::new(&matrix)?;
    let n = g.vertex_count();
    let mut sets = Vec::new();
    for i in 0..tuple_count(n, r) {
        let v = tuple_at(i, n, r);
        stats.tuples_examined += 1;
        if !checker.check(g, &v)? {
            sets.push(v.into_iter().collect());
        }
    }
    stats.matrix_evaluations += checker.evaluations();
    Ok(HittingFamily::new(g.vertices().collect(), sets))
}

/// `r! * r * (k + 1)^r`: the kernel has at most `d! (k + 1)^d` sets of each
/// size `d <= r`.
pub fn sunflower_bound(r: usize, k: usize) -> usize {
    let fact: usize = (1..=r).product();
    fact * r * (k + 1).pow(r as u32)
}

/// A sunflower with `p` petals among `sets`, as (core, indices of the
/// petals). Follows the proof of the sunflower lemma: a maximal family of
/// pairwise disjoint sets either has `p` members, or some element occurs in
/// many sets and the search continues among those sets with it removed.
/// Guaranteed to succeed when `sets` holds more than `d! (p - 1)^d`
/// distinct sets of size `d`.
pub fn find_sunflower(sets: &[VertexSet], p: usize) -> Option<(VertexSet, Vec<usize>)> {
    let mut used = VertexSet::new();
    let mut disjoint = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if s.is_disjoint(&used) {
            used.extend(s.iter().copied());
            disjoint.push(i);
            if disjoint.len() == p {
                return Some((VertexSet::new(), disjoint));
            }
        }
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sets {
        for x in s.intersection(&used) {
            *counts.entry(*x).or_default() += 1;
        }
    }
    // most frequent element, smallest on ties
    let (&x, _) = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))?;
    let (indices, reduced): (Vec<usize>, Vec<VertexSet>) = sets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.contains(&x))
        .map(|(i, s)| {
            let mut t = s.clone();
            t.remove(&x);
            (i, t)
        })
        .unzip();
    if reduced.len() < p {
        return None;
    }
    let (mut core, petals) = find_sunflower(&reduced, p)?;
    core.insert(x);
    Some((core, petals.into_iter().map(|i| indices[i]).collect()))
}

/// Drops every set that strictly contains another member.
fn drop_supersets(sets: &mut BTreeSet<VertexSet>) {
    let all: Vec<VertexSet> = sets.iter().cloned().collect();
    sets.retain(|s| !all.iter().any(|t| t.len() < s.len() && t.is_subset(s)));
}

/// Sunflower kernel for hitting sets of size at most `k`.
///
/// While some size class `d` holds more than `d! (k + 1)^d` sets, a sunflower
/// with `k + 2` petals is replaced by its core: a hitting set of size `k`
/// cannot use a separate vertex for each petal, so it must meet the core. An
/// empty core therefore means NO. Sets containing another set are dropped
/// since hitting the smaller one hits them too.
pub fn kernelize_hitting_family(fam: &HittingFamily, k: usize) -> KernelOutcome {
    let mut sets: BTreeSet<VertexSet> = fam.sets.iter().cloned().collect();
    if sets.iter().any(BTreeSet::is_empty) {
        return KernelOutcome::No;
    }
    loop {
        drop_supersets(&mut sets);
        let mut by_size: BTreeMap<usize, Vec<VertexSet>> = BTreeMap::new();
        for s in &sets {
            by_size.entry(s.len()).or_default().push(s.clone());
        }
        let mut replaced = false;
        for (d, class) in by_size {
            let fact: usize = (1..=d).product();
            if class.len() <= fact * (k + 1).pow(d as u32) {
                continue;
            }
            let (core, petals) =
                find_sunflower(&class, k + 2).expect("class above the sunflower bound");
            if core.is_empty() {
                return KernelOutcome::No;
            }
            for i in petals {
                sets.remove(&class[i]);
            }
            sets.insert(core);
            replaced = true;
            break;
        }
        if !replaced {
            break;
        }
    }
    let universe = sets.iter().flatten().copied().collect();
    KernelOutcome::Kernel(HittingFamily::new(universe, sets))
}

/// Smallest-first bounded search: branch on the elements of the first set
/// not yet hit. Returns a hitting set of size at most `k` if one exists.
pub fn min_hitting_set(fam: &HittingFamily, k: usize) -> Option<VertexSet> {
    search(fam, k, &mut VertexSet::new(), &mut SearchStats::default())
}

fn search(fam: &HittingFamily, k: usize, s: &mut VertexSet, stats: &mut SearchStats) -> Option<VertexSet> {
    stats.nodes += 1;
    stats.max_depth = stats.max_depth.max(s.len());
    let Some(open) = fam.sets.iter().find(|set| set.is_disjoint(s)) else {
        return Some(s.clone());
    };
    if s.len() == k {
        return None;
    }
    stats.max_branching = stats.max_branching.max(open.len());
    for &x in open {
        s.insert(x);
        if let Some(found) = search(fam, k, s, stats) {
            return Some(found);
        }
        s.remove(&x);
    }
    None
}

/// Vertex removal to `A x1 ... xr chi` via the hitting-set family, its
/// kernel and a bounded search on the kernel.
pub fn solve_pi1(g: &Graph, f: &Formula, k: usize) -> Result<Outcome, SolveError> {
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let fam = extract(g, f, &mut stats)?;
    stats.outer_tuples = 1;
    let found = match kernelize_hitting_family(&fam, k) {
        KernelOutcome::No => None,
        KernelOutcome::Kernel(kernel) => search(&kernel, k, &mut VertexSet::new(), &mut stats),
    };
    stats.elapsed = start.elapsed();
    match found {
        Some(s) => accept(g, f, k, Variant::VertexRemoval, Certificate::Vertices(s), Method::HittingSet, stats),
        None => Ok(Outcome::No {
            method: Method::HittingSet,
            stats,
        }),
    }
}
