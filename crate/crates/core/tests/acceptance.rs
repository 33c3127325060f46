//! End-to-end acceptance checks. Each test prints one `criterion N ...: PASS`
//! or `FAIL` line to stderr (visible without `--nocapture`) and then asserts.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use fogm_core::corpus::{self, Entry};
use fogm_core::formula::{build_vertex_formula, classify, Formula, PrefixClass};
use fogm_core::graph::{random_graph, Graph, Role, VertexSet};
use fogm_core::reductions::{cross_compose_clique, edge_to_vertex, removal_to_completion};
use fogm_core::solvers::{
    extract_hitting_family, kernelize_hitting_family, min_hitting_set, solve_edge_sigma2,
    solve_vertex_sigma3, sunflower_bound, EdgeMode, HittingFamily, KernelOutcome,
};
use fogm_core::{
    brute_force, dispatch_with, models, Certificate, ModificationInstance, Outcome, SearchStats,
    SolveOptions, Variant,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: usize, title: &str, failures: &[String], detail: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    writeln!(err, "criterion {id} ({title}): {status} {detail}").unwrap();
    for f in failures.iter().take(10) {
        writeln!(err, "  criterion {id}: {f}").unwrap();
    }
    assert!(failures.is_empty(), "criterion {id} failed with {} problems", failures.len());
}

/// Every graph on exactly `n` vertices, one per edge subset.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |mask| Graph::from_edge_mask(n, mask))
}

fn graphs_up_to(n: usize) -> impl Iterator<Item = Graph> {
    (0..=n).flat_map(all_graphs)
}

fn inst(variant: Variant, g: &Graph, f: &Formula, k: usize) -> ModificationInstance {
    ModificationInstance::new(variant, g.clone(), f.clone(), k).unwrap()
}

fn yes(o: &Outcome) -> bool {
    o.answer().expect("solver returned UNSUPPORTED")
}

fn with_fallback() -> SolveOptions {
    SolveOptions {
        brute_force_fallback: true,
        ..SolveOptions::default()
    }
}

/// Applies a certificate without going through the library: vertex sets by
/// rebuilding the induced subgraph, pair sets by rewriting the edge set.
fn apply_by_hand(g: &Graph, variant: Variant, cert: &Certificate) -> Result<Graph, String> {
    let n = g.vertex_count();
    match (variant, cert) {
        (Variant::VertexRemoval, Certificate::Vertices(s)) => {
            if s.iter().any(|&v| v >= n) {
                return Err(format!("vertex out of range in {cert}"));
            }
            let keep: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
            let mut edges = Vec::new();
            for (i, &a) in keep.iter().enumerate() {
                for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                    if g.has_edge(a, b) {
                        edges.push((i, j));
                    }
                }
            }
            Ok(Graph::from_edges(keep.len(), &edges).unwrap())
        }
        (_, Certificate::Pairs(f)) => {
            let mut edges: BTreeSet<(usize, usize)> =
                g.edges().iter().map(|p| (p.low(), p.high())).collect();
            for p in f {
                let e = (p.low(), p.high());
                let present = edges.contains(&e);
                match variant {
                    Variant::EdgeRemoval if !present => return Err(format!("{e:?} is not an edge")),
                    Variant::EdgeCompletion if present => return Err(format!("{e:?} is already an edge")),
                    _ => {}
                }
                if present {
                    edges.remove(&e);
                } else {
                    edges.insert(e);
                }
            }
            let edges: Vec<(usize, usize)> = edges.into_iter().collect();
            Ok(Graph::from_edges(n, &edges).unwrap())
        }
        _ => Err(format!("certificate {cert} does not fit {variant}")),
    }
}

fn has_clique(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
        (0..n).all(|a| (a + 1..n).all(|b| m & (1 << a) == 0 || m & (1 << b) == 0 || g.has_edge(a, b)))
    })
}

fn min_vertex_cover(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|m| g.edges().iter().all(|p| m & (1 << p.low()) != 0 || m & (1 << p.high()) != 0))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

/// Smallest hitting set size by trying every subset of the universe.
fn min_hitting_by_subsets(fam: &HittingFamily) -> usize {
    let universe: Vec<usize> = fam.universe.iter().copied().collect();
    let masks: Vec<u64> = fam
        .sets
        .iter()
        .map(|s| s.iter().map(|v| 1u64 << universe.iter().position(|u| u == v).unwrap()).sum())
        .collect();
    (0u64..1 << universe.len())
        .filter(|h| masks.iter().all(|m| m & h != 0))
        .map(|h| h.count_ones() as usize)
        .min()
        .unwrap_or(usize::MAX)
}

fn hittable(sets: &[VertexSet], k: usize) -> bool {
    let universe: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    let universe: Vec<usize> = universe.into_iter().collect();
    (0u64..1 << universe.len())
        .filter(|h| h.count_ones() as usize <= k)
        .any(|h| {
            sets.iter()
                .all(|s| s.iter().any(|v| h & (1 << universe.iter().position(|u| u == v).unwrap()) != 0))
        })
}

const VERTEX_CORPUS: [Entry; 4] = [
    corpus::VERTEX_COVER,
    corpus::DIAMETER_TWO,
    corpus::CLIQUE_NEIGHBORHOOD,
    corpus::NO_ISOLATED,
];

/// Corpus formulas whose prefix reads `E*A*`.
fn edge_corpus() -> Vec<Entry> {
    corpus::ALL
        .iter()
        .copied()
        .filter(|e| e.formula().split_ea().is_some())
        .collect()
}

#[test]
fn criterion_01_vertex_branching_matches_brute_force() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for entry in VERTEX_CORPUS {
        let f = entry.formula();
        for g in graphs_up_to(5) {
            for k in 0..=3 {
                let fast = yes(&solve_vertex_sigma3(&g, &f, k).unwrap());
                let slow = yes(&brute_force(&inst(Variant::VertexRemoval, &g, &f, k)).unwrap());
                count += 1;
                if fast != slow {
                    failures.push(format!("{} k={k} {:?}: branching {fast}, brute {slow}", entry.name, g.edges()));
                }
            }
        }
    }
    verdict(
        1,
        "vertex oracle equivalence",
        &failures,
        &format!("{count} instances, {} disagreements, {:.1?}", failures.len(), start.elapsed()),
    );
}

#[test]
fn criterion_02_edge_branching_matches_brute_force() {
    let mut failures = Vec::new();
    let mut count = 0;
    let entries = edge_corpus();
    for entry in &entries {
        let f = entry.formula();
        for g in graphs_up_to(4) {
            for k in 0..=3 {
                for (mode, variant) in [
                    (EdgeMode::Removal, Variant::EdgeRemoval),
                    (EdgeMode::Editing, Variant::EdgeEditing),
                ] {
                    let fast = yes(&solve_edge_sigma2(&g, &f, k, mode).unwrap());
                    let slow = yes(&brute_force(&inst(variant, &g, &f, k)).unwrap());
                    count += 1;
                    if fast != slow {
                        failures.push(format!("{} {variant} k={k} {:?}: branching {fast}, brute {slow}", entry.name, g.edges()));
                    }
                }
            }
        }
    }
    let names: Vec<&str> = entries.iter().map(|e| e.name).collect();
    verdict(
        2,
        "edge oracle equivalence",
        &failures,
        &format!("{count} instances over {names:?}, {} disagreements", failures.len()),
    );
}

#[test]
fn criterion_03_certificates_reverify() {
    let mut failures = Vec::new();
    let mut yes_count = 0;
    for entry in corpus::ALL {
        let f = entry.formula();
        for g in graphs_up_to(4) {
            for variant in Variant::ALL {
                for k in 0..=2 {
                    let out = dispatch_with(&inst(variant, &g, &f, k), &with_fallback()).unwrap();
                    let Some(sol) = out.solution() else { continue };
                    yes_count += 1;
                    let ok = sol.certificate.len() <= k
                        && apply_by_hand(&g, variant, &sol.certificate)
                            .map(|h| models(&h, &f, &[], None).unwrap())
                            .unwrap_or(false);
                    if !ok {
                        failures.push(format!(
                            "{} {variant} k={k} {:?}: certificate {} by {}",
                            entry.name,
                            g.edges(),
                            sol.certificate,
                            sol.method
                        ));
                    }
                }
            }
        }
    }
    verdict(
        3,
        "certificate validity",
        &failures,
        &format!("{yes_count} YES outcomes, {} failed re-verification", failures.len()),
    );
}

#[test]
fn criterion_04_complement_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let trials = 1200;
    for _ in 0..trials {
        let n = rng.gen_range(0..=6);
        let g = random_graph(n, rng.gen_range(0.2..0.8), &mut rng);
        let entry = *corpus::ALL.choose(&mut rng).unwrap();
        let k = rng.gen_range(0..=3);
        let removal = inst(Variant::EdgeRemoval, &g, &entry.formula(), k);
        let completion = removal_to_completion(&removal).unwrap();
        let a = yes(&dispatch_with(&removal, &with_fallback()).unwrap());
        let b = yes(&brute_force(&completion).unwrap());
        if a != b {
            failures.push(format!("{} k={k} {:?}: removal {a}, completion {b}", entry.name, g.edges()));
        }
    }
    verdict(
        4,
        "complement duality",
        &failures,
        &format!("{trials} random instances, {} disagreements", failures.len()),
    );
}

#[test]
fn criterion_05_edge_to_vertex_reduction() {
    let start = Instant::now();
    let f = corpus::NO_ISOLATED.formula();
    let mut failures = Vec::new();
    let mut count = 0;
    for g in graphs_up_to(4) {
        for k in 0..=2 {
            let red = edge_to_vertex(&g, &f, k).unwrap();
            let a = yes(&brute_force(&inst(Variant::EdgeRemoval, &g, &f, k)).unwrap());
            let b = yes(&brute_force(&red.instance).unwrap());
            count += 1;
            if a != b {
                failures.push(format!("k={k} {:?}: edge removal {a}, vertex removal {b}", g.edges()));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 250;
    for _ in 0..trials {
        let entry = *corpus::ALL
            .iter()
            .filter(|e| e.formula().is_forall_containing())
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .unwrap();
        let f = entry.formula();
        let n = rng.gen_range(1..=4);
        let g = random_graph(n, 0.5, &mut rng);
        let k = rng.gen_range(0..=2);
        let red = edge_to_vertex(&g, &f, k).unwrap();
        let mut pendants = red.gadget.vertices_with_role(Role::Pendant);
        pendants.shuffle(&mut rng);
        let drop: VertexSet = pendants.into_iter().take(rng.gen_range(0..=k)).collect();
        let shrunk = Certificate::Vertices(drop.clone())
            .apply(&red.gadget.graph, Variant::VertexRemoval)
            .unwrap();
        let original = models(&g, &f, &[], None).unwrap();
        let rewritten = models(&shrunk, &red.formulas.gamma, &[], None).unwrap();
        if original != rewritten {
            failures.push(format!(
                "{} k={k} {:?} minus pendants {drop:?}: G {original}, gadget {rewritten}",
                entry.name,
                g.edges()
            ));
        }
    }
    verdict(
        5,
        "edge-to-vertex reduction",
        &failures,
        &format!(
            "{count} exhaustive instances, {trials} pendant-deletion trials, {} disagreements, {:.1?}",
            failures.len(),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_06_vertex_formula_class() {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for entry in corpus::ALL {
        let f = entry.formula();
        if !f.is_forall_containing() {
            continue;
        }
        let before = classify(&f);
        let after = classify(&build_vertex_formula(&f).unwrap().psi);
        let target = PrefixClass::new(before.level + 1, before.side);
        let member = after.is_subclass_of(&target);
        lines.push(format!("{}: {before} -> {after}", entry.name));
        if after != target {
            failures.push(format!(
                "{}: {before} became {after}, expected exactly {target} (contained in it: {member})",
                entry.name
            ));
        }
    }
    verdict(6, "prefix class of the vertex formula", &failures, &lines.join("; "));
}

#[test]
fn criterion_07_hitting_set_pipeline() {
    let vc = corpus::VERTEX_COVER.formula();
    let mut failures = Vec::new();
    let mut graphs = 0;
    for g in graphs_up_to(5) {
        graphs += 1;
        let fam = extract_hitting_family(&g, &vc).unwrap();
        let by_search = (0..=g.vertex_count())
            .find(|&k| min_hitting_set(&fam, k).is_some())
            .unwrap();
        let by_subsets = min_hitting_by_subsets(&fam);
        let out = brute_force(&inst(Variant::VertexRemoval, &g, &vc, g.vertex_count())).unwrap();
        let deletion = out.solution().unwrap().certificate.len();
        if by_search != deletion || by_subsets != deletion {
            failures.push(format!(
                "{:?}: hitting set {by_search} (subsets {by_subsets}), deletion {deletion}",
                g.edges()
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let families = 600;
    let mut shrunk = 0;
    for _ in 0..families {
        let r = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=3);
        let universe = rng.gen_range(r..=9);
        let count = rng.gen_range(0..=80);
        let sets: Vec<VertexSet> = (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=r);
                let mut pool: Vec<usize> = (0..universe).collect();
                pool.shuffle(&mut rng);
                pool.into_iter().take(size).collect()
            })
            .collect();
        let fam = HittingFamily::new((0..universe).collect(), sets);
        let expected = hittable(&fam.sets, k);
        let bound = sunflower_bound(fam.max_set_size(), k);
        match kernelize_hitting_family(&fam, k) {
            KernelOutcome::No if expected => failures.push(format!("k={k} {:?}: kernel says NO", fam.sets)),
            KernelOutcome::No => {}
            KernelOutcome::Kernel(kernel) => {
                if kernel.sets.len() < fam.sets.len() {
                    shrunk += 1;
                }
                if hittable(&kernel.sets, k) != expected {
                    failures.push(format!("k={k} {:?}: kernel changes hittability", fam.sets));
                }
                if kernel.sets.len() > bound {
                    failures.push(format!("k={k}: kernel has {} sets, bound {bound}", kernel.sets.len()));
                }
            }
        }
    }
    verdict(
        7,
        "hitting-set pipeline",
        &failures,
        &format!("{graphs} graphs, {families} random families ({shrunk} shrunk by the kernel)"),
    );
}

fn check_shape(failures: &mut Vec<String>, what: &str, stats: &SearchStats, k: usize, branching: usize, outer: u64) {
    if stats.max_depth > k {
        failures.push(format!("{what}: depth {} > k = {k}", stats.max_depth));
    }
    if stats.max_branching > branching {
        failures.push(format!("{what}: branching {} > {branching}", stats.max_branching));
    }
    if stats.outer_tuples > outer {
        failures.push(format!("{what}: {} outer tuples > {outer}", stats.outer_tuples));
    }
}

#[test]
fn criterion_08_search_shape() {
    let mut failures = Vec::new();
    let mut solved = 0;
    for entry in VERTEX_CORPUS {
        let f = entry.formula();
        let (r, s, _) = f.split_eae().unwrap();
        for g in graphs_up_to(5) {
            let n = g.vertex_count();
            for k in 0..=3 {
                let out = solve_vertex_sigma3(&g, &f, k).unwrap();
                solved += 1;
                let what = format!("vertex {} k={k} {:?}", entry.name, g.edges());
                check_shape(&mut failures, &what, out.stats().unwrap(), k, s, (n as u64).pow(r as u32));
            }
        }
    }
    for entry in edge_corpus() {
        let f = entry.formula();
        let (r, s) = f.split_ea().unwrap();
        let pairs = (r + s) * (r + s).saturating_sub(1) / 2;
        for g in graphs_up_to(4) {
            let n = g.vertex_count();
            for k in 0..=3 {
                for mode in [EdgeMode::Removal, EdgeMode::Editing] {
                    let out = solve_edge_sigma2(&g, &f, k, mode).unwrap();
                    solved += 1;
                    let what = format!("edge {mode:?} {} k={k} {:?}", entry.name, g.edges());
                    check_shape(&mut failures, &what, out.stats().unwrap(), k, pairs, (n as u64).pow(r as u32));
                }
            }
        }
    }
    verdict(
        8,
        "search-shape instrumentation",
        &failures,
        &format!("{solved} solved instances, {} violations", failures.len()),
    );
}

#[test]
fn criterion_09_cross_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let clique_nb = corpus::CLIQUE_NEIGHBORHOOD.formula();
    let mut failures = Vec::new();
    let mut yes_batches = 0;
    let batches = 100;
    for _ in 0..batches {
        let t = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=n);
        let batch: Vec<(Graph, usize)> = (0..t)
            .map(|_| (random_graph(n, rng.gen_range(0.3..0.9), &mut rng), k))
            .collect();
        let composed = cross_compose_clique(&batch).unwrap();
        let expected = batch.iter().any(|(g, k)| has_clique(g, *k));
        let got = yes(&solve_vertex_sigma3(&composed.graph, &clique_nb, composed.k).unwrap());
        yes_batches += usize::from(expected);
        let single = cross_compose_clique(&batch[..1]).unwrap();
        if got != expected {
            failures.push(format!("t={t} n={n} k={k}: composed {got}, OR of cliques {expected}"));
        }
        if composed.k != n - k || single.k != composed.k {
            failures.push(format!("t={t} n={n} k={k}: budget {} (single {})", composed.k, single.k));
        }
    }
    verdict(
        9,
        "cross-composition OR semantics",
        &failures,
        &format!("{batches} batches ({yes_batches} YES), {} disagreements", failures.len()),
    );
}

#[test]
fn criterion_10_petersen_vertex_cover() {
    let g = Graph::petersen();
    let vc = corpus::VERTEX_COVER.formula();
    let oracle = min_vertex_cover(&g);
    let start = Instant::now();
    let six = solve_vertex_sigma3(&g, &vc, 6).unwrap();
    let five = solve_vertex_sigma3(&g, &vc, 5).unwrap();
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if oracle != 6 {
        failures.push(format!("independent cover search found {oracle}"));
    }
    if six.answer() != Some(true) {
        failures.push("k = 6 is not YES".into());
    }
    if five.answer() != Some(false) {
        failures.push("k = 5 is not NO".into());
    }
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    let cert = six.solution().map(|s| s.certificate.to_string()).unwrap_or_default();
    verdict(
        10,
        "Petersen vertex cover",
        &failures,
        &format!("oracle {oracle}, k=6 {cert}, k=5 NO, {elapsed:.2?}"),
    );
}
