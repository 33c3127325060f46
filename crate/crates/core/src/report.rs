//! Line-oriented `key=value` run reports.

use std::collections::BTreeMap;
use std::fmt;

use crate::formula::classify;
use crate::solvers::{ModificationInstance, Outcome};

/// Ordered `key=value` pairs; values never contain newlines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    entries: Vec<(String, String)>,
}

impl RunReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        let value = value.to_string().replace('\n', " ");
        self.entries.push((key.to_string(), value));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Report for a solved instance: the outcome, the inputs and the counters.
    pub fn for_outcome(inst: &ModificationInstance, outcome: &Outcome) -> Self {
        let mut r = RunReport::new();
        let answer = match outcome {
            Outcome::Yes(_) => "YES",
            Outcome::No { .. } => "NO",
            Outcome::Unsupported { .. } => "UNSUPPORTED",
        };
        r.push("outcome", answer)
            .push("variant", inst.variant)
            .push("class", classify(&inst.formula))
            .push("variables", inst.formula.variable_count())
            .push("n", inst.graph.vertex_count())
            .push("m", inst.graph.edge_count())
            .push("k", inst.k);
        match outcome {
            Outcome::Yes(sol) => {
                r.push("method", sol.method)
                    .push("certificate_size", sol.certificate.len())
                    .push("certificate", &sol.certificate)
                    .push("verified", true);
            }
            Outcome::No { method, .. } => {
                r.push("method", method);
            }
            Outcome::Unsupported { reason } => {
                r.push("reason", reason);
            }
        }
        if let Some(s) = outcome.stats() {
            r.push("nodes", s.nodes)
                .push("tuples", s.tuples_examined)
                .push("outer_tuples", s.outer_tuples)
                .push("depth", s.max_depth)
                .push("max_branching", s.max_branching)
                .push("evaluations", s.matrix_evaluations)
                .push("wall_ms", format!("{:.3}", s.elapsed.as_secs_f64() * 1e3));
        }
        r
    }

    /// Parses the output of `Display`; later keys win.
    pub fn parse(text: &str) -> BTreeMap<String, String> {
        text.lines()
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.trim().to_string(), v.to_string()))
            .collect()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
