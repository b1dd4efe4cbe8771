//! Run manifests, JSON report assembly, and DOT output for branching graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::analysis::BranchingGraph;
use crate::{Error, Result};

/// Seed used when `LBREP_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x1B5EED;

pub const SEED_VAR: &str = "LBREP_SEED";

/// Parse a seed written in decimal or as `0x…` hex.
pub fn parse_seed(s: &str) -> Result<u64> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| Error::Parse(format!("bad seed {s:?}")))
}

/// The seed from the environment, or [`DEFAULT_SEED`].
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(v) => parse_seed(&v),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Everything needed to rerun a report. Wall time is only recorded on
/// request, so that equal manifests give byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub ring: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str, ring: &str, seed: u64) -> Self {
        RunManifest {
            command: command.into(),
            parameters: BTreeMap::new(),
            seed,
            ring: ring.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            wall_time_us: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.into(), value.into());
        self
    }
}

/// Serialize `body` (which must be a JSON object) with the manifest under
/// the key `"manifest"`.
pub fn with_manifest<T: Serialize>(manifest: &RunManifest, body: &T) -> Result<Value> {
    let mut v = serde_json::to_value(body).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(map) = &mut v else {
        return Err(Error::InvalidParameter("report body must be a JSON object".into()));
    };
    map.insert("manifest".into(), serde_json::to_value(manifest).map_err(|e| Error::Parse(e.to_string()))?);
    Ok(v)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn node_position(n: usize, coords: &[i64]) -> (f64, f64) {
    match coords {
        [] => (0.0, -(n as f64)),
        [a] => (*a as f64, -(n as f64)),
        [a, b, ..] => {
            let (a, b) = (*a as f64, *b as f64);
            // simple roots at 120 degrees
            (a + b / 2.0, b * 3f64.sqrt() / 2.0)
        }
    }
}

/// A DOT digraph with one node per label and one edge per restriction
/// summand. Fails if some node's outgoing edges do not account for its
/// dimension.
pub fn emit_dot(graph: &BranchingGraph) -> Result<String> {
    if graph.nodes.is_empty() {
        return Ok("digraph harmonic {}".into());
    }
    let mut out_dim = vec![0usize; graph.nodes.len()];
    for e in &graph.edges {
        out_dim[e.from] += e.multiplicity * graph.nodes[e.to].dim;
    }
    for (i, node) in graph.nodes.iter().enumerate() {
        if node.n > 1 && out_dim[i] != node.dim {
            return Err(Error::IncompleteMatch { residual: node.dim.abs_diff(out_dim[i]) });
        }
    }
    let mut s = String::from("digraph harmonic {\n  node [shape=box];\n");
    for (i, node) in graph.nodes.iter().enumerate() {
        let (x, y) = node_position(node.n, &node.coords);
        let mu: Vec<String> = node.label.mu.iter().map(ToString::to_string).collect();
        writeln!(
            s,
            "  n{i} [label=\"{}\", lambda=\"{}\", mu=\"{}\", dim={}, pos=\"{x:.3},{y:.3}!\"];",
            node.label,
            node.label.lambda,
            mu.join(","),
            node.dim
        )
        .expect("writing to a String");
    }
    for e in &graph.edges {
        let attr = if e.multiplicity > 1 { format!(" [label=\"{}\"]", e.multiplicity) } else { String::new() };
        writeln!(s, "  n{} -> n{}{attr};", e.from, e.to).expect("writing to a String");
    }
    s.push('}');
    Ok(s)
}
