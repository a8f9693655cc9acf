//! JSON graph/spec documents.
//!
//! ```json
//! {
//!   "vertices": 6,
//!   "edges": [{"from": 1, "to": 2}, {"from": 2, "to": 3, "phase": 0.5236}],
//!   "self_energies": [0, 0, 0, 0, 0, 0]
//! }
//! ```
//!
//! `phase` (default 0) is the phase acquired hopping `from → to`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hamiltonian::ChiralSpec;
use crate::scalar::Real;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    vertices: usize,
    edges: Vec<EdgeEntry>,
    #[serde(default)]
    self_energies: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    from: usize,
    to: usize,
    #[serde(default)]
    phase: f64,
}

/// Parses a config document into its graph and chiral spec.
pub fn parse_config<T: Real>(document: &str) -> Result<(Graph, ChiralSpec<T>)> {
    let doc: Document = serde_json::from_str(document).map_err(|e| Error::Config(format!("{e}")))?;
    let pairs: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e.from, e.to)).collect();
    let graph = Graph::new(doc.vertices, &pairs)?;

    let energies = match doc.self_energies {
        Some(v) if v.len() != doc.vertices => {
            return Err(Error::Config(format!("self_energies has {} entries for {} vertices", v.len(), doc.vertices)))
        }
        Some(v) => v.into_iter().map(T::lit).collect(),
        None => vec![T::zero(); doc.vertices],
    };
    let phases: Vec<((usize, usize), T)> = doc.edges.iter().map(|e| ((e.from, e.to), T::lit(e.phase))).collect();
    let spec = ChiralSpec::with_parameters(graph.clone(), &phases, energies)?;
    Ok((graph, spec))
}

/// The router graph with loop phase `θ` spread as `θ/3` along 2→3→4→2 and `γ` on the loop sites.
pub fn router_document(theta: f64, gamma: f64) -> String {
    let p = theta / 3.0;
    format!(
        r#"{{
  "vertices": 6,
  "edges": [
    {{"from": 1, "to": 2}},
    {{"from": 2, "to": 3, "phase": {p:e}}},
    {{"from": 3, "to": 4, "phase": {p:e}}},
    {{"from": 4, "to": 2, "phase": {p:e}}},
    {{"from": 3, "to": 5}},
    {{"from": 4, "to": 6}}
  ],
  "self_energies": [0, {gamma:e}, {gamma:e}, {gamma:e}, 0, 0]
}}
"#
    )
}
