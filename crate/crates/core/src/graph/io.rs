//! Whitespace-separated edge lists: one `u v` pair per line, `#` comments.

use std::fmt::Write as _;
use std::path::Path;

use super::{Graph, GraphError};

pub fn parse_edge_list(text: &str, vertex_count: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| GraphError::Parse {
            line: idx + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let mut next_id = || -> Result<usize, GraphError> {
            let tok = fields
                .next()
                .ok_or_else(|| parse_err("expected two vertex ids".into()))?;
            tok.parse::<usize>()
                .map_err(|e| parse_err(format!("bad vertex id {tok:?}: {e}")))
        };
        let u = next_id()?;
        let v = next_id()?;
        if fields.next().is_some() {
            return Err(parse_err("trailing fields after vertex pair".into()));
        }
        edges.push((u, v));
    }
    Graph::from_edges(vertex_count, &edges)
}

pub fn read_edge_list(path: &Path, vertex_count: usize) -> Result<Graph, GraphError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text, vertex_count)
}

/// Serializes edges with `u < v` in lexicographic order. The leading comment
/// line records the vertex count so isolated trailing vertices are visible.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices {} edges {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
