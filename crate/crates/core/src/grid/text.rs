//! Line-oriented hypergraph text format.
//!
//! ```text
//! # comment
//! V 4
//! E 0 1 2
//! E 1 2 3
//! ```
//!
//! The first non-comment line declares the vertex count; every following
//! non-comment line lists the 0-based ids of one edge. All edges must have the
//! same size. Blank lines are ignored.

use std::fmt::Write as _;

use super::{Hyperedge, Hypergraph, Orientation};
use crate::error::{Error, Result};

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges: Vec<Hyperedge> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap();
        match (tag, vertex_count) {
            ("V", None) => {
                let count = tokens
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "missing vertex count"))?;
                let count = count
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex count {count:?}")))?;
                if tokens.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens after vertex count"));
                }
                vertex_count = Some(count);
            }
            ("V", Some(_)) => return Err(Error::parse(line_no, "duplicate V line")),
            ("E", None) => return Err(Error::parse(line_no, "edge before the V line")),
            ("E", Some(n)) => {
                let ids = tokens
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| Error::parse(line_no, format!("bad vertex id {tok:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if ids.is_empty() {
                    return Err(Error::parse(line_no, "edge without vertices"));
                }
                if let Some(&bad) = ids.iter().find(|&&v| v >= n) {
                    return Err(Error::parse(
                        line_no,
                        format!("vertex id {bad} out of range 0..{n}"),
                    ));
                }
                if let Some(first) = edges.first() {
                    if first.len() != ids.len() {
                        return Err(Error::parse(
                            line_no,
                            format!(
                                "non-uniform edge size: {} vertices, expected {}",
                                ids.len(),
                                first.len()
                            ),
                        ));
                    }
                }
                let edge = Hyperedge::new(ids, Orientation::Generic)
                    .map_err(|_| Error::parse(line_no, "duplicate vertex within an edge"))?;
                edges.push(edge);
            }
            (other, _) => {
                return Err(Error::parse(line_no, format!("unknown record {other:?}")));
            }
        }
    }

    let vertex_count = vertex_count.ok_or_else(|| Error::parse(0, "missing V line"))?;
    Hypergraph::new(vertex_count, edges)
}

/// Writes `h` in the text format, edges sorted by (largest vertex, vertex list).
pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut edges: Vec<&Hyperedge> = h.edges().iter().collect();
    edges.sort_by(|a, b| {
        a.max_vertex()
            .cmp(&b.max_vertex())
            .then_with(|| a.vertices().cmp(b.vertices()))
    });
    let mut out = String::new();
    if let Some(spec) = h.grid() {
        let _ = writeln!(out, "# grid {}x{} k={}", spec.rows, spec.cols, spec.k);
    }
    let _ = writeln!(out, "V {}", h.vertex_count());
    for edge in edges {
        out.push('E');
        for v in edge.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}
