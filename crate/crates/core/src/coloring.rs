//! Colourings and the stability predicates.
//!
//! Colours are 0-based: a `c`-colouring assigns every vertex a value in `0..c`.
//! A colouring is *stable* (a weak proper colouring) when no edge is
//! monochromatic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= num_colors) {
            return Err(Error::ColorOutOfRange {
                vertex,
                color,
                colors: num_colors,
            });
        }
        Ok(Self { colors, num_colors })
    }

    /// Constant colouring, mostly useful in tests.
    pub fn uniform(len: usize, color: u32, num_colors: u32) -> Result<Self> {
        Self::new(vec![color; len], num_colors)
    }

    pub(crate) fn from_raw(colors: Vec<u32>, num_colors: u32) -> Self {
        debug_assert!(colors.iter().all(|&c| c < num_colors));
        Self { colors, num_colors }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn into_colors(self) -> Vec<u32> {
        self.colors
    }

    fn check_size(&self, h: &Hypergraph) -> Result<()> {
        if self.colors.len() == h.vertex_count() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: h.vertex_count(),
                found: self.colors.len(),
            })
        }
    }
}

/// Comma-separated colours in vertex order.
impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses the comma-separated form. The colour count is taken as one more than
/// the largest colour present.
impl FromStr for Coloring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::from_raw(Vec::new(), 1));
        }
        let colors = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidParameter(format!("bad colour {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let num_colors = colors.iter().max().map_or(1, |&m| m + 1);
        Ok(Self::from_raw(colors, num_colors))
    }
}

#[inline]
pub(crate) fn monochromatic(vertices: &[usize], colors: &[u32]) -> bool {
    let first = colors[vertices[0]];
    vertices[1..].iter().all(|&v| colors[v] == first)
}

pub fn is_monochromatic(h: &Hypergraph, col: &Coloring, edge_index: usize) -> Result<bool> {
    col.check_size(h)?;
    let edge = h.edge(edge_index)?;
    Ok(monochromatic(edge.vertices(), &col.colors))
}

pub fn is_stable(h: &Hypergraph, col: &Coloring) -> Result<bool> {
    col.check_size(h)?;
    Ok(!h
        .edges()
        .iter()
        .any(|e| monochromatic(e.vertices(), &col.colors)))
}

/// The monochromatic edge with the lowest minimum vertex, horizontal before
/// vertical on a shared minimum; `None` when `col` is stable.
pub fn first_monochromatic_edge(h: &Hypergraph, col: &Coloring) -> Result<Option<usize>> {
    col.check_size(h)?;
    Ok(first_monochromatic_from(h, &col.colors, 0))
}

pub(crate) fn first_monochromatic_from(
    h: &Hypergraph,
    colors: &[u32],
    from_rank: usize,
) -> Option<usize> {
    h.lex_order()[from_rank..]
        .iter()
        .copied()
        .find(|&e| monochromatic(h.edges()[e].vertices(), colors))
}

/// Largest `t` such that no edge lying inside the first `t` vertices is
/// monochromatic, i.e. the deepest level set the colouring belongs to.
pub fn prefix_stable_level(h: &Hypergraph, col: &Coloring) -> Result<usize> {
    col.check_size(h)?;
    Ok(h.edges()
        .iter()
        .filter(|e| monochromatic(e.vertices(), &col.colors))
        .map(|e| e.max_vertex())
        .min()
        .unwrap_or(h.vertex_count()))
}
