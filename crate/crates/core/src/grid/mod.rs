//! Candy Crush grids and general k-uniform hypergraphs.
//!
//! Vertices are identified by contiguous ids `0..|V|` and the id order is the
//! lexicographic order used everywhere else in the crate. Grid vertices are
//! numbered row-major: `id = row * cols + col`.
//!
//! Every [`Hypergraph`] carries the indices the samplers and estimators need:
//! per-vertex incidence, the edges completed by each vertex (`edges_ending_at`)
//! and the lexicographic edge order used to pick the first monochromatic edge.

mod text;

pub use text::{parse_hypergraph, serialize_hypergraph};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
    Generic,
}

/// A hyperedge: `k` distinct vertex ids in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    vertices: Vec<usize>,
    orientation: Orientation,
}

impl Hyperedge {
    /// Builds an edge from arbitrary-order ids, rejecting repeats.
    pub fn new(mut vertices: Vec<usize>, orientation: Orientation) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidHypergraph("empty hyperedge".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidHypergraph(format!(
                "hyperedge {vertices:?} repeats a vertex"
            )));
        }
        Ok(Self {
            vertices,
            orientation,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn min_vertex(&self) -> usize {
        self.vertices[0]
    }

    pub fn max_vertex(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

/// Dimensions of a Candy Crush grid: `rows x cols` cells, runs of length `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub k: usize,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize, k: usize) -> Result<Self> {
        let spec = Self { rows, cols, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let reason = if self.rows == 0 || self.cols == 0 {
            "grid dimensions must be positive"
        } else if self.k < 2 {
            "run length must be at least 2"
        } else {
            return Ok(());
        };
        Err(Error::InvalidGrid {
            rows: self.rows,
            cols: self.cols,
            k: self.k,
            reason,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn vertex(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.rows && col < self.cols);
        row * self.cols + col
    }

    pub fn coords(&self, id: usize) -> (usize, usize) {
        (id / self.cols, id % self.cols)
    }

    pub fn horizontal_edge_count(&self) -> usize {
        self.rows * (self.cols + 1).saturating_sub(self.k)
    }

    pub fn vertical_edge_count(&self) -> usize {
        self.cols * (self.rows + 1).saturating_sub(self.k)
    }
}

/// A k-uniform hypergraph with its incidence indices.
///
/// Immutable after construction. Edge indices refer to the storage order of
/// [`Hypergraph::edges`]; `lex_order` lists the same indices sorted by vertex
/// sequence, which puts the edge with the lowest minimum vertex first and, on a
/// grid, a horizontal edge before a vertical one sharing that vertex.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    vertex_count: usize,
    k: usize,
    edges: Vec<Hyperedge>,
    incidence: Vec<Vec<usize>>,
    edges_ending_at: Vec<Vec<usize>>,
    lex_order: Vec<usize>,
    lex_rank: Vec<usize>,
    // Smallest rank (in lex / storage order) of any edge sharing a vertex with
    // the given edge. Resampling an edge cannot change edges ranked below it.
    lex_floor: Vec<usize>,
    storage_floor: Vec<usize>,
    grid: Option<GridSpec>,
}

impl Hypergraph {
    /// Builds a hypergraph from edges, checking ids and uniformity.
    ///
    /// `k` is taken from the first edge; an edgeless hypergraph reports `k = 0`.
    pub fn new(vertex_count: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        let k = edges.first().map_or(0, Hyperedge::len);
        for edge in &edges {
            if edge.len() != k {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {:?} has {} vertices, expected {k}",
                    edge.vertices(),
                    edge.len()
                )));
            }
            if edge.max_vertex() >= vertex_count {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {:?} references a vertex outside 0..{vertex_count}",
                    edge.vertices()
                )));
            }
        }
        Ok(Self::with_indices(vertex_count, k, edges, None))
    }

    /// Convenience constructor from raw vertex lists.
    pub fn from_vertex_lists(vertex_count: usize, lists: Vec<Vec<usize>>) -> Result<Self> {
        let edges = lists
            .into_iter()
            .map(|v| Hyperedge::new(v, Orientation::Generic))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertex_count, edges)
    }

    fn with_indices(
        vertex_count: usize,
        k: usize,
        edges: Vec<Hyperedge>,
        grid: Option<GridSpec>,
    ) -> Self {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut edges_ending_at = vec![Vec::new(); vertex_count];
        for (i, edge) in edges.iter().enumerate() {
            for &v in edge.vertices() {
                incidence[v].push(i);
            }
            edges_ending_at[edge.max_vertex()].push(i);
        }

        let mut lex_order: Vec<usize> = (0..edges.len()).collect();
        lex_order.sort_by(|&a, &b| edges[a].vertices().cmp(edges[b].vertices()).then(a.cmp(&b)));
        let mut lex_rank = vec![0; edges.len()];
        for (rank, &e) in lex_order.iter().enumerate() {
            lex_rank[e] = rank;
        }

        let floor = |rank_of: &dyn Fn(usize) -> usize| -> Vec<usize> {
            edges
                .iter()
                .map(|edge| {
                    edge.vertices()
                        .iter()
                        .flat_map(|&v| incidence[v].iter())
                        .map(|&f| rank_of(f))
                        .min()
                        .unwrap_or(0)
                })
                .collect()
        };
        let lex_floor = floor(&|f| lex_rank[f]);
        let storage_floor = floor(&|f| f);

        Self {
            vertex_count,
            k,
            edges,
            incidence,
            edges_ending_at,
            lex_order,
            lex_rank,
            lex_floor,
            storage_floor,
            grid,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Uniform edge size (0 for an edgeless hypergraph without a grid spec).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<&Hyperedge> {
        self.edges.get(index).ok_or(Error::EdgeOutOfRange {
            index,
            count: self.edges.len(),
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn incidence(&self, vertex: usize) -> &[usize] {
        &self.incidence[vertex]
    }

    /// Edges whose largest vertex is `vertex`.
    pub fn edges_ending_at(&self, vertex: usize) -> &[usize] {
        &self.edges_ending_at[vertex]
    }

    pub fn lex_order(&self) -> &[usize] {
        &self.lex_order
    }

    pub fn lex_rank(&self, edge: usize) -> usize {
        self.lex_rank[edge]
    }

    pub(crate) fn lex_floor(&self, edge: usize) -> usize {
        self.lex_floor[edge]
    }

    pub(crate) fn storage_floor(&self, edge: usize) -> usize {
        self.storage_floor[edge]
    }

    pub fn grid(&self) -> Option<GridSpec> {
        self.grid
    }

    /// Largest `max - min` over all edges: how far back an edge can reach from
    /// the vertex that completes it.
    pub fn bandwidth(&self) -> usize {
        self.edges
            .iter()
            .map(|e| e.max_vertex() - e.min_vertex())
            .max()
            .unwrap_or(0)
    }

    /// Recomputes incidence and `edges_ending_at` from the edge list and
    /// compares them with the stored indices.
    pub fn indices_consistent(&self) -> bool {
        let fresh = Self::with_indices(self.vertex_count, self.k, self.edges.clone(), self.grid);
        fresh.incidence == self.incidence
            && fresh.edges_ending_at == self.edges_ending_at
            && fresh.lex_order == self.lex_order
    }

    /// The hypergraph on vertices `0..t` keeping every edge that lies entirely
    /// inside the prefix. Vertex and relative edge order are preserved.
    pub fn prefix(&self, t: usize) -> Result<Hypergraph> {
        prefix_subhypergraph(self, t)
    }
}

impl PartialEq for Hypergraph {
    /// Equal vertex count and edge multiset. Orientation tags, storage order
    /// and the nominal edge size of edgeless hypergraphs are ignored.
    fn eq(&self, other: &Self) -> bool {
        fn sorted(h: &Hypergraph) -> Vec<&[usize]> {
            let mut lists: Vec<&[usize]> = h.edges.iter().map(Hyperedge::vertices).collect();
            lists.sort();
            lists
        }
        self.vertex_count == other.vertex_count && sorted(self) == sorted(other)
    }
}

impl Eq for Hypergraph {}

/// Builds the `rows x cols` Candy Crush grid with all horizontal and vertical
/// runs of length `k`. Horizontal edges come first in storage order, row by row.
pub fn build_candy_grid(spec: GridSpec) -> Result<Hypergraph> {
    spec.validate()?;
    let GridSpec { rows, cols, k } = spec;
    let mut edges = Vec::with_capacity(spec.horizontal_edge_count() + spec.vertical_edge_count());
    for row in 0..rows {
        for start in 0..(cols + 1).saturating_sub(k) {
            let vertices = (start..start + k)
                .map(|col| spec.vertex(row, col))
                .collect();
            edges.push(Hyperedge {
                vertices,
                orientation: Orientation::Horizontal,
            });
        }
    }
    for col in 0..cols {
        for start in 0..(rows + 1).saturating_sub(k) {
            let vertices = (start..start + k)
                .map(|row| spec.vertex(row, col))
                .collect();
            edges.push(Hyperedge {
                vertices,
                orientation: Orientation::Vertical,
            });
        }
    }
    Ok(Hypergraph::with_indices(
        spec.vertex_count(),
        k,
        edges,
        Some(spec),
    ))
}

/// Restricts `h` to its first `t` vertices, keeping exactly the edges whose
/// largest vertex is below `t`.
pub fn prefix_subhypergraph(h: &Hypergraph, t: usize) -> Result<Hypergraph> {
    if t > h.vertex_count {
        return Err(Error::PrefixOutOfRange {
            t,
            vertex_count: h.vertex_count,
        });
    }
    let edges = h
        .edges
        .iter()
        .filter(|e| e.max_vertex() < t)
        .cloned()
        .collect();
    Ok(Hypergraph::with_indices(t, h.k, edges, None))
}
