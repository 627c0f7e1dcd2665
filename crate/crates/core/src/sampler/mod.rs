//! Moser-Tardos sampling of stable colourings.
//!
//! Start from a uniformly random colouring; while some edge is monochromatic,
//! pick one according to the [`SelectionRule`] and redraw its vertices
//! independently and uniformly. The default rule always picks the first
//! monochromatic edge in lexicographic order.
//!
//! Output uniformity: for edge sets that are pairwise disjoint, or that lie on
//! a single line, the lexicographic rule produces exactly uniform stable
//! colourings. On two-dimensional grids it does not: the exact output law on a
//! 3x3 grid with 3 colours is about 0.016 from uniform in total variation (see
//! the sampler tests). [`SelectionRule::LexicographicClosure`] redraws the
//! whole variable set of the event "this edge is the first monochromatic one"
//! and is exactly uniform on every instance, at a cost that grows like
//! rejection sampling on the prefix.

mod stream;

pub use stream::{Purpose, RngStream, StreamKey};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{monochromatic, Coloring};
use crate::error::{Error, Result};
use crate::grid::{prefix_subhypergraph, Hypergraph};
use crate::lll::expected_resample_bound;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionRule {
    /// First monochromatic edge by lowest minimum vertex, horizontal first.
    #[default]
    LexicographicFirst,
    /// First monochromatic edge in storage order. Not uniformity-certified.
    FirstFound,
    /// Like `LexicographicFirst`, but also redraws every vertex of every edge
    /// ordered before the chosen one. Exactly uniform; expensive.
    LexicographicClosure,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleStats {
    pub resample_count: u64,
    pub initial_assignments: usize,
    pub budget_exceeded: bool,
}

/// `ceil(1000 * (1 + B))` where `B` is the expected-resampling bound of `h`.
pub fn default_budget(h: &Hypergraph) -> u64 {
    (1000.0 * (1.0 + expected_resample_bound(h))).ceil() as u64
}

/// A configured sampler for one hypergraph.
#[derive(Clone, Copy, Debug)]
pub struct MoserTardos<'a> {
    h: &'a Hypergraph,
    num_colors: u32,
    rule: SelectionRule,
    budget: u64,
}

impl<'a> MoserTardos<'a> {
    pub fn new(h: &'a Hypergraph, num_colors: u32) -> Result<Self> {
        if num_colors == 0 || (num_colors == 1 && h.edge_count() > 0) {
            return Err(Error::TooFewColors { colors: num_colors });
        }
        Ok(Self {
            h,
            num_colors,
            rule: SelectionRule::default(),
            budget: default_budget(h),
        })
    }

    pub fn with_rule(mut self, rule: SelectionRule) -> Self {
        self.rule = rule;
        self
    }

    /// `None` keeps the default budget.
    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        if let Some(b) = budget {
            self.budget = b;
        }
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn hypergraph(&self) -> &'a Hypergraph {
        self.h
    }

    /// Draws the initial uniform colouring and returns a run that can be
    /// stepped one resampling at a time.
    pub fn start<R: Rng + ?Sized>(&self, rng: &mut R) -> MtRun<'a> {
        let colors = (0..self.h.vertex_count())
            .map(|_| rng.gen_range(0..self.num_colors))
            .collect();
        MtRun {
            h: self.h,
            rule: self.rule,
            num_colors: self.num_colors,
            colors,
            cursor: 0,
            resamples: 0,
            scratch: Vec::new(),
        }
    }

    /// Runs to completion or until the budget is spent. The colouring is
    /// `None` exactly when `stats.budget_exceeded` is set.
    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> (Option<Coloring>, SampleStats) {
        let mut run = self.start(rng);
        let mut stats = SampleStats {
            resample_count: 0,
            initial_assignments: self.h.vertex_count(),
            budget_exceeded: false,
        };
        loop {
            if run.resamples >= self.budget {
                if run.find_violation().is_some() {
                    stats.resample_count = run.resamples;
                    stats.budget_exceeded = true;
                    return (None, stats);
                }
                break;
            }
            if run.step(rng).is_none() {
                break;
            }
        }
        stats.resample_count = run.resamples;
        (Some(Coloring::from_raw(run.colors, self.num_colors)), stats)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Coloring, SampleStats)> {
        match self.run(rng) {
            (Some(col), stats) => Ok((col, stats)),
            (None, _) => Err(Error::SamplerBudgetExceeded {
                budget: self.budget,
                level: None,
            }),
        }
    }

    /// Raw-colour variant used by the estimators.
    pub(crate) fn sample_raw<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<(Vec<u32>, u64)> {
        match self.run(rng) {
            (Some(col), stats) => Some((col.into_colors(), stats.resample_count)),
            (None, _) => None,
        }
    }
}

/// An in-progress Moser-Tardos run.
#[derive(Clone, Debug)]
pub struct MtRun<'a> {
    h: &'a Hypergraph,
    rule: SelectionRule,
    num_colors: u32,
    colors: Vec<u32>,
    // Every edge ranked below `cursor` (in the rule's order) is known to be
    // non-monochromatic.
    cursor: usize,
    resamples: u64,
    scratch: Vec<bool>,
}

impl MtRun<'_> {
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn resamples(&self) -> u64 {
        self.resamples
    }

    fn edge_at(&self, rank: usize) -> usize {
        match self.rule {
            SelectionRule::FirstFound => rank,
            _ => self.h.lex_order()[rank],
        }
    }

    /// Rank and index of the edge the rule would resample next.
    fn find_violation(&mut self) -> Option<(usize, usize)> {
        let edges = self.h.edges();
        for rank in self.cursor..edges.len() {
            let e = self.edge_at(rank);
            if monochromatic(edges[e].vertices(), &self.colors) {
                self.cursor = rank;
                return Some((rank, e));
            }
        }
        self.cursor = edges.len();
        None
    }

    /// Performs one resampling step and returns the edge that triggered it,
    /// or `None` if the colouring is already stable.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<usize> {
        let (rank, e) = self.find_violation()?;
        let c = self.num_colors;
        match self.rule {
            SelectionRule::LexicographicFirst | SelectionRule::FirstFound => {
                for &v in self.h.edges()[e].vertices() {
                    self.colors[v] = rng.gen_range(0..c);
                }
                self.cursor = match self.rule {
                    SelectionRule::FirstFound => self.h.storage_floor(e),
                    _ => self.h.lex_floor(e),
                };
            }
            SelectionRule::LexicographicClosure => {
                self.scratch.clear();
                self.scratch.resize(self.h.vertex_count(), false);
                for &f in &self.h.lex_order()[..=rank] {
                    for &v in self.h.edges()[f].vertices() {
                        self.scratch[v] = true;
                    }
                }
                for (v, &hit) in self.scratch.iter().enumerate() {
                    if hit {
                        self.colors[v] = rng.gen_range(0..c);
                    }
                }
                self.cursor = 0;
            }
        }
        self.resamples += 1;
        Some(e)
    }
}

/// Samples a stable colouring of `h` with the lexicographic rule, drawing
/// randomness from `stream`.
pub fn mt_sample(
    h: &Hypergraph,
    c: u32,
    stream: &RngStream,
    budget: Option<u64>,
) -> Result<(Coloring, SampleStats)> {
    MoserTardos::new(h, c)?
        .with_budget(budget)
        .sample(&mut stream.rng())
}

/// Samples a member of the level set `Y_t`: the first `t` vertices form a
/// stable colouring of the prefix sub-hypergraph, the rest are uniform.
pub fn mt_sample_prefix(
    h: &Hypergraph,
    t: usize,
    c: u32,
    stream: &RngStream,
    budget: Option<u64>,
) -> Result<(Coloring, SampleStats)> {
    let prefix = prefix_subhypergraph(h, t)?;
    let mut rng = stream.rng();
    let (prefix_col, stats) = MoserTardos::new(&prefix, c)?
        .with_budget(budget)
        .sample(&mut rng)?;
    let mut colors = prefix_col.into_colors();
    colors.extend((t..h.vertex_count()).map(|_| rng.gen_range(0..c)));
    Ok((
        Coloring::from_raw(colors, c),
        SampleStats {
            initial_assignments: h.vertex_count(),
            ..stats
        },
    ))
}
