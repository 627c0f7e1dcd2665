//! Counting stable colourings of Candy Crush grids.
//!
//! A colouring of an `m x n` board with `c` colours is *stable* when no `k`
//! consecutive cells in a row or column share a colour. The boards are
//! `k`-uniform hypergraphs ([`grid`]) and stable colourings are their weak
//! proper colourings ([`coloring`]). The crate estimates how many there are:
//!
//! * [`estimator::splitting_estimate`] multiplies per-vertex level
//!   probabilities, each estimated from [`sampler::MoserTardos`] samples;
//! * [`estimator::monte_carlo_estimate`] is the naive baseline;
//! * [`oracle`] counts exactly on small boards;
//! * [`lll`] decides whether `(c, k)` lies in the local-lemma region where the
//!   sampler has a polynomial running-time bound;
//! * [`uniformity`] tests sampler output against uniform.
//!
//! ```
//! use crush_count::grid::{build_candy_grid, GridSpec};
//! use crush_count::oracle::exact_count;
//!
//! let h = build_candy_grid(GridSpec::new(2, 3, 3)?)?;
//! let count = exact_count(&h, 2, 1_000)?;
//! assert_eq!(count.stable_count, 36u32.into());
//! # Ok::<(), crush_count::Error>(())
//! ```

pub mod cli;
pub mod coloring;
pub mod error;
pub mod estimator;
pub mod grid;
pub mod lll;
pub mod oracle;
pub mod sampler;
pub mod uniformity;

pub use coloring::Coloring;
pub use error::{Error, Result};
pub use grid::{GridSpec, Hypergraph};
