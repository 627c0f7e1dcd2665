use rand::Rng;
use rayon::prelude::*;

use super::{with_workers, McReport};
use crate::coloring::monochromatic;
use crate::error::{Error, Result};
use crate::grid::Hypergraph;
use crate::sampler::{Purpose, RngStream};

/// Samples per random stream. Fixed so results do not depend on scheduling.
const BLOCK: u64 = 4096;

/// Naive estimate of `ell` from `samples` uniform colourings.
///
/// Vertices are coloured in order and a sample is abandoned as soon as the
/// vertex just coloured completes a monochromatic edge; the remaining colours
/// could not make it stable.
pub fn monte_carlo_estimate(
    h: &Hypergraph,
    c: u32,
    samples: u64,
    master_seed: u64,
    workers: usize,
) -> Result<McReport> {
    if c == 0 {
        return Err(Error::InvalidParameter(
            "colour count must be positive".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "at least one sample is required".into(),
        ));
    }
    let blocks = samples.div_ceil(BLOCK);
    let hits: u64 = with_workers(workers, || {
        (0..blocks)
            .into_par_iter()
            .map(|block| {
                let start = block * BLOCK;
                let len = BLOCK.min(samples - start);
                let mut rng = RngStream::new(master_seed, Purpose::MonteCarlo, 0, block).rng();
                let mut colors = vec![0u32; h.vertex_count()];
                (0..len)
                    .filter(|_| draw_is_stable(h, c, &mut rng, &mut colors))
                    .count() as u64
            })
            .sum()
    })?;

    let ell_hat = hits as f64 / samples as f64;
    let relative_error_estimate =
        (hits > 0).then(|| ((1.0 - ell_hat) / (ell_hat * samples as f64)).sqrt());
    Ok(McReport {
        samples,
        hits,
        ell_hat,
        relative_error_estimate,
    })
}

fn draw_is_stable<R: Rng>(h: &Hypergraph, c: u32, rng: &mut R, colors: &mut [u32]) -> bool {
    for v in 0..h.vertex_count() {
        colors[v] = rng.gen_range(0..c);
        if h.edges_ending_at(v)
            .iter()
            .any(|&e| monochromatic(h.edges()[e].vertices(), colors))
        {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_candy_grid, GridSpec};

    fn grid(rows: usize, cols: usize, k: usize) -> Hypergraph {
        build_candy_grid(GridSpec::new(rows, cols, k).unwrap()).unwrap()
    }

    #[test]
    fn edgeless_is_always_stable() {
        let r = monte_carlo_estimate(&grid(2, 2, 3), 3, 1000, 1, 1).unwrap();
        assert_eq!((r.hits, r.ell_hat), (1000, 1.0));
        assert_eq!(r.relative_error_estimate, Some(0.0));
    }

    #[test]
    fn single_edge_fraction() {
        let n = 1_000_000;
        let r = monte_carlo_estimate(&grid(1, 3, 3), 2, n, 7, 0).unwrap();
        // ell = 3/4, 3 sigma = 3 sqrt(ell(1-ell)/N)
        let sigma = (0.75f64 * 0.25 / n as f64).sqrt();
        assert!((r.ell_hat - 0.75).abs() < 3.0 * sigma, "{}", r.ell_hat);
        assert!((r.ell_hat - 0.75).abs() < 0.002);
    }

    #[test]
    fn no_hits_leaves_relative_error_absent() {
        let r = monte_carlo_estimate(&grid(3, 3, 3), 1, 100, 0, 1).unwrap();
        assert_eq!((r.hits, r.relative_error_estimate), (0, None));
    }

    #[test]
    fn independent_of_worker_count() {
        let h = grid(4, 4, 3);
        let a = monte_carlo_estimate(&h, 3, 50_000, 99, 1).unwrap();
        let b = monte_carlo_estimate(&h, 3, 50_000, 99, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(monte_carlo_estimate(&grid(1, 3, 3), 0, 10, 0, 1).is_err());
        assert!(monte_carlo_estimate(&grid(1, 3, 3), 2, 0, 0, 1).is_err());
    }
}
