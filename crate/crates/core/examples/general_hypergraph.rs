//! Counting weak colourings of a hypergraph read from text.

use crush_count::estimator::{splitting_estimate, SplittingOptions};
use crush_count::grid::{parse_hypergraph, serialize_hypergraph};
use crush_count::oracle::exact_count;

// The Fano plane: seven points, seven lines of three.
const FANO: &str = "\
# Fano plane
V 7
E 0 1 2
E 0 3 4
E 0 5 6
E 1 3 5
E 1 4 6
E 2 3 6
E 2 4 5
";

fn main() -> crush_count::Result<()> {
    let h = parse_hypergraph(FANO)?;
    println!(
        "{} vertices, {} edges, bandwidth {}",
        h.vertex_count(),
        h.edge_count(),
        h.bandwidth()
    );
    print!("{}", serialize_hypergraph(&h));

    for c in 2..=4 {
        let exact = exact_count(&h, c, 1 << 20)?;
        let est = splitting_estimate(
            &h,
            c,
            0.1,
            0.05,
            7,
            &SplittingOptions {
                samples_per_level: Some(50_000),
                ..Default::default()
            },
        )?;
        println!(
            "c = {c}: exact {} ({:.5}), splitting {:.5}",
            exact.stable_count,
            exact.ell,
            est.ell()
        );
    }
    Ok(())
}
