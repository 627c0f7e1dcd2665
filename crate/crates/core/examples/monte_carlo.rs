//! Naive Monte Carlo: the fraction of uniform colourings that are stable.
//!
//! `cargo run --release --example monte_carlo -- [colors] [samples]`

use std::env;

use crush_count::estimator::monte_carlo_estimate;
use crush_count::grid::{build_candy_grid, GridSpec};
use crush_count::oracle::exact_count;

fn main() -> crush_count::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let colors: u32 = args.first().map_or(6, |s| s.parse().expect("colour count"));
    let samples: u64 = args
        .get(1)
        .map_or(1_000_000, |s| s.parse().expect("sample count"));

    let small = build_candy_grid(GridSpec::new(3, 4, 3)?)?;
    let exact = exact_count(&small, 2, 1 << 20)?.ell;
    let mc = monte_carlo_estimate(&small, 2, 100_000, 1, 0)?;
    println!("3x4, c = 2: exact {exact:.5}, estimate {:.5}", mc.ell_hat);

    let h = build_candy_grid(GridSpec::new(9, 9, 3)?)?;
    let mc = monte_carlo_estimate(&h, colors, samples, 0, 0)?;
    println!(
        "9x9, c = {colors}: {} / {} stable, fraction {:.4e}, relative error ~ {:.2}%",
        mc.hits,
        mc.samples,
        mc.ell_hat,
        100.0 * mc.relative_error_estimate.unwrap_or(f64::NAN)
    );

    // The relative error grows like ell^(-1/2): on larger boards ell decays
    // exponentially and so does the usefulness of this estimator.
    for side in [12, 15, 18] {
        let h = build_candy_grid(GridSpec::new(side, side, 3)?)?;
        let mc = monte_carlo_estimate(&h, colors, samples / 10, 0, 0)?;
        println!("{side}x{side}: {} hits of {}", mc.hits, mc.samples);
    }
    Ok(())
}
