//! Multilevel splitting on the 9x9 board with three-in-a-row runs.
//!
//! `cargo run --release --example splitting -- [colors] [samples-per-level] [seed]`
//!
//! Defaults to 6 colours and 10 000 samples per level. The full Chernoff
//! schedule for 81 vertices at epsilon 0.1 is over 2.6e8 samples per level;
//! the practical override gives a few percent relative error.

use std::env;

use crush_count::estimator::{splitting_estimate, t_sample_schedule, SplittingOptions};
use crush_count::grid::{build_candy_grid, GridSpec};

fn main() -> crush_count::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let colors: u32 = args.first().map_or(6, |s| s.parse().expect("colour count"));
    let samples: u64 = args
        .get(1)
        .map_or(10_000, |s| s.parse().expect("samples per level"));
    let seed: u64 = args.get(2).map_or(0, |s| s.parse().expect("seed"));

    let h = build_candy_grid(GridSpec::new(9, 9, 3)?)?;
    let schedule = t_sample_schedule(h.vertex_count(), 0.1, 0.05)?;
    println!(
        "9x9, k = 3, c = {colors}: {samples} samples per level (schedule would be {schedule})"
    );

    let report = splitting_estimate(
        &h,
        colors,
        0.1,
        0.05,
        seed,
        &SplittingOptions {
            samples_per_level: Some(samples),
            ..Default::default()
        },
    )?;

    let worst = report
        .active_levels()
        .min_by(|a, b| a.c_hat.total_cmp(&b.c_hat))
        .expect("grid has edges");
    println!("active levels      {}", report.active_levels().count());
    println!(
        "smallest level     t = {} with c_t ~ {:.4}",
        worst.t, worst.c_hat
    );
    println!(
        "resamples / sample {:.3}",
        report.total_resamples as f64 / report.total_samples as f64
    );
    println!("stable fraction    {}", report.ell_mantissa_exp);
    println!("stable colourings  {}", report.count_mantissa_exp);
    println!("elapsed            {:.1}s", report.runtime.wall_time_secs);
    Ok(())
}
