//! Draws stable boards with the Moser-Tardos sampler.
//!
//! `cargo run --release --example moser_tardos -- [colors] [runs]`

use std::env;

use crush_count::grid::{build_candy_grid, GridSpec};
use crush_count::lll::{check_fpras_condition, expected_resample_bound};
use crush_count::sampler::{mt_sample, Purpose, RngStream};

const CANDIES: &[u8] = b"RGBYOPWKC";

fn main() -> crush_count::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let colors: u32 = args.first().map_or(7, |s| s.parse().expect("colour count"));
    let runs: u64 = args.get(1).map_or(2000, |s| s.parse().expect("run count"));

    let spec = GridSpec::new(9, 9, 3)?;
    let h = build_candy_grid(spec)?;
    let verdict = check_fpras_condition(colors, 3)?;
    println!(
        "c = {colors}, k = 3: inside local-lemma region: {}",
        verdict.feasible
    );

    let (board, stats) = mt_sample(&h, colors, &RngStream::new(0, Purpose::Sample, 0, 0), None)?;
    println!("\na stable board after {} resamples:", stats.resample_count);
    for r in 0..spec.rows {
        let row: String = (0..spec.cols)
            .map(|c| CANDIES[board.colors()[spec.vertex(r, c)] as usize % CANDIES.len()] as char)
            .collect();
        println!("  {row}");
    }

    let counts: Vec<f64> = (0..runs)
        .map(|i| {
            let stream = RngStream::new(1, Purpose::Sample, 0, i);
            mt_sample(&h, colors, &stream, None).map(|(_, s)| s.resample_count as f64)
        })
        .collect::<crush_count::Result<_>>()?;
    let n = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let var = counts.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    println!(
        "\nresamples over {runs} runs: mean {mean:.3} (std error {:.3})",
        (var / n).sqrt()
    );
    if verdict.feasible {
        println!(
            "local-lemma bound on the mean: {:.4}",
            expected_resample_bound(&h)
        );
    }
    Ok(())
}
