//! Exact stable-colouring counts on boards small enough to enumerate.

use crush_count::grid::{build_candy_grid, GridSpec};
use crush_count::oracle::{
    exact_chromatic_polynomial_points, exact_count, exact_count_by_symmetry,
    exact_level_probabilities, prefix_stable_counts, DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_WINDOW_BUDGET,
};

fn main() -> crush_count::Result<()> {
    println!(
        "{:>6} {:>3} {:>14} {:>12}",
        "grid", "c", "stable", "fraction"
    );
    for (rows, cols, c) in [
        (1, 3, 2),
        (2, 3, 2),
        (3, 3, 2),
        (3, 3, 3),
        (3, 4, 2),
        (4, 4, 3),
    ] {
        let h = build_candy_grid(GridSpec::new(rows, cols, 3)?)?;
        let count = exact_count(&h, c, DEFAULT_ENUMERATION_BUDGET)?;
        assert_eq!(
            count.stable_count,
            exact_count_by_symmetry(&h, c, DEFAULT_ENUMERATION_BUDGET)?
        );
        println!(
            "{:>6} {c:>3} {:>14} {:>12.6}",
            format!("{rows}x{cols}"),
            count.stable_count,
            count.ell
        );
    }

    let line = build_candy_grid(GridSpec::new(1, 3, 3)?)?;
    println!("\n1x3 at c = 2..6 (c^3 - c):");
    for point in exact_chromatic_polynomial_points(&line, &[2, 3, 4, 5, 6], 1000) {
        let point = point?;
        println!("  c = {}: {}", point.colors, point.stable_count);
    }

    // Too many colourings to enumerate, but the per-prefix counts only need a
    // window of the last 2 * cols cells.
    let h = build_candy_grid(GridSpec::new(4, 4, 3)?)?;
    let counts = prefix_stable_counts(&h, 5, DEFAULT_WINDOW_BUDGET)?;
    println!(
        "\n4x4, c = 5: {} stable colourings of 5^16",
        counts.last().unwrap()
    );
    let levels = exact_level_probabilities(&h, 5, DEFAULT_WINDOW_BUDGET)?;
    let active: Vec<String> = levels
        .iter()
        .filter(|&&p| p < 1.0)
        .map(|p| format!("{p:.4}"))
        .collect();
    println!("active level probabilities: {}", active.join(" "));
    Ok(())
}
