//! Which `(colours, run length)` pairs satisfy the local-lemma condition.

use crush_count::lll::{check_fpras_condition, min_colors, scan_region};

fn main() -> crush_count::Result<()> {
    let region = scan_region(2..=16, 2..=8)?;
    print!("   c ");
    for k in 2..=8 {
        print!(" k={k}");
    }
    println!();
    for c in (2..=16).rev() {
        print!("{c:>4} ");
        for k in 2..=8 {
            print!(
                "  {} ",
                if region.feasible(c, k) == Some(true) {
                    '#'
                } else {
                    '.'
                }
            );
        }
        println!();
    }

    println!("\nfewest colours per run length:");
    for k in 2..=12 {
        println!("  k = {k:>2}: c >= {}", min_colors(k)?);
    }

    for c in [6, 7] {
        let v = check_fpras_condition(c, 3)?;
        println!(
            "\nc = {c}, k = 3: (1/c)^(k-1) = {:.5} vs {:.5} -> {}",
            (1.0 / c as f64).powi(2),
            v.rhs,
            if v.feasible { "feasible" } else { "infeasible" }
        );
    }
    Ok(())
}
