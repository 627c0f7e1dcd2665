//! Builds Candy Crush grids and prints their structure.
//!
//! `cargo run --example candy_grid -- [rows] [cols] [k]`

use std::env;

use crush_count::grid::{build_candy_grid, serialize_hypergraph, GridSpec, Orientation};

fn main() -> crush_count::Result<()> {
    let args: Vec<usize> = env::args()
        .skip(1)
        .map(|s| s.parse().expect("positive integer"))
        .collect();
    let (rows, cols, k) = match args[..] {
        [r, c, k] => (r, c, k),
        _ => (9, 9, 3),
    };
    let spec = GridSpec::new(rows, cols, k)?;
    let h = build_candy_grid(spec)?;
    let horizontal = h
        .edges()
        .iter()
        .filter(|e| e.orientation() == Orientation::Horizontal)
        .count();

    println!("{rows}x{cols} grid, runs of {k}");
    println!("  vertices   {}", h.vertex_count());
    println!(
        "  edges      {} ({horizontal} horizontal, {} vertical)",
        h.edge_count(),
        h.edge_count() - horizontal
    );
    println!("  bandwidth  {}", h.bandwidth());

    let centre = spec.vertex(rows / 2, cols / 2);
    println!("\nedges through the centre cell {:?}:", spec.coords(centre));
    for &e in h.incidence(centre) {
        let edge = &h.edges()[e];
        let cells: Vec<_> = edge.vertices().iter().map(|&v| spec.coords(v)).collect();
        println!("  {:<10} {cells:?}", format!("{:?}", edge.orientation()));
    }

    println!("\nedges completed by each vertex (the level structure):");
    for r in 0..rows {
        let line: Vec<String> = (0..cols)
            .map(|c| h.edges_ending_at(spec.vertex(r, c)).len().to_string())
            .collect();
        println!("  {}", line.join(" "));
    }

    let small = build_candy_grid(GridSpec::new(3, 3, k.min(3))?)?;
    println!("\n3x3 grid in text form:\n{}", serialize_hypergraph(&small));
    Ok(())
}
