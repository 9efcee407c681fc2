//! Builds balls in the building of GL_2(Q_p) (the (p+1)-regular tree in
//! the quotient model, a triangulated strip in the extended model) and
//! prints their height profile.
//!
//! Run with: cargo run --example tree_ball

use abels::complex::{ball, build_complex, height_histogram};
use abels::lattice::{HeightFunction, Lattice, Model};

fn main() {
    let p = 2;
    let center = Lattice::standard(p, 2);

    println!("quotient-model balls (the 3-regular tree):");
    for r in 0..=6 {
        let b = ball(&center, r, Model::Quotient, 100_000).unwrap();
        println!("  radius {r}: {} classes", b.len());
    }

    let b = ball(&center, 4, Model::Quotient, 100_000).unwrap();
    let x = build_complex(&b);
    println!(
        "\nradius-4 complex: {} vertices, {} edges (tree: no triangles)",
        x.simplex_counts()[0],
        x.simplex_counts()[1]
    );

    let w = HeightFunction::new(vec![1, -1]).unwrap();
    let hist = height_histogram(&b, &w).unwrap();
    println!("\nheight histogram for w = (1,-1):");
    for (h, count) in &hist {
        println!("  h = {h:>3}: {count}");
    }

    let e = ball(&center, 2, Model::Extended, 100_000).unwrap();
    let xe = build_complex(&e);
    println!(
        "\nextended-model radius-2 ball: {} lattices, counts {:?}",
        e.len(),
        xe.simplex_counts()
    );
    println!("flag consistency re-checked: {}", xe.verify_flags());

    // DOT export of the small tree for external rendering.
    let small = build_complex(&ball(&center, 2, Model::Quotient, 100_000).unwrap());
    let dot = small.to_dot(Some(&w));
    println!("\nDOT preview of the radius-2 tree (first lines):");
    for line in dot.lines().take(6) {
        println!("  {line}");
    }
}
