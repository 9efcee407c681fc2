//! Horosphere annuli: full subcomplexes on height windows, their reduced
//! homology, and the inclusion-induced maps whose failure of injectivity
//! drives the finiteness-length arguments.
//!
//! Run with: cargo run --example horosphere_slices

use abels::complex::{ball, build_complex, full_subcomplex, VertexPredicate};
use abels::homology::{induced_map_class, reduced_homology, SimplexSet};
use abels::lattice::{HeightFunction, Lattice, Model};
use abels::rat::rat_from_i64;

fn main() {
    let center = Lattice::standard(2, 2);
    let radius = 6;
    let b = ball(&center, radius, Model::Quotient, 100_000).unwrap();
    let x = build_complex(&b);
    let w = HeightFunction::new(vec![1, -1]).unwrap();
    println!("tree ball radius {radius}: {} classes", b.len());

    let annulus = |s: i64| {
        let pred = VertexPredicate::And(vec![
            VertexPredicate::MaxDistance(radius - 1),
            VertexPredicate::height_interval(w.clone(), rat_from_i64(-s), rat_from_i64(0)).unwrap(),
        ]);
        full_subcomplex(&x, &pred).unwrap()
    };

    println!("\ndeep annuli A_s = {{height in [-s, 0]}}:");
    for s in 0..=3 {
        let a = annulus(s);
        let h = reduced_homology(&SimplexSet::from_complex(&a)).unwrap();
        println!(
            "  s = {s}: {} vertices, rank H~0 = {}",
            a.vertices.len(),
            h.betti(0)
        );
    }

    let a1 = annulus(1);
    let a3 = annulus(3);
    let s1 = SimplexSet::from_subcomplex_in_parent_ids(&a1);
    let s3 = SimplexSet::from_subcomplex_in_parent_ids(&a3);
    let m = induced_map_class(&s1, &s3, 0).unwrap();
    println!(
        "\ninclusion A_1 -> A_3 on H~0: {} (image rank {} of {})",
        m.class, m.image_rank, m.source_betti
    );
    println!("components of the narrow annulus merge in the wide one.");

    // Rank-2 contrast: slices of the GL_3(Q_2) building are connected.
    let b3 = ball(&Lattice::standard(2, 3), 2, Model::Quotient, 100_000).unwrap();
    let x3 = build_complex(&b3);
    let w3 = HeightFunction::new(vec![1, 0, -1]).unwrap();
    let pred = VertexPredicate::And(vec![
        VertexPredicate::MaxDistance(1),
        VertexPredicate::height_interval(w3, rat_from_i64(0), rat_from_i64(3)).unwrap(),
    ]);
    let slice = full_subcomplex(&x3, &pred).unwrap();
    let h = reduced_homology(&SimplexSet::from_complex(&slice)).unwrap();
    println!(
        "\nGL_3(Q_2) deep slice, height in [0, 3]: {} vertices, rank H~0 = {}",
        slice.vertices.len(),
        h.betti(0)
    );
}
