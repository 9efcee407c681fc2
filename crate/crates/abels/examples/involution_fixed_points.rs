//! Diagonal involutions on the extended building: which lattices they fix,
//! when the fixed lattices split along the eigenspaces (always, for odd p;
//! not for p = 2), the blockwise product structure of fixed-point sets,
//! and the unipotent diagonalization of triangular involutions.
//!
//! Run with: cargo run --example involution_fixed_points

use abels::complex::{ball, product_check};
use abels::invariants::SignVector;
use abels::lattice::{diagonalize_involution, involution_analysis, Lattice, Model, PMatrix};
use abels::rat::parse_rat;

fn main() {
    let sigma = SignVector::parse("+-").unwrap();

    for p in [3u64, 2] {
        let b = ball(&Lattice::standard(p, 2), 2, Model::Extended, 100_000).unwrap();
        let mut fixed = 0;
        let mut split = 0;
        let mut fixed_nonsplit = 0;
        for v in &b.vertices {
            let r = involution_analysis(&sigma, v);
            fixed += r.fixed as usize;
            split += r.splits as usize;
            fixed_nonsplit += (r.fixed && !r.splits) as usize;
        }
        println!(
            "p = {p}: {} lattices, {} fixed, {} split, {} fixed-but-not-split",
            b.len(),
            fixed,
            split,
            fixed_nonsplit
        );
    }
    println!("(fixed = split exactly when p is odd)");

    // The recorded p = 2 witness.
    let witness = Lattice::from_basis_columns(
        2,
        &[
            vec![parse_rat("1").unwrap(), parse_rat("1").unwrap()],
            vec![parse_rat("0").unwrap(), parse_rat("2").unwrap()],
        ],
    )
    .unwrap();
    let r = involution_analysis(&sigma, &witness);
    println!(
        "\nwitness {}: fixed = {}, splits = {} (eigenspace parts are both 2 Z_2)",
        witness, r.fixed, r.splits
    );

    // Blockwise product structure over p = 3, dim 4.
    let b = ball(&Lattice::standard(3, 4), 1, Model::Extended, 100_000).unwrap();
    let f = vec![SignVector::parse("++--").unwrap()];
    println!(
        "\nproduct structure for diag(+,+,-,-) on a GL_4(Q_3) ball: {}",
        product_check(&b, &f)
    );

    // Unipotent diagonalization of an upper triangular involution,
    // produced by conjugating diag(+,-,+) with a unipotent matrix.
    let conj = PMatrix::new(
        3,
        vec![
            vec![
                parse_rat("1").unwrap(),
                parse_rat("2").unwrap(),
                parse_rat("1/3").unwrap(),
            ],
            vec![
                parse_rat("0").unwrap(),
                parse_rat("1").unwrap(),
                parse_rat("3").unwrap(),
            ],
            vec![
                parse_rat("0").unwrap(),
                parse_rat("0").unwrap(),
                parse_rat("1").unwrap(),
            ],
        ],
    )
    .unwrap();
    let d0 = PMatrix::from_sign_vector(3, &SignVector::parse("+-+").unwrap());
    let g = conj.mul(&d0).mul(&conj.inverse().unwrap());
    let g = PMatrix::new(3, g.rows().to_vec()).unwrap();
    let (u, d) = diagonalize_involution(&g).unwrap();
    println!("\ng = {g}");
    println!("u = {u}");
    println!("u^-1 g u = diag({d})");
}
