//! The affine interval cover used to split the extended building into the
//! quotient building times a line: for weights alpha summing to 1, the
//! intervals (c_i, c_i + alpha_{i mod n}] tile the real line, and each
//! point is reconstructed exactly from its (i, beta) coordinates.
//!
//! Run with: cargo run --example interval_cover

use abels::complex::{epsilon_affine, interval_cover, interval_cover_reconstruct};
use abels::lattice::Lattice;
use abels::rat::{parse_rat, Rat};
use num::One;

fn main() {
    let half = parse_rat("1/2").unwrap();
    let alpha = vec![half.clone(), half.clone()];
    println!("alpha = (1/2, 1/2):");
    for r in ["3/10", "1/4", "-1", "17/6"] {
        let r = parse_rat(r).unwrap();
        let (i, beta) = interval_cover(&alpha, &r);
        let back = interval_cover_reconstruct(&alpha, i, &beta);
        println!("  r = {r:>5} -> (i = {i:>2}, beta = {beta}), reconstructs to {back}");
    }

    let alpha = vec![Rat::one(), parse_rat("0").unwrap()];
    let (i, beta) = interval_cover(&alpha, &half);
    println!("\nalpha = (1, 0), r = 1/2 -> (i = {i}, beta = {beta}) (zero weights are skipped)");

    // The affine epsilon on a vertical edge of the extended tree.
    let std2 = Lattice::standard(2, 2);
    let mid = epsilon_affine(&[(std2.clone(), half.clone()), (std2.scale_by_p(1), half)]).unwrap();
    println!("\nepsilon at the midpoint of the vertical edge (L0, pL0): {mid}");
}
