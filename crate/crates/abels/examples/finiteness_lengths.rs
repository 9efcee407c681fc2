//! Computes the classical and Bredon finiteness lengths of the groups cut
//! out by a pair of defining vectors, for the three standard families.
//!
//! Run with: cargo run --example finiteness_lengths

use abels::invariants::{
    abels_pair, finiteness_lengths, grid_pair, minimal_essential_dimension, overlap_pair, Engine,
};

fn main() {
    println!("Abels family w1 = a_1, w2 = -a_(n+1):");
    for n in 2..=8 {
        let pair = abels_pair(n);
        let fl = finiteness_lengths(&pair);
        println!(
            "  n = {n}: classical = {}, bredon = {}",
            fl.classical, fl.bredon
        );
    }

    println!("\nGrid family w1 = 2*sum a_i, w2 = -m0*a_(n+1) + sum_(i<=m0) a_i:");
    for n in 2..=5 {
        for m0 in 1..=n {
            let med = minimal_essential_dimension(&grid_pair(m0, n), Engine::Search);
            println!("  (m0, n) = ({m0}, {n}): m = {}", med.m);
        }
    }

    println!("\nOverlap family w1 = a_1 + ... + a_(k+1), w2 = -a_(k+1) - ... - a_(2k+1):");
    for k in 1..=3 {
        let pair = overlap_pair(k, false);
        let med = minimal_essential_dimension(&pair, Engine::Search);
        println!(
            "  k = {k}: m = {} with witness {} over {} admissible partitions",
            med.m, med.witness, med.admissible_count
        );
    }
}
