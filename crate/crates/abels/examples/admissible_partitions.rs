//! Explores the sign-vector group of a defining pair and the admissible
//! partitions it generates, including the audit of the even-n overlap
//! family where admissibility genuinely restricts the search.
//!
//! Run with: cargo run --example admissible_partitions

use abels::invariants::{
    admissible_partitions, is_admissible, minimal_essential_dimension, overlap_pair,
    partition_from_signs, sign_group, Engine, Partition,
};

fn main() {
    let pair = overlap_pair(2, false);
    let v = pair.derived_vector();
    println!("pair: w1 = {:?}, w2 = {:?}", pair.w1(), pair.w2());
    println!(
        "derived vector: {:?}",
        v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );

    let e = sign_group(&pair);
    println!("\nsign group E (order {}):", e.len());
    for s in &e {
        println!("  {s}  ->  {}", partition_from_signs(pair.points(), &[*s]));
    }

    let parts = admissible_partitions(&pair, Engine::Search);
    println!("\nadmissible partitions ({} total):", parts.len());
    for p in &parts {
        let of_v = p.is_partition_of(&v);
        let ed = if of_v {
            format!("ed = {}", p.essential_dimension(&v).unwrap())
        } else {
            "not a partition of w".into()
        };
        println!("  {p}  ({ed})");
    }

    // The minimal-ed pairing partition is admissible under the literal
    // definitions, witnessed by two sign vectors of E.
    let pairing = Partition::from_one_based(5, vec![vec![1, 5], vec![2, 4], vec![3]]).unwrap();
    println!(
        "\npairing partition {} admissible: {}",
        pairing,
        is_admissible(&pairing, &pair)
    );

    for engine in [Engine::Search, Engine::Oracle] {
        let med = minimal_essential_dimension(&pair, engine);
        println!(
            "minimal essential dimension ({engine:?}): m = {} via {}",
            med.m, med.witness
        );
    }

    let doubled = overlap_pair(2, true);
    let med = minimal_essential_dimension(&doubled, Engine::Search);
    println!(
        "doubled pair (every partition admissible): m = {} via {}",
        med.m, med.witness
    );
}
