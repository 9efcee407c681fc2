//! Canonical lattice forms over Z[1/p]: valuations, the triangular
//! representative, index and epsilon, the apartment retraction and the
//! Borel reduction.
//!
//! Run with: cargo run --example lattice_arithmetic

use abels::lattice::{act, epsilon, index, Lattice, PMatrix};
use abels::rat::{parse_rat, valuation};

fn main() {
    let p = 2;

    println!("valuations at p = 3:");
    for s in ["12", "5/9", "7", "0"] {
        let x = parse_rat(s).unwrap();
        println!("  nu({s}) = {}", valuation(&x, 3));
    }

    // Two bases of the same Z_2-lattice canonicalize identically.
    let cols_a = vec![
        vec![parse_rat("1").unwrap(), parse_rat("0").unwrap()],
        vec![parse_rat("1/2").unwrap(), parse_rat("1").unwrap()],
    ];
    let a = Lattice::from_basis_columns(p, &cols_a).unwrap();
    let cols_b = vec![
        vec![parse_rat("1").unwrap(), parse_rat("2").unwrap()],
        vec![parse_rat("3/2").unwrap(), parse_rat("1").unwrap()],
    ];
    let b = Lattice::from_basis_columns(p, &cols_b).unwrap();
    println!("\ncanonical form of {a}:");
    println!("  equal to second basis: {}", a == b);
    println!("  triangular representative: {}", a.borel_reduce());
    println!("  retraction: {:?}", a.retraction());
    println!("  epsilon: {}", epsilon(&a));

    let std2 = Lattice::standard(p, 2);
    println!("\nindex and epsilon:");
    println!("  ind(pL0, L0) = {}", index(&std2.scale_by_p(1), &std2));
    println!("  eps(L0) = {}", epsilon(&std2));
    println!("  eps(pL0) = {}", epsilon(&std2.scale_by_p(1)));

    // Equivariance of epsilon under the extended action.
    let g = PMatrix::new(
        p,
        vec![
            vec![parse_rat("1").unwrap(), parse_rat("1/2").unwrap()],
            vec![parse_rat("0").unwrap(), parse_rat("4").unwrap()],
        ],
    )
    .unwrap();
    let moved = act(&g, &a).unwrap();
    println!("\nextended action by g = {g}:");
    println!("  nu(det g) = {}", valuation(&g.det(), p));
    println!(
        "  eps(gA) = {} vs eps(A) = {}",
        epsilon(&moved),
        epsilon(&a)
    );

    // The Borel reduction maps the standard lattice onto any vertex.
    let reduce = moved.borel_reduce();
    println!("\nborel reduction of gA: {reduce}");
    println!(
        "  act(reduction, L0) == gA: {}",
        act(&reduce, &std2).unwrap() == moved
    );
}
