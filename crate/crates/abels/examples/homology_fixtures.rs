//! Integer simplicial homology on the standard small fixtures: spheres,
//! the projective plane with its 2-torsion, cones, and Smith normal forms.
//!
//! Run with: cargo run --example homology_fixtures

use abels::homology::{reduced_homology, smith_normal_form, SimplexSet};
use num::BigInt;

fn show(name: &str, x: &SimplexSet) {
    let h = reduced_homology(x).unwrap();
    print!("{name}: counts {:?} ->", x.counts());
    for d in &h.degrees {
        let torsion: Vec<String> = d.torsion.iter().map(|t| format!("Z/{t}")).collect();
        let mut parts = Vec::new();
        if d.betti > 0 {
            parts.push(format!("Z^{}", d.betti));
        }
        parts.extend(torsion);
        if parts.is_empty() {
            parts.push("0".into());
        }
        print!(" H~{} = {};", d.degree, parts.join(" + "));
    }
    println!();
}

fn main() {
    for (name, x, _) in abels::verify::homology_fixtures() {
        show(name, &x);
        show(&format!("cone({name})"), &x.cone());
    }

    let m: Vec<Vec<BigInt>> = vec![
        vec![BigInt::from(2), BigInt::from(4)],
        vec![BigInt::from(6), BigInt::from(8)],
    ];
    let snf = smith_normal_form(&m, true);
    println!(
        "\nSNF of [[2,4],[6,8]]: divisors {:?}, rank {}",
        snf.divisors
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>(),
        snf.rank
    );
    let (u, v) = snf.transforms.unwrap();
    println!(
        "with unimodular transforms U (det {}) and V (det {})",
        abels::hnf::det(&u),
        abels::hnf::det(&v)
    );
}
