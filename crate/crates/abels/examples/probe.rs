use abels::complex::*;
use abels::homology::*;
use abels::lattice::*;
use std::collections::HashSet;
use std::time::Instant;

fn main() {
    // --- Criterion 10 probe: SL2(Q2) tree, radius 6, w = (1,-1) ---
    let t0 = Instant::now();
    let b = ball(&Lattice::standard(2, 2), 6, Model::Quotient, 100_000).unwrap();
    println!("tree ball r=6: {} vertices ({:?})", b.len(), t0.elapsed());
    let x = build_complex(&b);
    let w = HeightFunction::new(vec![1, -1]).unwrap();
    let hist = height_histogram(&b, &w).unwrap();
    println!("height histogram: {:?}", hist);
    let deep = VertexPredicate::MaxDistance(5);
    for s in 0..=3i64 {
        let pred = VertexPredicate::And(vec![
            deep.clone(),
            VertexPredicate::height_interval(
                w.clone(),
                abels::rat::rat_from_i64(-s),
                abels::rat::rat_from_i64(0),
            )
            .unwrap(),
        ]);
        let sub = full_subcomplex(&x, &pred).unwrap();
        let h = reduced_homology(&SimplexSet::from_complex(&sub)).unwrap();
        println!(
            "A_{s}: {} vertices, rank H~0 = {}",
            sub.vertices.len(),
            h.betti(0)
        );
    }
    // induced map A_1 -> A_3
    let pred_s = |s: i64| {
        VertexPredicate::And(vec![
            deep.clone(),
            VertexPredicate::height_interval(
                w.clone(),
                abels::rat::rat_from_i64(-s),
                abels::rat::rat_from_i64(0),
            )
            .unwrap(),
        ])
    };
    let a1 = full_subcomplex(&x, &pred_s(1)).unwrap();
    let a3 = full_subcomplex(&x, &pred_s(3)).unwrap();
    let s1 = SimplexSet::from_subcomplex_in_parent_ids(&a1);
    let s3 = SimplexSet::from_subcomplex_in_parent_ids(&a3);
    let m = induced_map_class(&s1, &s3, 0).unwrap();
    println!("A1 -> A3 in degree 0: {:?}", m);

    // --- Criterion 11 probe: SL3(Q2) radius 2, w = (1,0,-1), [0,3] deep ---
    let t0 = Instant::now();
    let b = ball(&Lattice::standard(2, 3), 2, Model::Quotient, 50_000).unwrap();
    println!(
        "\nSL3(Q2) ball r=2: {} vertices ({:?})",
        b.len(),
        t0.elapsed()
    );
    let t0 = Instant::now();
    let x = build_complex(&b);
    println!(
        "complex counts: {:?} ({:?})",
        x.simplex_counts(),
        t0.elapsed()
    );
    let w = HeightFunction::new(vec![1, 0, -1]).unwrap();
    let hist = height_histogram(&b, &w).unwrap();
    println!("height histogram: {:?}", hist);
    let pred = VertexPredicate::And(vec![
        VertexPredicate::MaxDistance(1),
        VertexPredicate::height_interval(
            w.clone(),
            abels::rat::rat_from_i64(0),
            abels::rat::rat_from_i64(3),
        )
        .unwrap(),
    ]);
    let sub = full_subcomplex(&x, &pred).unwrap();
    let h = reduced_homology(&SimplexSet::from_complex(&sub)).unwrap();
    println!(
        "annulus [0,3] deep: {} vertices, H~0 rank = {}",
        sub.vertices.len(),
        h.betti(0)
    );
    let subset: HashSet<usize> = (0..b.len())
        .filter(|&i| {
            b.distances[i] <= 1 && {
                let v = w.eval(&b.vertices[i]);
                (0..=3).contains(&v)
            }
        })
        .collect();
    println!(
        "oracle connectivity components: {}",
        connectivity_walk(&b, &subset)
    );

    // --- Criterion 12 probe: GL4(Q3) extended radius 2 ---
    let t0 = Instant::now();
    let b = ball(&Lattice::standard(3, 4), 1, Model::Extended, 2_000_000).unwrap();
    println!(
        "\nGL4(Q3) extended ball r=1: {} vertices ({:?})",
        b.len(),
        t0.elapsed()
    );
    let t0 = Instant::now();
    let b = ball(&Lattice::standard(3, 4), 2, Model::Extended, 2_000_000).unwrap();
    println!(
        "GL4(Q3) extended ball r=2: {} vertices ({:?})",
        b.len(),
        t0.elapsed()
    );
}
