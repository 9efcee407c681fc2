//! Randomized and exhaustive property suites behind `abels verify`.
//! Each check reports pass/fail with a counterexample dump; a fixed seed
//! reproduces the identical report.

use crate::complex::{
    ball, build_complex, height_histogram, horosphere_lift, interval_cover,
    interval_cover_reconstruct, product_check,
};
use crate::hnf;
use crate::homology::{
    boundary_matrices, induced_map_class, reduced_homology, smith_normal_form, MapClass, SimplexSet,
};
use crate::invariants::{
    admissible_partitions, is_admissible, minimal_essential_dimension, partition_from_signs,
    sign_group, Engine, Partition, SignVector, VectorPair,
};
use crate::lattice::{
    act, chain_is_simplex, diagonalize_involution, epsilon, gaussian_binomial, index,
    involution_analysis, HeightFunction, Lattice, Model, NeighborContext, PMatrix,
};
use crate::rat::{pow_p, rat_from_i64, valuation, Rat, Valuation};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.into(),
            seed,
            passed: 0,
            failed: 0,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, pass: bool, detail: String) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(CheckResult {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Which suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Invariants,
    Lattice,
    Complex,
    Homology,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "invariants" => Ok(Suite::Invariants),
            "lattice" => Ok(Suite::Lattice),
            "complex" => Ok(Suite::Complex),
            "homology" => Ok(Suite::Homology),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite `{other}` (invariants|lattice|complex|homology|all)"
            )),
        }
    }
}

pub fn run_suites(suite: Suite, seed: u64) -> Vec<SuiteReport> {
    match suite {
        Suite::Invariants => vec![invariants_suite(seed)],
        Suite::Lattice => vec![lattice_suite(seed)],
        Suite::Complex => vec![complex_suite(seed)],
        Suite::Homology => vec![homology_suite(seed)],
        Suite::All => vec![
            invariants_suite(seed),
            lattice_suite(seed),
            complex_suite(seed),
            homology_suite(seed),
        ],
    }
}

/// Random valid defining pair with n+1 = points.
pub fn random_pair(rng: &mut StdRng, points: usize) -> VectorPair {
    loop {
        let mut w1: Vec<i64> = (0..points).map(|_| rng.gen_range(-3..=4)).collect();
        let mut w2: Vec<i64> = (0..points).map(|_| rng.gen_range(-4..=3)).collect();
        w1.sort_unstable_by(|a, b| b.cmp(a));
        w2.sort_unstable_by(|a, b| b.cmp(a));
        if let Ok(pair) = VectorPair::new(w1, w2) {
            return pair;
        }
    }
}

fn random_partition(rng: &mut StdRng, points: usize) -> Partition {
    let k = rng.gen_range(1..=points);
    loop {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..points {
            blocks[rng.gen_range(0..k)].push(i);
        }
        blocks.retain(|b| !b.is_empty());
        if let Ok(p) = Partition::new(points, blocks) {
            return p;
        }
    }
}

pub fn invariants_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("invariants", seed);
    let mut rng = StdRng::seed_from_u64(seed);

    // Sign groups are subgroups containing the identity.
    {
        let mut bad = None;
        for _ in 0..20 {
            let points = rng.gen_range(2..=7);
            let pair = random_pair(&mut rng, points);
            let e = sign_group(&pair);
            let set: HashSet<_> = e.iter().cloned().collect();
            if !set.contains(&SignVector::all_plus(pair.points())) {
                bad = Some(format!("identity missing for {:?}", pair));
                break;
            }
            for a in &e {
                for b in &e {
                    if !set.contains(&a.product(b)) {
                        bad = Some(format!("{a} * {b} escapes E for {:?}", pair));
                        break;
                    }
                }
            }
            if bad.is_some() {
                break;
            }
        }
        rep.record(
            "sign_group_is_subgroup",
            bad.is_none(),
            bad.unwrap_or_else(|| "20 random pairs".into()),
        );
    }

    // partition_from_signs only sees the generated subgroup.
    {
        let mut bad = None;
        for _ in 0..20 {
            let points = rng.gen_range(2..=6);
            let pair = random_pair(&mut rng, points);
            let e = sign_group(&pair);
            let n = pair.points();
            let pick: Vec<SignVector> = (0..rng.gen_range(0..=3))
                .map(|_| e[rng.gen_range(0..e.len())])
                .collect();
            // Close under products.
            let mut closure: HashSet<SignVector> = HashSet::from([SignVector::all_plus(n)]);
            loop {
                let mut grew = false;
                let items: Vec<_> = closure.iter().cloned().collect();
                for a in &items {
                    for g in &pick {
                        if closure.insert(a.product(g)) {
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            let closure: Vec<_> = closure.into_iter().collect();
            if partition_from_signs(n, &pick) != partition_from_signs(n, &closure) {
                bad = Some(format!("generators {:?}", pick));
                break;
            }
        }
        rep.record(
            "partition_from_signs_subgroup_invariance",
            bad.is_none(),
            bad.unwrap_or_else(|| "20 random generator sets".into()),
        );
    }

    // Common refinement: associative, commutative, idempotent, refines.
    {
        use crate::invariants::common_refinement;
        let mut bad = None;
        for _ in 0..30 {
            let n = rng.gen_range(2..=8);
            let a = random_partition(&mut rng, n);
            let b = random_partition(&mut rng, n);
            let c = random_partition(&mut rng, n);
            let ab_c = common_refinement(
                n,
                &[common_refinement(n, &[a.clone(), b.clone()]), c.clone()],
            );
            let a_bc = common_refinement(
                n,
                &[a.clone(), common_refinement(n, &[b.clone(), c.clone()])],
            );
            let ba = common_refinement(n, &[b.clone(), a.clone()]);
            let ab = common_refinement(n, &[a.clone(), b.clone()]);
            let aa = common_refinement(n, &[a.clone(), a.clone()]);
            if ab_c != a_bc || ab != ba || aa != a || !ab.refines(&a) || !ab.refines(&b) {
                bad = Some(format!("a={a} b={b} c={c}"));
                break;
            }
        }
        rep.record(
            "common_refinement_lattice_laws",
            bad.is_none(),
            bad.unwrap_or_else(|| "30 random triples".into()),
        );
    }

    // Refining a partition of v cannot raise the essential dimension.
    {
        let mut bad = None;
        for _ in 0..40 {
            let points = rng.gen_range(3..=6);
            let pair = random_pair(&mut rng, points);
            let v = pair.derived_vector();
            let n = pair.points();
            let e = sign_group(&pair);
            let s1 = e[rng.gen_range(0..e.len())];
            let s2 = e[rng.gen_range(0..e.len())];
            let coarse = partition_from_signs(n, &[s1]);
            let fine = partition_from_signs(n, &[s1, s2]);
            if !(coarse.is_partition_of(&v) && fine.is_partition_of(&v)) {
                continue;
            }
            let edc = coarse.essential_dimension(&v).unwrap();
            let edf = fine.essential_dimension(&v).unwrap();
            if edf > edc {
                bad = Some(format!("pair {:?} coarse {coarse} fine {fine}", pair));
                break;
            }
        }
        rep.record(
            "refinement_monotone_essential_dimension",
            bad.is_none(),
            bad.unwrap_or_else(|| "40 random refinements".into()),
        );
    }

    // 1 <= m <= n, and the two engines agree wholesale for n+1 <= 6.
    {
        let mut bad = None;
        for _ in 0..25 {
            let points = rng.gen_range(2..=6);
            let pair = random_pair(&mut rng, points);
            let med_s = minimal_essential_dimension(&pair, Engine::Search);
            let med_o = minimal_essential_dimension(&pair, Engine::Oracle);
            let parts_s = admissible_partitions(&pair, Engine::Search);
            let parts_o = admissible_partitions(&pair, Engine::Oracle);
            if med_s.m != med_o.m
                || med_s.witness != med_o.witness
                || parts_s != parts_o
                || med_s.m < 1
                || med_s.m > pair.n()
            {
                bad = Some(format!(
                    "pair {:?}: search {:?} oracle {:?}",
                    pair, med_s, med_o
                ));
                break;
            }
        }
        rep.record(
            "engine_equivalence_and_m_bounds",
            bad.is_none(),
            bad.unwrap_or_else(|| "25 random pairs, n+1 <= 6".into()),
        );
    }

    // Fully even pairs admit every partition.
    {
        let pair = VectorPair::new(vec![2, 2, 2, 0, 0], vec![0, 0, -2, -2, -2]).unwrap();
        let mut bad = None;
        for _ in 0..100 {
            let p = random_partition(&mut rng, 5);
            if !is_admissible(&p, &pair) {
                bad = Some(format!("{p}"));
                break;
            }
        }
        rep.record(
            "all_even_pairs_admit_every_partition",
            bad.is_none(),
            bad.unwrap_or_else(|| "100 random partitions".into()),
        );
    }

    // Doubling w1, w2 leaves the zero-sum blocks unchanged.
    {
        let mut bad = None;
        for _ in 0..30 {
            let points = rng.gen_range(2..=6);
            let pair = random_pair(&mut rng, points);
            let doubled = VectorPair::new(
                pair.w1().iter().map(|x| 2 * x).collect(),
                pair.w2().iter().map(|x| 2 * x).collect(),
            )
            .unwrap();
            let p = random_partition(&mut rng, pair.points());
            let v1 = pair.derived_vector();
            let v2 = doubled.derived_vector();
            if p.is_partition_of(&v1) != p.is_partition_of(&v2) {
                bad = Some(format!("pair {:?} partition {p}", pair));
                break;
            }
        }
        rep.record(
            "doubling_preserves_feasibility",
            bad.is_none(),
            bad.unwrap_or_else(|| "30 random pairs".into()),
        );
    }

    rep
}

/// Random element of GL over Z[1/p] with unit determinant valuation mix:
/// a product of integer shears, permutations and p-power diagonal scalings.
pub fn random_group_element(rng: &mut StdRng, p: u64, n: usize) -> PMatrix {
    let mut m = PMatrix::identity(p, n);
    for _ in 0..6 {
        let kind = rng.gen_range(0..3);
        let mut rows = PMatrix::identity(p, n).rows().to_vec();
        match kind {
            0 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                rows[i][j] = rat_from_i64(rng.gen_range(-3..=3)) * pow_p(p, rng.gen_range(-1..=1));
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    for r in rows.iter_mut() {
                        r.swap(i, j);
                    }
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                rows[i][i] = pow_p(p, rng.gen_range(-2..=2));
            }
        }
        let e = PMatrix::new(p, rows).unwrap();
        m = m.mul(&e);
    }
    m
}

/// Random Z_p-unimodular base change with entries in Z[1/p]: integer
/// shears, permutations, sign flips and scalings by integers prime to p.
fn random_unimodular_over_zp(rng: &mut StdRng, p: u64, n: usize) -> PMatrix {
    let units: Vec<i64> = (2..10).filter(|u| u % p as i64 != 0).collect();
    let mut m = PMatrix::identity(p, n);
    for _ in 0..6 {
        let mut rows = PMatrix::identity(p, n).rows().to_vec();
        match rng.gen_range(0..4) {
            0 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                rows[i][j] = rat_from_i64(rng.gen_range(-4..=4));
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    for r in rows.iter_mut() {
                        r.swap(i, j);
                    }
                }
            }
            2 => {
                let i = rng.gen_range(0..n);
                rows[i][i] = rat_from_i64(-1);
            }
            _ => {
                let i = rng.gen_range(0..n);
                rows[i][i] = rat_from_i64(units[rng.gen_range(0..units.len())]);
            }
        }
        m = m.mul(&PMatrix::new(p, rows).unwrap());
    }
    m
}

fn random_lattice(rng: &mut StdRng, p: u64, n: usize) -> Lattice {
    let g = random_group_element(rng, p, n);
    act(&g, &Lattice::standard(p, n)).expect("group elements are invertible")
}

pub fn lattice_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("lattice", seed);
    let mut rng = StdRng::seed_from_u64(seed);

    // Canonical form survives 500 random unimodular base changes.
    {
        let mut bad = None;
        'outer: for _ in 0..50 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let n = rng.gen_range(2..=4);
            let a = random_lattice(&mut rng, p, n);
            for _ in 0..10 {
                let u = random_unimodular_over_zp(&mut rng, p, n);
                let cols: Vec<Vec<Rat>> = a.basis_columns().iter().map(|_c| Vec::new()).collect();
                let _ = cols;
                // Change basis on the right: new columns = old basis * U.
                let old = a.basis_columns();
                let new_cols: Vec<Vec<Rat>> = (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|i| {
                                (0..n)
                                    .map(|k| &old[k][i] * u.entry(k, j))
                                    .fold(Rat::zero(), |acc, t| acc + t)
                            })
                            .collect()
                    })
                    .collect();
                let b = Lattice::from_basis_columns(p, &new_cols).unwrap();
                if b != a {
                    bad = Some(format!("p={p} n={n} lattice {a} changed to {b}"));
                    break 'outer;
                }
            }
        }
        rep.record(
            "canonical_form_base_change_invariance",
            bad.is_none(),
            bad.unwrap_or_else(|| "500 random base changes".into()),
        );
    }

    // Index: independent of the common sublattice, additive along chains.
    {
        let mut bad = None;
        for _ in 0..30 {
            let p = [2u64, 3][rng.gen_range(0..2)];
            let n = rng.gen_range(2..=3);
            let a = random_lattice(&mut rng, p, n);
            let b = random_lattice(&mut rng, p, n);
            let c = random_lattice(&mut rng, p, n);
            if index(&a, &b) + index(&b, &c) != index(&a, &c) {
                bad = Some(format!("a={a} b={b} c={c}"));
                break;
            }
            // Recompute against explicit deeper common sublattices.
            let base = index(&a, &b);
            for extra in 1..=3 {
                let deep = Lattice::diagonal(p, &vec![extra + 8; n]);
                let la = deep.nu_det() - a.nu_det();
                let lb = deep.nu_det() - b.nu_det();
                if !(deep.subset_of(&a) && deep.subset_of(&b)) || la - lb != base {
                    bad = Some(format!("sublattice choice changed ind({a}, {b})"));
                    break;
                }
            }
        }
        rep.record(
            "index_well_defined_and_additive",
            bad.is_none(),
            bad.unwrap_or_else(|| "30 random triples".into()),
        );
    }

    // Epsilon equivariance: eps(gA) = eps(A) - nu(det g)/dim.
    {
        let mut bad = None;
        for _ in 0..1000 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let n = rng.gen_range(2..=4);
            let a = random_lattice(&mut rng, p, n);
            let g = random_group_element(&mut rng, p, n);
            let nu = match valuation(&g.det(), p) {
                Valuation::Finite(v) => v,
                Valuation::Infinite => continue,
            };
            let lhs = epsilon(&act(&g, &a).unwrap());
            let rhs = epsilon(&a) - Rat::new(BigInt::from(nu), BigInt::from(n as i64));
            if lhs != rhs {
                bad = Some(format!("g={g} A={a}: {lhs} != {rhs}"));
                break;
            }
        }
        rep.record(
            "epsilon_equivariance",
            bad.is_none(),
            bad.unwrap_or_else(|| "1000 random (g, A)".into()),
        );
    }

    // Retraction: unipotent invariance and diagonal equivariance.
    {
        let mut bad = None;
        for _ in 0..200 {
            let p = [2u64, 3][rng.gen_range(0..2)];
            let n = rng.gen_range(2..=4);
            let a = random_lattice(&mut rng, p, n);
            let mut rows = PMatrix::identity(p, n).rows().to_vec();
            for i in 0..n {
                for j in (i + 1)..n {
                    rows[i][j] =
                        rat_from_i64(rng.gen_range(-4..=4)) * pow_p(p, rng.gen_range(-2..=2));
                }
            }
            let u = PMatrix::new(p, rows).unwrap();
            if act(&u, &a).unwrap().retraction() != a.retraction() {
                bad = Some(format!("unipotent u={u} moved rho of {a}"));
                break;
            }
            let exps: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let t = PMatrix::diagonal(p, exps.iter().map(|&e| pow_p(p, e)).collect()).unwrap();
            let want: Vec<i64> = a
                .retraction()
                .iter()
                .zip(&exps)
                .map(|(r, e)| r + e)
                .collect();
            if act(&t, &a).unwrap().retraction() != want {
                bad = Some(format!("diagonal t={t} equivariance failed on {a}"));
                break;
            }
        }
        rep.record(
            "retraction_equivariance",
            bad.is_none(),
            bad.unwrap_or_else(|| "200 random cases".into()),
        );
    }

    // Neighbor counts match Gaussian binomial subspace counts.
    {
        let mut bad = None;
        'nb: for p in [2u64, 3, 5] {
            for dim in [2usize, 3] {
                let ctx = NeighborContext::new(p, dim);
                let n = ctx
                    .neighbors(&Lattice::standard(p, dim), Model::Extended)
                    .len();
                let per: BigInt = (0..dim as u64)
                    .map(|k| gaussian_binomial(p, dim as u64, k))
                    .sum();
                if BigInt::from(n) != &per * 2u32 {
                    bad = Some(format!("p={p} dim={dim}: {n} neighbors"));
                    break 'nb;
                }
            }
        }
        rep.record(
            "neighbor_counts_gaussian",
            bad.is_none(),
            bad.unwrap_or_else(|| "p in {2,3,5}, dim in {2,3}".into()),
        );
    }

    // Involution theorem: exhaustive for p = 3, dim 2; p = 2 comparison.
    {
        let (ok3, total3) = involution_census(3);
        rep.record(
            "involution_fixed_iff_splits_p3",
            ok3,
            format!("{total3} lattices between p^2 L0 and p^-2 L0"),
        );
        let (splits_imply_fixed, witness) = involution_census_p2();
        rep.record(
            "involution_p2_fixed_nonsplit_witness",
            splits_imply_fixed && witness > 0,
            format!("{witness} fixed non-split lattices"),
        );
    }

    // Diagonalization round trip over Z[1/3].
    {
        let mut bad = None;
        for _ in 0..500 {
            let n = rng.gen_range(2..=4);
            let mut rows = PMatrix::identity(3, n).rows().to_vec();
            for i in 0..n {
                for j in (i + 1)..n {
                    rows[i][j] =
                        rat_from_i64(rng.gen_range(-6..=6)) * pow_p(3, rng.gen_range(-2..=2));
                }
            }
            let u = PMatrix::new(3, rows).unwrap();
            let mut minus = 0u64;
            for i in 0..n {
                if rng.gen_bool(0.5) {
                    minus |= 1 << i;
                }
            }
            let d = SignVector::new(n, minus);
            let g = u
                .mul(&PMatrix::from_sign_vector(3, &d))
                .mul(&u.inverse().unwrap());
            let g = PMatrix::new(3, g.rows().to_vec()).unwrap();
            match diagonalize_involution(&g) {
                Ok((u2, d2)) => {
                    let conj = u2.inverse().unwrap().mul(&g).mul(&u2);
                    if d2 != d
                        || !u2.is_unipotent_upper()
                        || conj != PMatrix::from_sign_vector(3, &d)
                    {
                        bad = Some(format!("g={g}: got d={d2}, want {d}"));
                        break;
                    }
                }
                Err(e) => {
                    bad = Some(format!("g={g}: {e}"));
                    break;
                }
            }
        }
        rep.record(
            "diagonalize_involution_round_trip",
            bad.is_none(),
            bad.unwrap_or_else(|| "500 random conjugated involutions".into()),
        );
    }

    // Borel reduction across a radius-2 ball.
    {
        let b = ball(&Lattice::standard(2, 2), 2, Model::Extended, 10_000).unwrap();
        let mut bad = None;
        for v in &b.vertices {
            let g = v.borel_reduce();
            if !g.is_upper_triangular() || act(&g, &Lattice::standard(2, 2)).unwrap() != *v {
                bad = Some(format!("borel_reduce failed on {v}"));
                break;
            }
        }
        rep.record(
            "borel_reduce_radius2",
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} lattices", b.len())),
        );
    }

    rep
}

/// All lattices L with p^2 L0 <= L <= p^-2 L0 in dimension 2, via
/// triangular enumeration.
fn lattices_in_box(p: u64) -> Vec<Lattice> {
    let mut out = Vec::new();
    let span = 4i64;
    for e1 in 0..=span {
        for e2 in 0..=span {
            for b in 0..p.pow(e1 as u32) {
                // Columns (p^e1, 0), (b, p^e2), then shifted by p^-2.
                let cols = vec![
                    vec![pow_p(p, e1), Rat::zero()],
                    vec![Rat::from_integer(BigInt::from(b)), pow_p(p, e2)],
                ];
                if let Ok(l) = Lattice::from_basis_columns(p, &cols) {
                    let l = l.scale_by_p(-2);
                    let lo = Lattice::standard(p, 2).scale_by_p(2);
                    let hi = Lattice::standard(p, 2).scale_by_p(-2);
                    if lo.subset_of(&l) && l.subset_of(&hi) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn involution_census(p: u64) -> (bool, usize) {
    let s = SignVector::parse("+-").unwrap();
    let lats = lattices_in_box(p);
    let total = lats.len();
    for l in lats {
        let r = involution_analysis(&s, &l);
        if r.fixed != r.splits {
            return (false, total);
        }
    }
    (true, total)
}

fn involution_census_p2() -> (bool, usize) {
    let s = SignVector::parse("+-").unwrap();
    let mut witnesses = 0;
    for l in lattices_in_box(2) {
        let r = involution_analysis(&s, &l);
        if r.splits && !r.fixed {
            return (false, witnesses);
        }
        if r.fixed && !r.splits {
            witnesses += 1;
        }
    }
    (true, witnesses)
}

pub fn complex_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("complex", seed);
    let mut rng = StdRng::seed_from_u64(seed);

    // Face closure and clique/flag agreement on small complexes.
    {
        let mut bad = None;
        let cases: Vec<(u64, usize, usize, Model)> = vec![
            (2, 2, 2, Model::Quotient),
            (3, 2, 2, Model::Quotient),
            (2, 3, 1, Model::Quotient),
            (2, 2, 2, Model::Extended),
            (3, 2, 1, Model::Extended),
            (2, 3, 1, Model::Extended),
        ];
        for (p, dim, radius, model) in cases {
            let b = ball(&Lattice::standard(p, dim), radius, model, 100_000).unwrap();
            let x = build_complex(&b);
            // Faces of every simplex are present.
            let mut closed = true;
            for k in 1..x.simplices.len() {
                for s in &x.simplices[k] {
                    for drop in 0..s.len() {
                        let face: Vec<u32> = s
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        if x.simplices[k - 1].binary_search(&face).is_err() {
                            closed = false;
                        }
                    }
                }
            }
            if !closed || !x.verify_flags() {
                bad = Some(format!("p={p} dim={dim} r={radius} model={model}"));
                break;
            }
        }
        rep.record(
            "face_closure_and_flag_consistency",
            bad.is_none(),
            bad.unwrap_or_else(|| "6 truncations".into()),
        );
    }

    // Ball sizes are homogeneous across same-type centers (type = the
    // epsilon residue modulo 1, constant on the quotient model and graded
    // on the extended one).
    {
        let base = ball(&Lattice::standard(2, 2), 3, Model::Quotient, 100_000).unwrap();
        let size1 = ball(&base.vertices[0], 1, Model::Quotient, 100_000)
            .unwrap()
            .len();
        let mut bad = None;
        for _ in 0..10 {
            let v = &base.vertices[rng.gen_range(0..base.len())];
            let s = ball(v, 1, Model::Quotient, 100_000).unwrap().len();
            if s != size1 {
                bad = Some(format!("center {v}: {s} != {size1}"));
                break;
            }
        }
        if bad.is_none() {
            let ext = ball(&Lattice::standard(2, 2), 2, Model::Extended, 100_000).unwrap();
            let mut size_by_type: std::collections::HashMap<Rat, usize> = Default::default();
            for _ in 0..10 {
                let v = &ext.vertices[rng.gen_range(0..ext.len())];
                let eps = epsilon(v);
                let frac = &eps - eps.floor();
                let s = ball(v, 1, Model::Extended, 100_000).unwrap().len();
                if *size_by_type.entry(frac.clone()).or_insert(s) != s {
                    bad = Some(format!("extended center {v} of type {frac}: {s}"));
                    break;
                }
            }
        }
        rep.record(
            "ball_size_homogeneity",
            bad.is_none(),
            bad.unwrap_or_else(|| "10 random centers in each model".into()),
        );
    }

    // Interval cover: 1000 random exact instances.
    {
        let mut bad = None;
        for _ in 0..1000 {
            let n = rng.gen_range(1..=4usize);
            // Random nonnegative rationals summing to 1.
            let mut weights: Vec<Rat> = (0..n)
                .map(|_| Rat::new(BigInt::from(rng.gen_range(0..6)), BigInt::one()))
                .collect();
            let total: Rat = weights.iter().cloned().sum();
            if total.is_zero() {
                weights[0] = Rat::one();
            }
            let total: Rat = weights.iter().cloned().sum();
            let alpha: Vec<Rat> = weights.iter().map(|w| w / &total).collect();
            let r = Rat::new(
                BigInt::from(rng.gen_range(-40..=40)),
                BigInt::from(rng.gen_range(1..=12)),
            );
            let (i, beta) = interval_cover(&alpha, &r);
            let ok_range = beta >= Rat::zero() && beta < Rat::one();
            let ok_weight = !alpha[(i.rem_euclid(n as i64)) as usize].is_zero();
            let ok_recon = interval_cover_reconstruct(&alpha, i, &beta) == r;
            // c_{i+1} - c_i = alpha_{i mod n}: probe three offsets.
            let c = |i: i64| -> Rat {
                (0..n as i64)
                    .map(|j| {
                        let idx = (i + j).rem_euclid(n as i64) as usize;
                        &alpha[idx] * Rat::new(BigInt::from(i + j), BigInt::from(n as i64))
                    })
                    .sum()
            };
            let ok_steps = (-1..=1).all(|k| {
                let i = i + k;
                c(i + 1) - c(i) == alpha[i.rem_euclid(n as i64) as usize]
            });
            // Containment in the half-open interval (c_i, c_i + alpha].
            let ci = c(i);
            let ok_contained = r > ci && r <= &ci + &alpha[(i.rem_euclid(n as i64)) as usize];
            if !(ok_range && ok_weight && ok_recon && ok_steps && ok_contained) {
                bad = Some(format!("alpha={alpha:?} r={r}: got (i={i}, beta={beta})"));
                break;
            }
        }
        rep.record(
            "interval_cover_exactness",
            bad.is_none(),
            bad.unwrap_or_else(|| "1000 random (alpha, r)".into()),
        );
    }

    // Fixed-point sets decompose blockwise for the example pairs.
    {
        let mut bad = None;
        let pairs = [
            crate::invariants::abels_pair(2),
            crate::invariants::grid_pair(1, 2),
        ];
        'pp: for pair in pairs {
            let dim = pair.points();
            let e = sign_group(&pair);
            let b = ball(&Lattice::standard(3, dim), 2, Model::Extended, 100_000).unwrap();
            for s in e.iter().filter(|s| !s.is_identity()) {
                if !product_check(&b, std::slice::from_ref(s)) {
                    bad = Some(format!("pair {:?} sign {s}", pair));
                    break 'pp;
                }
            }
        }
        rep.record(
            "fixed_set_product_structure",
            bad.is_none(),
            bad.unwrap_or_else(|| "example pairs, radius-2 extended balls".into()),
        );
    }

    // Height-slice compatibility: classes lift uniquely onto the first
    // horosphere, preserving the zero-sum height and adjacency.
    {
        let h1 = HeightFunction::new(vec![1, 0]).unwrap();
        let w = HeightFunction::new(vec![1, -1]).unwrap();
        let b = ball(&Lattice::standard(2, 2), 3, Model::Quotient, 100_000).unwrap();
        let mut bad = None;
        let lifts: Vec<Lattice> = b.vertices.iter().map(|c| horosphere_lift(c, &h1)).collect();
        let unique: HashSet<&Lattice> = lifts.iter().collect();
        if unique.len() != lifts.len() {
            bad = Some("lift not injective".into());
        } else {
            for (c, l) in b.vertices.iter().zip(&lifts) {
                if h1.eval(l) != 0 || w.eval(l) != w.eval(c) {
                    bad = Some(format!("class {c}: bad lift {l}"));
                    break;
                }
            }
            let ctx = NeighborContext::new(2, 2);
            'adj: for (i, c) in b.vertices.iter().enumerate() {
                let nbrs: HashSet<Lattice> =
                    ctx.neighbors(c, Model::Quotient).into_iter().collect();
                for (j, d) in b.vertices.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let lift_adj = chain_is_simplex(&[lifts[i].clone(), lifts[j].clone()]);
                    if nbrs.contains(d) != lift_adj {
                        bad = Some(format!("adjacency mismatch at classes {i}, {j}"));
                        break 'adj;
                    }
                }
            }
        }
        rep.record(
            "horosphere_lift_compatibility",
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} classes", b.len())),
        );
    }

    // Height histograms respect homothety invariance in the quotient model.
    {
        let w = HeightFunction::new(vec![1, 0, -1]).unwrap();
        let b = ball(&Lattice::standard(2, 3), 1, Model::Quotient, 100_000).unwrap();
        let hist = height_histogram(&b, &w).unwrap();
        let total: usize = hist.values().sum();
        rep.record(
            "height_histogram_total",
            total == b.len(),
            format!("{total} heights over {} vertices", b.len()),
        );
    }

    // Deep restriction keeps full links: every deep vertex's neighbors lie
    // in the ball.
    {
        let b = ball(&Lattice::standard(2, 2), 3, Model::Quotient, 100_000).unwrap();
        let deep = b.deep_subset(3);
        let ctx = NeighborContext::new(2, 2);
        let all: HashSet<&Lattice> = b.vertices.iter().collect();
        let ok = deep.vertices.iter().all(|v| {
            ctx.neighbors(v, Model::Quotient)
                .iter()
                .all(|w| all.contains(w))
        });
        rep.record(
            "deep_vertices_have_full_links",
            ok,
            format!("{} deep of {} vertices", deep.len(), b.len()),
        );
    }

    rep
}

pub fn homology_suite(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("homology", seed);
    let mut rng = StdRng::seed_from_u64(seed);

    // Boundary of boundary vanishes on generated complexes.
    {
        let mut bad = None;
        for (p, dim, radius, model) in [
            (2u64, 2usize, 3usize, Model::Quotient),
            (2, 3, 1, Model::Quotient),
            (3, 2, 1, Model::Extended),
        ] {
            let b = ball(&Lattice::standard(p, dim), radius, model, 100_000).unwrap();
            let x = build_complex(&b);
            let cc = boundary_matrices(&SimplexSet::from_complex(&x));
            for k in 1..cc.boundaries.len() {
                let prod = hnf::mat_mul(&cc.boundaries[k - 1], &cc.boundaries[k]);
                if prod.iter().flatten().any(|e| !e.is_zero()) {
                    bad = Some(format!("dd != 0 for p={p} dim={dim} r={radius}"));
                }
            }
        }
        rep.record(
            "boundary_squared_zero",
            bad.is_none(),
            bad.unwrap_or_else(|| "3 truncations".into()),
        );
    }

    // SNF: divisor chain, |det| = product of divisors, transforms check.
    {
        let mut bad = None;
        for _ in 0..50 {
            let n = rng.gen_range(1..=4usize);
            let m: hnf::Mat = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                        .collect()
                })
                .collect();
            let snf = smith_normal_form(&m, true);
            for w in snf.divisors.windows(2) {
                if !num::Integer::is_multiple_of(&w[1], &w[0]) {
                    bad = Some(format!("chain broken for {:?}", m));
                }
            }
            let d = hnf::det(&m).abs();
            if !d.is_zero() {
                let prod: BigInt = snf.divisors.iter().product();
                if prod != d {
                    bad = Some(format!("det mismatch for {:?}", m));
                }
            }
            let (u, v) = snf.transforms.as_ref().unwrap();
            let diag = hnf::mat_mul(&hnf::mat_mul(u, &m), v);
            for (i, row) in diag.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let want = if i == j && i < snf.divisors.len() {
                        snf.divisors[i].clone()
                    } else {
                        BigInt::zero()
                    };
                    if *e != want {
                        bad = Some(format!("U M V != D for {:?}", m));
                    }
                }
            }
            if bad.is_some() {
                break;
            }
        }
        rep.record(
            "snf_divisors_and_transforms",
            bad.is_none(),
            bad.unwrap_or_else(|| "50 random matrices".into()),
        );
    }

    // Euler characteristic equals the alternating Betti sum.
    {
        let mut bad = None;
        for (p, dim, radius) in [(2u64, 2usize, 2usize), (2, 3, 1), (3, 2, 2)] {
            let b = ball(&Lattice::standard(p, dim), radius, Model::Quotient, 100_000).unwrap();
            let x = build_complex(&b);
            let s = SimplexSet::from_complex(&x);
            let h = reduced_homology(&s).unwrap();
            let chi: i64 = 1 + h
                .degrees
                .iter()
                .map(|d| {
                    if d.degree % 2 == 0 {
                        d.betti as i64
                    } else {
                        -(d.betti as i64)
                    }
                })
                .sum::<i64>();
            if chi != s.euler_characteristic() {
                bad = Some(format!("p={p} dim={dim} r={radius}"));
                break;
            }
        }
        rep.record(
            "euler_characteristic_consistency",
            bad.is_none(),
            bad.unwrap_or_else(|| "3 truncations".into()),
        );
    }

    // Cones are acyclic.
    {
        let fixtures = homology_fixtures();
        let mut bad = None;
        for (name, x, _) in &fixtures {
            let h = reduced_homology(&x.cone()).unwrap();
            if !h.is_acyclic() {
                bad = Some(format!("cone over {name}"));
                break;
            }
        }
        rep.record(
            "cones_are_acyclic",
            bad.is_none(),
            bad.unwrap_or_else(|| "4 fixtures".into()),
        );
    }

    // Standard fixtures: S0, S1, S2, RP2.
    {
        let mut bad = None;
        for (name, x, expect) in homology_fixtures() {
            let h = reduced_homology(&x).unwrap();
            let got: Vec<(usize, Vec<String>)> = h
                .degrees
                .iter()
                .map(|d| (d.betti, d.torsion.iter().map(|t| t.to_string()).collect()))
                .collect();
            if got != expect {
                bad = Some(format!("{name}: got {:?}, want {:?}", got, expect));
                break;
            }
        }
        rep.record(
            "standard_fixtures",
            bad.is_none(),
            bad.unwrap_or_else(|| "S0, S1, S2, RP2".into()),
        );
    }

    // Identity inclusions are injective on nonzero homology.
    {
        let mut bad = None;
        for (name, x, _) in homology_fixtures() {
            let h = reduced_homology(&x).unwrap();
            for d in &h.degrees {
                if d.betti > 0 {
                    let m = induced_map_class(&x, &x, d.degree).unwrap();
                    if m.class != MapClass::Injective {
                        bad = Some(format!("{name} degree {}", d.degree));
                    }
                }
            }
        }
        rep.record(
            "functoriality_identity_injective",
            bad.is_none(),
            bad.unwrap_or_else(|| "4 fixtures".into()),
        );
    }

    rep
}

type Fixture = (&'static str, SimplexSet, Vec<(usize, Vec<String>)>);

/// (name, complex, expected reduced homology as (betti, torsion) rows).
pub fn homology_fixtures() -> Vec<Fixture> {
    let s0 = SimplexSet::from_facets(&[vec![0], vec![1]]);
    let s1 = SimplexSet::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
    let s2 = SimplexSet::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    let rp2 = SimplexSet::from_facets(&[
        vec![1, 2, 5],
        vec![1, 2, 6],
        vec![1, 3, 4],
        vec![1, 3, 6],
        vec![1, 4, 5],
        vec![2, 3, 4],
        vec![2, 3, 5],
        vec![2, 4, 6],
        vec![3, 5, 6],
        vec![4, 5, 6],
    ]);
    vec![
        ("S0", s0, vec![(1, vec![])]),
        ("S1", s1, vec![(0, vec![]), (1, vec![])]),
        ("S2", s2, vec![(0, vec![]), (0, vec![]), (1, vec![])]),
        (
            "RP2",
            rp2,
            vec![(0, vec![]), (0, vec!["2".into()]), (0, vec![])],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for rep in run_suites(Suite::All, 7) {
            for c in &rep.checks {
                assert!(c.pass, "{}::{} failed: {}", rep.suite, c.name, c.detail);
            }
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suites(Suite::Invariants, 7);
        let b = run_suites(Suite::Invariants, 7);
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }
}
