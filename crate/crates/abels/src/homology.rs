//! Integer simplicial homology: boundary matrices, Smith normal form,
//! reduced homology with torsion, and classification of inclusion-induced
//! maps (the homological inputs consumed by both Brown criteria).

use crate::complex::SimplicialComplex;
use crate::hnf::{self, Mat};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("EmptyComplex: homology of the empty complex is not defined here")]
    EmptyComplex,
    #[error("NotSubcomplex: {0}")]
    NotSubcomplex(String),
}

/// A finite simplicial complex presented abstractly: simplices per
/// dimension as sorted vertex-id tuples.  This is what the homology
/// machinery consumes; lattice complexes convert into it, and test
/// fixtures (spheres, projective planes, cones) are written in it
/// directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSet {
    /// simplices[k] = sorted list of sorted (k+1)-tuples.
    pub simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplexSet {
    /// Builds the face closure of the given facets.
    pub fn from_facets(facets: &[Vec<u32>]) -> SimplexSet {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<u32>>> = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            assert!(!s.is_empty(), "empty facet");
            let k = s.len() - 1;
            while by_dim.len() <= k {
                by_dim.push(Default::default());
            }
            // All nonempty subsets; facet sizes stay tiny here.
            let m = s.len();
            for mask in 1u32..(1 << m) {
                let face: Vec<u32> = (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        SimplexSet {
            simplices: by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        }
    }

    pub fn from_complex(x: &SimplicialComplex) -> SimplexSet {
        SimplexSet {
            simplices: x.simplices.clone(),
        }
    }

    /// As `from_complex`, but with vertex ids mapped through the complex's
    /// parent map, so subcomplexes of a common parent can be compared.
    pub fn from_subcomplex_in_parent_ids(x: &SimplicialComplex) -> SimplexSet {
        let mut levels = x.simplices_in_parent_ids();
        for level in &mut levels {
            level.sort();
        }
        SimplexSet { simplices: levels }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty() || self.simplices[0].is_empty()
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if k % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }

    /// The cone over the complex with a fresh apex vertex.
    pub fn cone(&self) -> SimplexSet {
        let apex = 1 + self
            .simplices
            .iter()
            .flatten()
            .flatten()
            .cloned()
            .max()
            .unwrap_or(0);
        let mut facets: Vec<Vec<u32>> = vec![vec![apex]];
        for level in &self.simplices {
            for s in level {
                facets.push(s.clone());
                let mut coned = s.clone();
                coned.push(apex);
                facets.push(coned);
            }
        }
        SimplexSet::from_facets(&facets)
    }

    /// True iff every simplex of `self` is a simplex of `other`.
    pub fn subcomplex_of(&self, other: &SimplexSet) -> bool {
        for (k, level) in self.simplices.iter().enumerate() {
            let Some(sup) = other.simplices.get(k) else {
                return level.is_empty();
            };
            for s in level {
                if sup.binary_search(s).is_err() {
                    return false;
                }
            }
        }
        true
    }
}

/// The integer chain complex of a simplicial complex, with the reduced
/// augmentation in degree 0.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// boundaries[k]: matrix of d_k : C_k -> C_{k-1} for k >= 1; the
    /// basis of C_k is the sorted simplex list in degree k.
    pub boundaries: Vec<Mat>,
    /// Number of k-simplices per degree.
    pub ranks: Vec<usize>,
}

/// Standard simplicial boundary with orientation induced by sorted vertex
/// ids.
pub fn boundary_matrices(x: &SimplexSet) -> ChainComplex {
    let ranks: Vec<usize> = x.counts();
    let mut boundaries: Vec<Mat> = Vec::new();
    for k in 1..x.simplices.len() {
        let lower: HashMap<&Vec<u32>, usize> = x.simplices[k - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut m = hnf::zeros(x.simplices[k - 1].len(), x.simplices[k].len());
        for (j, s) in x.simplices[k].iter().enumerate() {
            for (drop, sign) in (0..s.len()).map(|d| (d, if d % 2 == 0 { 1 } else { -1 })) {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let i = *lower.get(&face).expect("face closure");
                m[i][j] = BigInt::from(sign);
            }
        }
        boundaries.push(m);
    }
    ChainComplex { ranks, boundaries }
}

/// Smith normal form data of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    /// All elementary divisors d_1 | d_2 | ... (including any equal to 1).
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    /// Optional unimodular transforms with U * M * V = D.
    pub transforms: Option<(Mat, Mat)>,
}

/// Smith normal form by pivoting on minimal nonzero entries; exact over
/// BigInt.  `with_transforms` additionally accumulates the row and column
/// transforms.
pub fn smith_normal_form(m: &Mat, with_transforms: bool) -> Snf {
    let (rows, cols) = hnf::shape(m);
    let mut a = m.clone();
    let mut u = if with_transforms {
        Some(hnf::identity(rows))
    } else {
        None
    };
    let mut v = if with_transforms {
        Some(hnf::identity(cols))
    } else {
        None
    };
    let mut divisors: Vec<BigInt> = Vec::new();
    let mut k = 0usize;
    while k < rows.min(cols) {
        // Find the nonzero entry of least absolute value in the remaining
        // block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        if let Some(u) = u.as_mut() {
            u.swap(k, pi);
        }
        swap_cols(&mut a, k, pj);
        if let Some(v) = v.as_mut() {
            swap_cols(v, k, pj);
        }
        // Clear row and column k; restart if a division leaves remainders
        // elsewhere (classic termination by strictly shrinking pivots).
        let mut clean = true;
        for i in k + 1..rows {
            if a[i][k].is_zero() {
                continue;
            }
            let q = div_round(&a[i][k], &a[k][k]);
            row_sub(&mut a, i, &q, k);
            if let Some(u) = u.as_mut() {
                row_sub(u, i, &q, k);
            }
            if !a[i][k].is_zero() {
                clean = false;
            }
        }
        for j in k + 1..cols {
            if a[k][j].is_zero() {
                continue;
            }
            let q = div_round(&a[k][j], &a[k][k]);
            col_sub(&mut a, j, &q, k);
            if let Some(v) = v.as_mut() {
                col_sub(v, j, &q, k);
            }
            if !a[k][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce the divisibility chain: fold any entry the pivot misses
        // into the pivot's row and retry.
        let mut offender: Option<(usize, usize)> = None;
        for i in k + 1..rows {
            for j in k + 1..cols {
                if !a[i][j].is_multiple_of(&a[k][k]) {
                    offender = Some((i, j));
                    break;
                }
            }
            if offender.is_some() {
                break;
            }
        }
        if let Some((i, _)) = offender {
            let one = BigInt::one();
            row_add(&mut a, k, &one, i);
            if let Some(u) = u.as_mut() {
                row_add(u, k, &one, i);
            }
            continue;
        }
        if a[k][k].is_negative() {
            negate_row(&mut a, k);
            if let Some(u) = u.as_mut() {
                negate_row(u, k);
            }
        }
        divisors.push(a[k][k].clone());
        k += 1;
    }
    Snf {
        rank: divisors.len(),
        divisors,
        transforms: u.zip(v),
    }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// row_i -= q * row_k
fn row_sub(m: &mut Mat, i: usize, q: &BigInt, k: usize) {
    if q.is_zero() {
        return;
    }
    let row_k = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(row_k) {
        *x -= q * y;
    }
}

/// row_k += q * row_i
fn row_add(m: &mut Mat, k: usize, q: &BigInt, i: usize) {
    let row_i = m[i].clone();
    for (x, y) in m[k].iter_mut().zip(row_i) {
        *x += q * y;
    }
}

/// col_j -= q * col_k
fn col_sub(m: &mut Mat, j: usize, q: &BigInt, k: usize) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = q * &row[k];
        row[j] -= t;
    }
}

fn negate_row(m: &mut Mat, k: usize) {
    for x in m[k].iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Reduced integral homology in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    /// Torsion divisors > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, k: usize) -> &[BigInt] {
        self.degrees.get(k).map_or(&[], |d| &d.torsion)
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.betti == 0 && d.torsion.is_empty())
    }

    pub fn to_json(&self) -> Value {
        let list: Vec<Value> = self
            .degrees
            .iter()
            .map(|d| {
                json!({
                    "k": d.degree,
                    "betti": d.betti,
                    "torsion": d.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!(list)
    }
}

/// Reduced integral homology of a nonempty complex, computed from Smith
/// normal forms of the boundary matrices (with the augmentation in
/// degree 0).
pub fn reduced_homology(x: &SimplexSet) -> Result<HomologyResult, HomologyError> {
    if x.is_empty() {
        return Err(HomologyError::EmptyComplex);
    }
    let cc = boundary_matrices(x);
    let top = cc.ranks.len() - 1;
    // rank of the augmentation map C_0 -> Z is 1 on nonempty complexes.
    let mut ranks_d: Vec<usize> = vec![1];
    let mut divisors: Vec<Vec<BigInt>> = vec![vec![]];
    for b in &cc.boundaries {
        let snf = smith_normal_form(b, false);
        ranks_d.push(snf.rank);
        divisors.push(snf.divisors);
    }
    let mut degrees = Vec::new();
    for k in 0..=top {
        let rk = ranks_d[k];
        let rk1 = if k < cc.boundaries.len() {
            ranks_d[k + 1]
        } else {
            0
        };
        let betti = cc.ranks[k] - rk - rk1;
        let torsion: Vec<BigInt> = if k < cc.boundaries.len() {
            divisors[k + 1]
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect()
        } else {
            Vec::new()
        };
        degrees.push(DegreeHomology {
            degree: k,
            betti,
            torsion,
        });
    }
    Ok(HomologyResult { degrees })
}

/// Classification of an inclusion-induced map on reduced homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Zero,
    Injective,
    NonInjectiveNonzero,
}

impl std::fmt::Display for MapClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapClass::Zero => write!(f, "zero"),
            MapClass::Injective => write!(f, "injective"),
            MapClass::NonInjectiveNonzero => write!(f, "non-injective-nonzero"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub class: MapClass,
    /// Free rank of the image inside H_k(sup).
    pub image_rank: usize,
    /// Betti number of the source.
    pub source_betti: usize,
}

/// Classifies H~_k(sub) -> H~_k(sup) for a subcomplex inclusion (vertex
/// ids must be compatible).  Cycles of the subcomplex are pushed into the
/// big complex; membership in the boundary image is decided by exact
/// integer solving.
pub fn induced_map_class(
    sub: &SimplexSet,
    sup: &SimplexSet,
    k: usize,
) -> Result<InducedMap, HomologyError> {
    if sub.is_empty() || sup.is_empty() {
        return Err(HomologyError::NotSubcomplex("empty complex".into()));
    }
    if !sub.subcomplex_of(sup) {
        return Err(HomologyError::NotSubcomplex(
            "sub is not a subcomplex of sup".into(),
        ));
    }
    let empty: Vec<Vec<u32>> = Vec::new();
    let sub_k = sub.simplices.get(k).unwrap_or(&empty);
    let sup_k = sup.simplices.get(k).unwrap_or(&empty);
    let source_betti = reduced_homology(sub)?.betti(k);
    if sub_k.is_empty() || sup_k.is_empty() || source_betti == 0 {
        // A trivial source maps by zero.
        return Ok(InducedMap {
            class: MapClass::Zero,
            image_rank: 0,
            source_betti,
        });
    }

    // Cycle basis of the subcomplex in degree k (kernel of the boundary,
    // or of the augmentation in degree 0).
    let cc_sub = boundary_matrices(sub);
    let z_sub: Vec<Vec<BigInt>> = if k == 0 {
        let aug: Mat = vec![vec![BigInt::one(); sub_k.len()]];
        hnf::kernel_basis(&aug)
    } else {
        hnf::kernel_basis(&cc_sub.boundaries[k - 1])
    };

    // Inclusion C_k(sub) -> C_k(sup) as an index map.
    let sup_index: HashMap<&Vec<u32>, usize> =
        sup_k.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let incl: Vec<usize> = sub_k
        .iter()
        .map(|s| *sup_index.get(s).expect("subcomplex simplex in sup"))
        .collect();
    let push = |z: &[BigInt]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); sup_k.len()];
        for (i, c) in z.iter().enumerate() {
            v[incl[i]] = c.clone();
        }
        v
    };

    let cc_sup = boundary_matrices(sup);
    let b_sup: Mat = if k < cc_sup.boundaries.len() {
        cc_sup.boundaries[k].clone()
    } else {
        hnf::zeros(sup_k.len(), 0)
    };
    let b_sub: Mat = if k < cc_sub.boundaries.len() {
        cc_sub.boundaries[k].clone()
    } else {
        hnf::zeros(sub_k.len(), 0)
    };

    // Zero map <=> every pushed cycle bounds in sup.
    let all_bound = z_sub.iter().all(|z| hnf::solve(&b_sup, &push(z)).is_some());

    // Image rank = rank(span(pushed cycles) + im d_{k+1}^sup) - rank(im).
    let (rows, _) = hnf::shape(&b_sup);
    let mut aug_cols: Mat = vec![Vec::new(); rows];
    for z in &z_sub {
        let v = push(z);
        for (i, row) in aug_cols.iter_mut().enumerate() {
            row.push(v[i].clone());
        }
    }
    for j in 0..hnf::shape(&b_sup).1 {
        for (i, row) in aug_cols.iter_mut().enumerate() {
            row.push(b_sup[i][j].clone());
        }
    }
    let image_rank = hnf::rank(&aug_cols) - hnf::rank(&b_sup);

    if all_bound {
        return Ok(InducedMap {
            class: MapClass::Zero,
            image_rank: 0,
            source_betti,
        });
    }

    // Kernel triviality: cycles of sub that bound in sup must already
    // bound in sub.  The lattice of such cycles is the z-projection of the
    // integer kernel of [push(Z) | -d_{k+1}^sup].
    let zn = z_sub.len();
    let (_, b_cols) = hnf::shape(&b_sup);
    let mut combined: Mat = vec![vec![BigInt::zero(); zn + b_cols]; sup_k.len()];
    for (j, z) in z_sub.iter().enumerate() {
        let v = push(z);
        for i in 0..sup_k.len() {
            combined[i][j] = v[i].clone();
        }
    }
    for j in 0..b_cols {
        for (i, row) in combined.iter_mut().enumerate() {
            row[zn + j] = -b_sup[i][j].clone();
        }
    }
    let mut injective = true;
    for kv in hnf::kernel_basis(&combined) {
        let coeffs = &kv[..zn];
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        // The cycle sum_j coeffs_j z_j lands in the boundary image of sup;
        // injectivity requires it to bound in sub already.
        let mut cycle = vec![BigInt::zero(); sub_k.len()];
        for (j, c) in coeffs.iter().enumerate() {
            for (i, e) in z_sub[j].iter().enumerate() {
                cycle[i] += c * e;
            }
        }
        if hnf::solve(&b_sub, &cycle).is_none() {
            injective = false;
            break;
        }
    }

    Ok(InducedMap {
        class: if injective {
            MapClass::Injective
        } else {
            MapClass::NonInjectiveNonzero
        },
        image_rank,
        source_betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn facets(f: &[&[u32]]) -> SimplexSet {
        SimplexSet::from_facets(&f.iter().map(|s| s.to_vec()).collect::<Vec<_>>())
    }

    fn hollow_triangle() -> SimplexSet {
        facets(&[&[0, 1], &[1, 2], &[0, 2]])
    }

    fn sphere2() -> SimplexSet {
        facets(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn projective_plane() -> SimplexSet {
        facets(&[
            &[1, 2, 5],
            &[1, 2, 6],
            &[1, 3, 4],
            &[1, 3, 6],
            &[1, 4, 5],
            &[2, 3, 4],
            &[2, 3, 5],
            &[2, 4, 6],
            &[3, 5, 6],
            &[4, 5, 6],
        ])
    }

    #[test]
    fn boundary_examples() {
        let cc = boundary_matrices(&hollow_triangle());
        assert_eq!(cc.ranks, vec![3, 3]);
        for j in 0..3 {
            let col_sum: BigInt = (0..3).map(|i| cc.boundaries[0][i][j].clone()).sum();
            assert!(col_sum.is_zero());
        }

        let filled = facets(&[&[0, 1, 2]]);
        let cc = boundary_matrices(&filled);
        assert_eq!(hnf::shape(&cc.boundaries[1]), (3, 1));

        // dd = 0 on a small ball complex.
        let b = crate::complex::ball(
            &crate::lattice::Lattice::standard(2, 3),
            1,
            crate::lattice::Model::Quotient,
            1000,
        )
        .unwrap();
        let x = crate::complex::build_complex(&b);
        let cc = boundary_matrices(&SimplexSet::from_complex(&x));
        let prod = hnf::mat_mul(&cc.boundaries[0], &cc.boundaries[1]);
        assert!(prod.iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn snf_examples() {
        let m: Mat = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(6), BigInt::from(8)],
        ];
        let snf = smith_normal_form(&m, true);
        assert_eq!(snf.divisors, vec![BigInt::from(2), BigInt::from(4)]);
        let (u, v) = snf.transforms.as_ref().unwrap();
        let d = hnf::mat_mul(&hnf::mat_mul(u, &m), v);
        assert_eq!(d[0][0], BigInt::from(2));
        assert_eq!(d[1][1], BigInt::from(4));
        assert!(d[0][1].is_zero() && d[1][0].is_zero());
        assert_eq!(hnf::det(u).abs(), BigInt::one());
        assert_eq!(hnf::det(v).abs(), BigInt::one());

        let id = hnf::identity(3);
        let snf = smith_normal_form(&id, false);
        assert_eq!(snf.divisors, vec![BigInt::one(); 3]);

        let z = hnf::zeros(2, 3);
        let snf = smith_normal_form(&z, false);
        assert_eq!(snf.rank, 0);
        assert!(snf.divisors.is_empty());
    }

    #[test]
    fn snf_divisor_chain_and_det() {
        let m: Mat = vec![
            vec![BigInt::from(6), BigInt::from(4), BigInt::from(2)],
            vec![BigInt::from(4), BigInt::from(10), BigInt::from(8)],
            vec![BigInt::from(2), BigInt::from(8), BigInt::from(12)],
        ];
        let snf = smith_normal_form(&m, false);
        for w in snf.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        let prod: BigInt = snf.divisors.iter().product();
        assert_eq!(prod, hnf::det(&m).abs());
    }

    #[test]
    fn homology_fixtures() {
        // Two points: H~_0 = Z.
        let s0 = facets(&[&[0], &[1]]);
        let h = reduced_homology(&s0).unwrap();
        assert_eq!(h.betti(0), 1);

        // Hollow triangle: H~_1 = Z.
        let h = reduced_homology(&hollow_triangle()).unwrap();
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.betti(1), 1);

        // 2-sphere: H~_2 = Z.
        let h = reduced_homology(&sphere2()).unwrap();
        assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (0, 0, 1));
        assert!(h.torsion(1).is_empty());

        // Projective plane: H~_1 = Z/2, H~_2 = 0.
        let rp2 = projective_plane();
        assert_eq!(rp2.counts(), vec![6, 15, 10]);
        let h = reduced_homology(&rp2).unwrap();
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.torsion(1), &[BigInt::from(2)]);
        assert_eq!(h.betti(2), 0);

        assert!(matches!(
            reduced_homology(&SimplexSet { simplices: vec![] }),
            Err(HomologyError::EmptyComplex)
        ));
    }

    #[test]
    fn rp2_rank_oracle() {
        // Independent count: rank d_2 must be 10 and rank d_1 must be 5 so
        // that betti_1 = 15 - 5 - 10 = 0.
        let cc = boundary_matrices(&projective_plane());
        assert_eq!(hnf::rank(&cc.boundaries[0]), 5);
        assert_eq!(hnf::rank(&cc.boundaries[1]), 10);
    }

    #[test]
    fn cones_are_acyclic() {
        for x in [hollow_triangle(), sphere2(), projective_plane()] {
            let h = reduced_homology(&x.cone()).unwrap();
            assert!(h.is_acyclic(), "cone over a complex must be acyclic");
        }
    }

    #[test]
    fn euler_characteristic_consistency() {
        for x in [
            hollow_triangle(),
            sphere2(),
            projective_plane(),
            sphere2().cone(),
        ] {
            let h = reduced_homology(&x).unwrap();
            let chi: i64 = 1 + h
                .degrees
                .iter()
                .map(|d| {
                    let sign = if d.degree % 2 == 0 { 1i64 } else { -1 };
                    sign * d.betti as i64
                })
                .sum::<i64>();
            assert_eq!(chi, x.euler_characteristic());
        }
    }

    #[test]
    fn induced_map_examples() {
        // Two points into a path joining them: the class dies.
        let pts = facets(&[&[0], &[2]]);
        let path = facets(&[&[0, 1], &[1, 2]]);
        let m = induced_map_class(&pts, &path, 0).unwrap();
        assert_eq!(m.class, MapClass::Zero);
        assert_eq!(m.image_rank, 0);

        // Identity on the hollow triangle is injective in degree 1.
        let t = hollow_triangle();
        let m = induced_map_class(&t, &t, 1).unwrap();
        assert_eq!(m.class, MapClass::Injective);
        assert_eq!(m.image_rank, 1);

        // Hollow triangle into the filled one: the cycle dies.
        let filled = facets(&[&[0, 1, 2]]);
        let m = induced_map_class(&t, &filled, 1).unwrap();
        assert_eq!(m.class, MapClass::Zero);

        // Two components into a space where only one pair merges.
        let sub = facets(&[&[0], &[1], &[2]]);
        let sup = facets(&[&[0, 1], &[2]]);
        let m = induced_map_class(&sub, &sup, 0).unwrap();
        assert_eq!(m.class, MapClass::NonInjectiveNonzero);
        assert_eq!(m.source_betti, 2);
        assert_eq!(m.image_rank, 1);

        assert!(matches!(
            induced_map_class(&facets(&[&[7]]), &path, 0),
            Err(HomologyError::NotSubcomplex(_))
        ));
    }

    #[test]
    fn functoriality_identity_is_injective() {
        for x in [hollow_triangle(), sphere2()] {
            let h = reduced_homology(&x).unwrap();
            for d in &h.degrees {
                if d.betti > 0 {
                    let m = induced_map_class(&x, &x, d.degree).unwrap();
                    assert_eq!(m.class, MapClass::Injective);
                    assert_eq!(m.image_rank, d.betti);
                }
            }
        }
    }
}
