//! Finite truncations of the building and the extended building as
//! simplicial complexes: balls, flag/clique complexes, height and
//! fixed-point subcomplexes, and the affine helpers of the realization.

use crate::invariants::{partition_from_signs, SignVector};
use crate::lattice::{
    chain_is_simplex, class_representative, epsilon, height, HeightFunction, Lattice, LatticeError,
    Model, NeighborContext,
};
use crate::rat::{parse_rat, Rat};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("CapExceeded: ball grew past the cap of {0} vertices")]
    CapExceeded(usize),
    #[error("TimeBudgetExceeded: experiment ran past its {0:?} budget")]
    TimeBudgetExceeded(std::time::Duration),
    #[error("EmptyInterval: lower bound {0} exceeds upper bound {1}")]
    EmptyInterval(String, String),
    #[error("NotASimplex: the supporting vertex set is not a flag")]
    NotASimplex,
    #[error("BadCoefficients: {0}")]
    BadCoefficients(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A set of canonical vertices of one model, the output of a ball
/// computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    pub model: Model,
    pub p: u64,
    pub dim: usize,
    /// Sorted canonical lattices (class representatives in the quotient
    /// model).
    pub vertices: Vec<Lattice>,
    /// Edge-distance from the BFS center, aligned with `vertices`.
    pub distances: Vec<usize>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The subset of vertices at distance <= radius - 1, whose full links
    /// are present in the ball.
    pub fn deep_subset(&self, radius: usize) -> VertexSet {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.distances[i] < radius)
            .collect();
        VertexSet {
            model: self.model,
            p: self.p,
            dim: self.dim,
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            distances: keep.iter().map(|&i| self.distances[i]).collect(),
        }
    }
}

/// BFS ball of the given edge radius around a center vertex.  In the
/// quotient model the center is replaced by its class representative and
/// all vertices are canonical class representatives.
pub fn ball(
    center: &Lattice,
    radius: usize,
    model: Model,
    cap: usize,
) -> Result<VertexSet, ComplexError> {
    ball_with_deadline(center, radius, model, cap, None)
}

/// As `ball`, aborting once the deadline passes (checked per expansion).
pub fn ball_with_deadline(
    center: &Lattice,
    radius: usize,
    model: Model,
    cap: usize,
    deadline: Option<(std::time::Instant, std::time::Duration)>,
) -> Result<VertexSet, ComplexError> {
    let p = center.p();
    let dim = center.dim();
    let ctx = NeighborContext::new(p, dim);
    let start = match model {
        Model::Extended => center.clone(),
        Model::Quotient => class_representative(center),
    };
    let mut dist: HashMap<Lattice, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if let Some((end, budget)) = deadline {
            if std::time::Instant::now() > end {
                return Err(ComplexError::TimeBudgetExceeded(budget));
            }
        }
        let d = dist[&v];
        if d == radius {
            continue;
        }
        for w in ctx.neighbors(&v, model) {
            if !dist.contains_key(&w) {
                if dist.len() + 1 > cap {
                    return Err(ComplexError::CapExceeded(cap));
                }
                dist.insert(w.clone(), d + 1);
                queue.push_back(w);
            }
        }
    }
    let mut pairs: Vec<(Lattice, usize)> = dist.into_iter().collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(VertexSet {
        model,
        p,
        dim,
        vertices: pairs.iter().map(|(l, _)| l.clone()).collect(),
        distances: pairs.iter().map(|(_, d)| *d).collect(),
    })
}

/// A finite simplicial complex on canonical lattice vertices.  Vertex ids
/// refer to positions in `vertices`; `parent_ids` tracks the ids in the
/// complex this one was cut from (the identity for freshly built
/// complexes), so that inclusion-induced maps line up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub model: Model,
    pub p: u64,
    pub dim: usize,
    pub vertices: Vec<Lattice>,
    pub distances: Vec<usize>,
    pub parent_ids: Vec<u32>,
    /// simplices[k] lists the k-simplices as sorted vertex-id tuples,
    /// sorted lexicographically; simplices[0] is the full vertex list.
    pub simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    pub fn simplex_counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                sign * s.len() as i64
            })
            .sum()
    }

    /// Simplices of each dimension with ids mapped through `parent_ids`,
    /// for comparing with a complex this one is included in.
    pub fn simplices_in_parent_ids(&self) -> Vec<Vec<Vec<u32>>> {
        self.simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        let mut t: Vec<u32> =
                            s.iter().map(|&v| self.parent_ids[v as usize]).collect();
                        t.sort_unstable();
                        t
                    })
                    .collect()
            })
            .collect()
    }

    /// Re-checks every simplex against the direct flag test; used to
    /// validate the clique construction on small instances.
    pub fn verify_flags(&self) -> bool {
        for level in &self.simplices[1..] {
            for s in level {
                let chain: Vec<Lattice> = s
                    .iter()
                    .map(|&v| self.vertices[v as usize].clone())
                    .collect();
                if !simplex_test(&chain, self.model) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        let mut simplices = serde_json::Map::new();
        for (k, level) in self.simplices.iter().enumerate().skip(1) {
            simplices.insert(k.to_string(), json!(level));
        }
        json!({
            "model": self.model.to_string(),
            "p": self.p,
            "dim": self.dim,
            "vertices": self.vertices.iter().map(Lattice::to_json).collect::<Vec<_>>(),
            "simplices": Value::Object(simplices),
        })
    }

    /// DOT rendering of the 1-skeleton; vertices are annotated with their
    /// retraction and, when a height function is given, their height.
    pub fn to_dot(&self, h: Option<&HeightFunction>) -> String {
        let mut out = String::from("graph building {\n  node [shape=circle];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let r: Vec<String> = v.retraction().iter().map(|e| e.to_string()).collect();
            let mut label = format!("{} ({})", i, r.join(","));
            if let Some(h) = h {
                let _ = write!(label, " h={}", h.eval(v));
            }
            let _ = writeln!(out, "  v{} [label=\"{}\"];", i, label);
        }
        for e in &self.simplices[1] {
            let _ = writeln!(out, "  v{} -- v{};", e[0], e[1]);
        }
        out.push_str("}\n");
        out
    }
}

/// Tests whether a set of vertices spans a simplex in the given model.
fn simplex_test(chain: &[Lattice], model: Model) -> bool {
    match model {
        Model::Extended => chain_is_simplex(chain),
        Model::Quotient => class_chain_is_simplex(chain),
    }
}

/// Quotient-model flag test: distinct classes form a simplex iff
/// representatives can be rescaled into a chain L_0 > L_1 > ... > p L_0.
/// Each class other than the anchor has at most one representative
/// strictly between p L_0 and L_0.
fn class_chain_is_simplex(classes: &[Lattice]) -> bool {
    if classes.len() <= 1 {
        return true;
    }
    let anchor = &classes[0];
    let dim = anchor.dim() as i64;
    let bottom = anchor.scale_by_p(1);
    let mut reps: Vec<Lattice> = Vec::with_capacity(classes.len() - 1);
    for c in &classes[1..] {
        // Scale so that nu_det lands strictly between anchor's and
        // anchor's + dim.
        let target_lo = anchor.nu_det();
        let diff = c.nu_det() - target_lo;
        // nu_det(p^k c) = nu_det(c) + k*dim; want it in (target_lo, target_lo + dim).
        let k = -diff.div_euclid(dim);
        let mut found = None;
        for kk in [k - 1, k, k + 1] {
            let cand = c.scale_by_p(kk);
            let nd = cand.nu_det();
            if nd > target_lo
                && nd < target_lo + dim
                && cand.subset_of(anchor)
                && bottom.subset_of(&cand)
            {
                found = Some(cand);
                break;
            }
        }
        match found {
            Some(r) => reps.push(r),
            None => return false,
        }
    }
    reps.sort_by_key(|l| std::cmp::Reverse(l.nu_det()));
    for w in reps.windows(2) {
        if !w[0].subset_of(&w[1]) {
            return false;
        }
    }
    true
}

/// Builds the flag complex on a vertex set: edges are pairs passing the
/// flag test, and higher simplices are the cliques of the 1-skeleton.
/// On these truncations the clique complex agrees with the direct chain
/// test (`verify_flags` re-checks this).
pub fn build_complex(vs: &VertexSet) -> SimplicialComplex {
    let n = vs.vertices.len();
    let ctx = NeighborContext::new(vs.p, vs.dim);
    let index: HashMap<&Lattice, u32> = vs
        .vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i as u32))
        .collect();
    let mut adj: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for (i, v) in vs.vertices.iter().enumerate() {
        for w in ctx.neighbors(v, vs.model) {
            if let Some(&j) = index.get(&w) {
                adj[i].insert(j);
                adj[j as usize].insert(i as u32);
            }
        }
    }
    let max_dim = match vs.model {
        Model::Extended => vs.dim,
        Model::Quotient => vs.dim - 1,
    };
    let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
    simplices.push((0..n as u32).map(|i| vec![i]).collect());
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for i in 0..n as u32 {
        for &j in adj[i as usize].iter().filter(|&&j| j > i) {
            edges.push(vec![i, j]);
        }
    }
    edges.sort();
    if edges.is_empty() {
        return SimplicialComplex {
            model: vs.model,
            p: vs.p,
            dim: vs.dim,
            vertices: vs.vertices.clone(),
            distances: vs.distances.clone(),
            parent_ids: (0..n as u32).collect(),
            simplices,
        };
    }
    simplices.push(edges);
    for k in 2..=max_dim {
        let prev = &simplices[k - 1];
        let mut next: Vec<Vec<u32>> = Vec::new();
        for s in prev {
            let last = *s.last().unwrap();
            // Candidates adjacent to every vertex of s, beyond the last id.
            let mut cands: Vec<u32> = adj[s[0] as usize]
                .iter()
                .cloned()
                .filter(|&c| c > last)
                .collect();
            for &v in &s[1..] {
                cands.retain(|c| adj[v as usize].contains(c));
            }
            for c in cands {
                let mut t = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        simplices.push(next);
    }
    SimplicialComplex {
        model: vs.model,
        p: vs.p,
        dim: vs.dim,
        vertices: vs.vertices.clone(),
        distances: vs.distances.clone(),
        parent_ids: (0..n as u32).collect(),
        simplices,
    }
}

/// A predicate selecting vertices of a complex.
#[derive(Debug, Clone)]
pub enum VertexPredicate {
    /// Height of the vertex lies in the closed rational interval.
    HeightInterval {
        height: HeightFunction,
        lo: Rat,
        hi: Rat,
    },
    /// The vertex is fixed by every listed diagonal involution.
    FixedBySigns(Vec<SignVector>),
    /// Edge-distance from the ball center is at most the bound.
    MaxDistance(usize),
    And(Vec<VertexPredicate>),
}

impl VertexPredicate {
    pub fn height_interval(height: HeightFunction, lo: Rat, hi: Rat) -> Result<Self, ComplexError> {
        if lo > hi {
            return Err(ComplexError::EmptyInterval(lo.to_string(), hi.to_string()));
        }
        Ok(VertexPredicate::HeightInterval { height, lo, hi })
    }

    /// Parses "a:b" with exact rational endpoints.
    pub fn parse_interval(s: &str) -> Result<(Rat, Rat), ComplexError> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| ComplexError::BadCoefficients(format!("interval `{s}` needs a:b")))?;
        let lo = parse_rat(a).map_err(ComplexError::BadCoefficients)?;
        let hi = parse_rat(b).map_err(ComplexError::BadCoefficients)?;
        if lo > hi {
            return Err(ComplexError::EmptyInterval(lo.to_string(), hi.to_string()));
        }
        Ok((lo, hi))
    }

    pub fn eval(
        &self,
        vertex: &Lattice,
        distance: usize,
        model: Model,
    ) -> Result<bool, ComplexError> {
        match self {
            VertexPredicate::HeightInterval { height: h, lo, hi } => {
                let value = Rat::from_integer(BigInt::from(height(vertex, h, model)?));
                Ok(value >= *lo && value <= *hi)
            }
            VertexPredicate::FixedBySigns(signs) => {
                for s in signs {
                    let r = crate::lattice::involution_analysis(s, vertex);
                    if !r.fixed {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            VertexPredicate::MaxDistance(d) => Ok(distance <= *d),
            VertexPredicate::And(ps) => {
                for p in ps {
                    if !p.eval(vertex, distance, model)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// The full subcomplex on the vertices satisfying the predicate: a simplex
/// survives iff all of its vertices do.  Vertex ids are renumbered; the
/// original ids remain available through `parent_ids` (composed with the
/// input's own parent map).
pub fn full_subcomplex(
    x: &SimplicialComplex,
    pred: &VertexPredicate,
) -> Result<SimplicialComplex, ComplexError> {
    let mut keep: Vec<bool> = Vec::with_capacity(x.vertices.len());
    for (v, &d) in x.vertices.iter().zip(&x.distances) {
        keep.push(pred.eval(v, d, x.model)?);
    }
    let old_to_new: HashMap<u32, u32> = keep
        .iter()
        .enumerate()
        .filter(|(_, &k)| k)
        .enumerate()
        .map(|(new, (old, _))| (old as u32, new as u32))
        .collect();
    let vertices: Vec<Lattice> = (0..x.vertices.len())
        .filter(|&i| keep[i])
        .map(|i| x.vertices[i].clone())
        .collect();
    let distances: Vec<usize> = (0..x.vertices.len())
        .filter(|&i| keep[i])
        .map(|i| x.distances[i])
        .collect();
    let parent_ids: Vec<u32> = (0..x.vertices.len())
        .filter(|&i| keep[i])
        .map(|i| x.parent_ids[i])
        .collect();
    let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
    for level in &x.simplices {
        let mut new_level: Vec<Vec<u32>> = Vec::new();
        for s in level {
            if s.iter().all(|v| keep[*v as usize]) {
                new_level.push(s.iter().map(|v| old_to_new[v]).collect());
            }
        }
        if new_level.is_empty() && !simplices.is_empty() {
            break;
        }
        new_level.sort();
        simplices.push(new_level);
    }
    Ok(SimplicialComplex {
        model: x.model,
        p: x.p,
        dim: x.dim,
        vertices,
        distances,
        parent_ids,
        simplices,
    })
}

/// Checks the product structure of a fixed-point set: within the vertex
/// set, the vertices fixed by every sign vector of F must be exactly the
/// lattices that split as direct sums of their intersections with the
/// coordinate blocks of the partition induced by F.
pub fn product_check(vs: &VertexSet, f: &[SignVector]) -> bool {
    let blocks = partition_from_signs(vs.dim, f);
    product_check_against(vs, f, &blocks)
}

/// As `product_check`, but against an arbitrary candidate partition; the
/// verdict is false unless the candidate matches the one induced by F
/// (a negative control for the product structure).
pub fn product_check_against(
    vs: &VertexSet,
    f: &[SignVector],
    blocks: &crate::invariants::Partition,
) -> bool {
    assert_eq!(
        vs.model,
        Model::Extended,
        "product structure needs honest lattices"
    );
    for v in &vs.vertices {
        let fixed = f.iter().all(|s| crate::lattice::is_fixed_by_signs(s, v));
        let block_sum: i64 = blocks
            .blocks()
            .iter()
            .map(|b| crate::lattice::coordinate_intersection_nu_det(v, b))
            .sum();
        let splits = block_sum == v.nu_det();
        if fixed != splits {
            return false;
        }
    }
    true
}

/// The unique interval of the affine cover containing r: returns (i, beta)
/// with c_i < r <= c_i + alpha_{i mod n} and beta = 1 - (r - c_i)/alpha in
/// [0, 1), where c_i = sum_j alpha_{(i+j) mod n} (i+j)/n.  Weights must be
/// nonnegative and sum to 1; zero-weight indices are skipped.
pub fn interval_cover(alpha: &[Rat], r: &Rat) -> (i64, Rat) {
    let n = alpha.len();
    assert!(n >= 1);
    assert!(alpha.iter().all(|a| !a.is_negative()));
    assert!(alpha.iter().cloned().sum::<Rat>().is_one());
    let nz = Rat::from_integer(BigInt::from(n as i64));
    let c = |i: i64| -> Rat {
        (0..n as i64)
            .map(|j| {
                let idx = (i + j).rem_euclid(n as i64) as usize;
                &alpha[idx] * Rat::new(BigInt::from(i + j), BigInt::from(n as i64))
            })
            .sum()
    };
    let _ = &nz;
    // c_{i+1} - c_i = alpha_{i mod n} >= 0, and c_i walks off to +-infinity
    // over full periods, so a bracketing interval with positive weight
    // exists and is unique.
    let mut i: i64 = 0;
    let mut ci = c(0);
    while ci >= *r {
        i -= 1;
        ci = c(i);
    }
    loop {
        let a = &alpha[i.rem_euclid(n as i64) as usize];
        if !a.is_zero() {
            let upper = &ci + a;
            if *r <= upper && *r > ci {
                let beta = Rat::one() - (r - &ci) / a;
                return (i, beta);
            }
        }
        ci += a;
        i += 1;
    }
}

/// The reconstruction identity of the interval cover: evaluates the convex
/// combination the pair (i, beta) encodes; must reproduce r exactly.
pub fn interval_cover_reconstruct(alpha: &[Rat], i: i64, beta: &Rat) -> Rat {
    let n = alpha.len() as i64;
    let frac = |k: i64| Rat::new(BigInt::from(k), BigInt::from(n));
    let a = |k: i64| alpha[k.rem_euclid(n) as usize].clone();
    let mut r = beta * a(i) * frac(i);
    for j in 1..n {
        r += a(i + j) * frac(i + j);
    }
    r += (Rat::one() - beta) * a(i + n) * frac(i + n);
    r
}

/// Affine extension of epsilon to a convex combination of lattices
/// spanning a simplex of the extended model.
pub fn epsilon_affine(points: &[(Lattice, Rat)]) -> Result<Rat, ComplexError> {
    if points.is_empty() {
        return Err(ComplexError::NotASimplex);
    }
    for (_, c) in points {
        if c.is_negative() {
            return Err(ComplexError::BadCoefficients(
                "coefficients must be nonnegative".into(),
            ));
        }
    }
    let total: Rat = points.iter().map(|(_, c)| c.clone()).sum();
    if !total.is_one() {
        return Err(ComplexError::BadCoefficients(
            "coefficients must sum to 1".into(),
        ));
    }
    let support: Vec<Lattice> = points.iter().map(|(l, _)| l.clone()).collect();
    if !chain_is_simplex(&support) {
        return Err(ComplexError::NotASimplex);
    }
    Ok(points.iter().map(|(l, c)| epsilon(l) * c).sum())
}

/// Vertex-level shadow of the identification of the first horosphere with
/// the quotient building: for a height vector with coordinate sum 1, every
/// class has a unique representative at height zero.  Returns the lift.
pub fn horosphere_lift(class: &Lattice, h1: &HeightFunction) -> Lattice {
    assert_eq!(h1.sum(), 1, "unique lifts need sum(w1) = 1");
    let v = h1.eval(class);
    class.scale_by_p(-v)
}

/// Distribution of heights over a vertex set (exact integer heights).
pub fn height_histogram(
    vs: &VertexSet,
    h: &HeightFunction,
) -> Result<BTreeMap<i64, usize>, ComplexError> {
    let mut out = BTreeMap::new();
    for v in &vs.vertices {
        let val = height(v, h, vs.model)?;
        *out.entry(val).or_insert(0) += 1;
    }
    Ok(out)
}

/// Union-find connectivity count over a vertex subset, walking neighbors
/// directly; an oracle for H_0 computations that bypasses the boundary
/// matrix machinery.
pub fn connectivity_walk(vs: &VertexSet, subset: &HashSet<usize>) -> usize {
    let ctx = NeighborContext::new(vs.p, vs.dim);
    let index: HashMap<&Lattice, usize> = vs
        .vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let mut comp: Vec<usize> = (0..vs.vertices.len()).collect();
    fn find(comp: &mut Vec<usize>, i: usize) -> usize {
        if comp[i] != i {
            let r = find(comp, comp[i]);
            comp[i] = r;
        }
        comp[i]
    }
    for &i in subset {
        for w in ctx.neighbors(&vs.vertices[i], vs.model) {
            if let Some(&j) = index.get(&w) {
                if subset.contains(&j) {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    if a != b {
                        comp[a] = b;
                    }
                }
            }
        }
    }
    subset
        .iter()
        .map(|&i| find(&mut comp, i))
        .collect::<HashSet<_>>()
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_from_i64;

    #[test]
    fn ball_examples() {
        let std2 = Lattice::standard(3, 2);
        let b0 = ball(&std2, 0, Model::Quotient, 100).unwrap();
        assert_eq!(b0.len(), 1);

        let b1 = ball(&std2, 1, Model::Quotient, 100).unwrap();
        assert_eq!(b1.len(), 5);

        let b1 = ball(&Lattice::standard(2, 3), 1, Model::Quotient, 100).unwrap();
        assert_eq!(b1.len(), 15);

        assert!(matches!(
            ball(&std2, 2, Model::Quotient, 10),
            Err(ComplexError::CapExceeded(10))
        ));
    }

    #[test]
    fn tree_ball_sizes() {
        // The quotient building of GL_2(Q_2) is the 3-regular tree.
        let std2 = Lattice::standard(2, 2);
        for r in 0..5 {
            let b = ball(&std2, r, Model::Quotient, 10_000).unwrap();
            let expect = if r == 0 { 1 } else { 1 + 3 * ((1 << r) - 1) };
            assert_eq!(b.len(), expect, "radius {r}");
        }
    }

    #[test]
    fn complex_examples() {
        let b = ball(&Lattice::standard(3, 2), 1, Model::Quotient, 100).unwrap();
        let x = build_complex(&b);
        assert_eq!(x.simplex_counts(), vec![5, 4]);
        assert!(x.verify_flags());

        let b = ball(&Lattice::standard(2, 3), 1, Model::Quotient, 100).unwrap();
        let x = build_complex(&b);
        assert_eq!(x.simplex_counts()[1], 21 + 14);
        assert_eq!(x.simplex_counts()[2], 21);
        assert!(x.verify_flags());

        let single = VertexSet {
            model: Model::Quotient,
            p: 2,
            dim: 2,
            vertices: vec![Lattice::standard(2, 2)],
            distances: vec![0],
        };
        let x = build_complex(&single);
        assert_eq!(x.simplex_counts(), vec![1]);
    }

    #[test]
    fn extended_tree_has_triangles() {
        // The extended model over dim 2 is a triangulated strip: tree x line.
        let b = ball(&Lattice::standard(2, 2), 1, Model::Extended, 1000).unwrap();
        let x = build_complex(&b);
        assert!(x.simplices.len() >= 3, "expected 2-simplices");
        assert!(x.verify_flags());
    }

    #[test]
    fn full_subcomplex_heights() {
        let b = ball(&Lattice::standard(2, 2), 2, Model::Quotient, 1000).unwrap();
        let x = build_complex(&b);
        let h = HeightFunction::new(vec![1, -1]).unwrap();
        let pred =
            VertexPredicate::height_interval(h.clone(), rat_from_i64(0), rat_from_i64(0)).unwrap();
        let sub = full_subcomplex(&x, &pred).unwrap();
        for v in &sub.vertices {
            assert_eq!(h.eval(v), 0);
        }
        // Horosphere slices of the tree carry no edges.
        assert!(sub.simplices.len() == 1 || sub.simplices[1].is_empty());

        let bad = VertexPredicate::height_interval(h, rat_from_i64(1), rat_from_i64(0));
        assert!(matches!(bad, Err(ComplexError::EmptyInterval(_, _))));
    }

    #[test]
    fn fixed_subcomplex_is_diagonal_in_the_apartment() {
        let b = ball(&Lattice::standard(3, 2), 1, Model::Extended, 1000).unwrap();
        let x = build_complex(&b);
        let s = SignVector::parse("+-").unwrap();
        let pred = VertexPredicate::FixedBySigns(vec![s]);
        let sub = full_subcomplex(&x, &pred).unwrap();
        for v in &sub.vertices {
            let r = crate::lattice::involution_analysis(&s, v);
            assert!(r.fixed && r.splits);
        }
        // Fixed vertices of the radius-1 extended ball are the diagonal
        // lattices: diag(e1, e2) with entries in {-1, 0, 1} and the flag
        // condition against the center.
        assert!(sub.vertices.iter().all(|v| {
            let e = v.retraction();
            let d = Lattice::diagonal(3, &e);
            d == *v
        }));
    }

    #[test]
    fn product_check_examples() {
        let b = ball(&Lattice::standard(3, 4), 1, Model::Extended, 100_000).unwrap();
        let f = vec![SignVector::parse("++--").unwrap()];
        assert!(product_check(&b, &f));
        assert!(product_check(&b, &[]));

        // Negative control: the wrong partition fails the comparison.
        let b2 = ball(&Lattice::standard(3, 2), 1, Model::Extended, 1000).unwrap();
        let s = vec![SignVector::parse("+-").unwrap()];
        let wrong = crate::invariants::Partition::trivial(2);
        assert!(!product_check_against(&b2, &s, &wrong));
        assert!(product_check(&b2, &s));
    }

    #[test]
    fn interval_cover_examples() {
        let half = parse_rat("1/2").unwrap();
        let alpha = vec![half.clone(), half.clone()];
        let (i, beta) = interval_cover(&alpha, &parse_rat("3/10").unwrap());
        assert_eq!(i, 0);
        assert_eq!(beta, parse_rat("9/10").unwrap());

        let (i, beta) = interval_cover(&alpha, &parse_rat("1/4").unwrap());
        assert_eq!(i, -1);
        assert_eq!(beta, Rat::zero());

        let alpha = vec![Rat::one(), Rat::zero()];
        let (i, beta) = interval_cover(&alpha, &half);
        assert_eq!(i, 0);
        assert_eq!(beta, half);
    }

    #[test]
    fn interval_cover_reconstruction() {
        let third = parse_rat("1/3").unwrap();
        let alpha = vec![third.clone(), third.clone(), third];
        for r in ["-7/5", "0", "1/9", "4/3", "22/7"] {
            let r = parse_rat(r).unwrap();
            let (i, beta) = interval_cover(&alpha, &r);
            assert!(beta >= Rat::zero() && beta < Rat::one());
            assert_eq!(interval_cover_reconstruct(&alpha, i, &beta), r);
        }
    }

    #[test]
    fn epsilon_affine_examples() {
        let std2 = Lattice::standard(2, 2);
        let one = Rat::one();
        assert_eq!(
            epsilon_affine(&[(std2.clone(), one.clone())]).unwrap(),
            Rat::zero()
        );

        let half = parse_rat("1/2").unwrap();
        let mid = epsilon_affine(&[
            (std2.clone(), half.clone()),
            (std2.scale_by_p(1), half.clone()),
        ])
        .unwrap();
        assert_eq!(mid, parse_rat("-1/2").unwrap());

        let third = parse_rat("1/3").unwrap();
        let tri = epsilon_affine(&[
            (std2.clone(), third.clone()),
            (Lattice::diagonal(2, &[0, 1]), third.clone()),
            (std2.scale_by_p(1), third.clone()),
        ])
        .unwrap();
        assert_eq!(tri, parse_rat("-1/2").unwrap());

        let bad = epsilon_affine(&[
            (std2.clone(), half.clone()),
            (Lattice::diagonal(2, &[0, 2]), half),
        ]);
        assert!(matches!(bad, Err(ComplexError::NotASimplex)));
    }

    #[test]
    fn horosphere_lift_bijectivity_and_adjacency() {
        // w1 = (1, 0): sum 1, so every class lifts uniquely to height 0.
        let h1 = HeightFunction::new(vec![1, 0]).unwrap();
        let w = HeightFunction::new(vec![1, -1]).unwrap();
        let b = ball(&Lattice::standard(2, 2), 3, Model::Quotient, 10_000).unwrap();
        let mut lifts = Vec::new();
        for c in &b.vertices {
            let l = horosphere_lift(c, &h1);
            assert_eq!(h1.eval(&l), 0);
            assert_eq!(w.eval(&l), w.eval(c));
            lifts.push(l);
        }
        let unique: HashSet<_> = lifts.iter().cloned().collect();
        assert_eq!(unique.len(), lifts.len());

        // Classes are adjacent iff their height-zero lifts are adjacent.
        let ctx = NeighborContext::new(2, 2);
        for (i, c) in b.vertices.iter().enumerate() {
            let class_nbrs: HashSet<Lattice> = ctx
                .neighbors(c, Model::Quotient)
                .into_iter()
                .filter(|x| b.vertices.binary_search(x).is_ok())
                .collect();
            for (j, d) in b.vertices.iter().enumerate() {
                if i == j {
                    continue;
                }
                let class_adj = class_nbrs.contains(d);
                let lift_adj = chain_is_simplex(&[lifts[i].clone(), lifts[j].clone()]);
                assert_eq!(class_adj, lift_adj, "classes {i} and {j}");
            }
        }
    }

    #[test]
    fn deep_subset_drops_the_boundary_sphere() {
        let b = ball(&Lattice::standard(2, 2), 3, Model::Quotient, 10_000).unwrap();
        let deep = b.deep_subset(3);
        assert_eq!(deep.len(), b.distances.iter().filter(|&&d| d <= 2).count());
    }

    #[test]
    fn connectivity_walk_matches_structure() {
        let b = ball(&Lattice::standard(2, 2), 2, Model::Quotient, 10_000).unwrap();
        let all: HashSet<usize> = (0..b.len()).collect();
        assert_eq!(connectivity_walk(&b, &all), 1);
        let h = HeightFunction::new(vec![1, -1]).unwrap();
        let level: HashSet<usize> = (0..b.len())
            .filter(|&i| h.eval(&b.vertices[i]) == 0)
            .collect();
        // Horosphere levels in the tree are discrete.
        assert_eq!(connectivity_walk(&b, &level), level.len());
    }
}
