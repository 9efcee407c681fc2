//! Combinatorics of the defining vector pairs: admissible partitions, the
//! group of diagonal involutions, and the two finiteness lengths.
//!
//! A group in the family is cut out of the upper triangular matrices by two
//! monomial equations with exponent vectors `w1` and `w2`.  Its classical
//! finiteness length is `n - 1`; its Bredon finiteness length is `m - 1`
//! where `m` is the minimal essential dimension over partitions that are
//! both admissible and partitions of the derived zero-sum vector.

use crate::rat::{rat_from_i64, Rat};
use num::Zero;
use serde::Serialize;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Hard cap on n+1 for the admissibility machinery; the sign group is an
/// F_2-subspace of {±1}^(n+1) and is enumerated exhaustively.
pub const MAX_POINTS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("ZeroVector: {0} must be nonzero")]
    ZeroVector(&'static str),
    #[error("NotMonotone: entries of {0} must be monotonically non-increasing")]
    NotMonotone(&'static str),
    #[error("SumSignViolation: need sum(w1) > 0 and sum(w2) <= 0, got {0} and {1}")]
    SumSignViolation(i64, i64),
    #[error("DegeneratePair: w2 is a rational multiple of w1, the derived vector vanishes")]
    DegeneratePair,
    #[error("LengthMismatch: w1 has length {0}, w2 has length {1} (need equal, >= 2)")]
    LengthMismatch(usize, usize),
    #[error("TooLarge: {0} coordinates exceed the supported maximum {MAX_POINTS}")]
    TooLarge(usize),
    #[error("WrongBlockCount: elementary admissibility is defined for 1 or 2 blocks, got {0}")]
    WrongBlockCount(usize),
    #[error("NotPartitionOfV: some block has a nonzero sum under the derived vector")]
    NotPartitionOfV,
    #[error("InvalidPartition: {0}")]
    InvalidPartition(String),
    #[error("BadSignVector: {0}")]
    BadSignVector(String),
}

/// The defining data: two integer vectors of length n+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorPair {
    w1: Vec<i64>,
    w2: Vec<i64>,
}

impl VectorPair {
    /// Validates the defining conditions: both vectors nonzero and
    /// non-increasing, sum(w1) > 0, sum(w2) <= 0, and the derived vector
    /// nonzero (proportional pairs are rejected so that 1 <= m <= n holds).
    pub fn new(w1: Vec<i64>, w2: Vec<i64>) -> Result<Self, InvariantError> {
        if w1.len() != w2.len() || w1.len() < 2 {
            return Err(InvariantError::LengthMismatch(w1.len(), w2.len()));
        }
        if w1.len() > MAX_POINTS {
            return Err(InvariantError::TooLarge(w1.len()));
        }
        if w1.iter().all(|&x| x == 0) {
            return Err(InvariantError::ZeroVector("w1"));
        }
        if w2.iter().all(|&x| x == 0) {
            return Err(InvariantError::ZeroVector("w2"));
        }
        if w1.windows(2).any(|w| w[0] < w[1]) {
            return Err(InvariantError::NotMonotone("w1"));
        }
        if w2.windows(2).any(|w| w[0] < w[1]) {
            return Err(InvariantError::NotMonotone("w2"));
        }
        let s1: i64 = w1.iter().sum();
        let s2: i64 = w2.iter().sum();
        if s1 <= 0 || s2 > 0 {
            return Err(InvariantError::SumSignViolation(s1, s2));
        }
        // w2 = (s2/s1) w1 forces the derived vector to vanish; this happens
        // exactly for constant w1 > 0, constant w2 < 0.
        if w2.iter().zip(&w1).all(|(&b, &a)| b * s1 == a * s2) {
            return Err(InvariantError::DegeneratePair);
        }
        Ok(VectorPair { w1, w2 })
    }

    pub fn points(&self) -> usize {
        self.w1.len()
    }

    /// The matrix size parameter: vectors have length n+1.
    pub fn n(&self) -> usize {
        self.points() - 1
    }

    pub fn w1(&self) -> &[i64] {
        &self.w1
    }

    pub fn w2(&self) -> &[i64] {
        &self.w2
    }

    /// The zero-sum vector w = w2 - (sum w2 / sum w1) w1, exact.
    pub fn derived_vector(&self) -> DerivedVector {
        let s1: i64 = self.w1.iter().sum();
        let s2: i64 = self.w2.iter().sum();
        let c = Rat::new(s2.into(), s1.into());
        let v: Vec<Rat> = self
            .w2
            .iter()
            .zip(&self.w1)
            .map(|(&b, &a)| rat_from_i64(b) - &c * rat_from_i64(a))
            .collect();
        debug_assert!(v.iter().cloned().sum::<Rat>().is_zero());
        DerivedVector { v }
    }
}

/// The derived rational vector with zero coordinate sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedVector {
    v: Vec<Rat>,
}

impl DerivedVector {
    pub fn coords(&self) -> &[Rat] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }
}

/// A partition of {1, ..., n+1}, stored 0-based in canonical form: each
/// block sorted ascending, blocks ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    points: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from 0-based blocks, checking that they are
    /// nonempty, pairwise disjoint and cover {0, ..., points-1}.
    pub fn new(points: usize, blocks: Vec<Vec<usize>>) -> Result<Self, InvariantError> {
        let mut seen = vec![false; points];
        for b in &blocks {
            if b.is_empty() {
                return Err(InvariantError::InvalidPartition("empty block".into()));
            }
            for &i in b {
                if i >= points {
                    return Err(InvariantError::InvalidPartition(format!(
                        "index {} out of range 1..={}",
                        i + 1,
                        points
                    )));
                }
                if seen[i] {
                    return Err(InvariantError::InvalidPartition(format!(
                        "index {} repeated",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(InvariantError::InvalidPartition(
                "blocks do not cover the index set".into(),
            ));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Ok(Partition { points, blocks })
    }

    /// Builds a partition from 1-based blocks (the serialization form).
    pub fn from_one_based(points: usize, blocks: Vec<Vec<usize>>) -> Result<Self, InvariantError> {
        let shifted = blocks
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|i| {
                        i.checked_sub(1).ok_or_else(|| {
                            InvariantError::InvalidPartition("index 0 in 1-based data".into())
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(points, shifted)
    }

    /// The trivial partition {I}.
    pub fn trivial(points: usize) -> Self {
        Partition {
            points,
            blocks: vec![(0..points).collect()],
        }
    }

    /// The partition into singletons.
    pub fn discrete(points: usize) -> Self {
        Partition {
            points,
            blocks: (0..points).map(|i| vec![i]).collect(),
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// 1-based sorted blocks, e.g. `[[1,5],[2,4],[3]]`.
    pub fn one_based_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| i + 1).collect())
            .collect()
    }

    /// Block label of each point.
    fn labels(&self) -> Vec<usize> {
        let mut lab = vec![0usize; self.points];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                lab[i] = k;
            }
        }
        lab
    }

    /// True iff every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        assert_eq!(self.points, other.points);
        let lab = other.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&i| lab[i] == lab[b[0]]))
    }

    /// Splits each block by the sign pattern of `s`.
    pub fn refine_by_sign(&self, s: &SignVector) -> Partition {
        assert_eq!(self.points, s.points());
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let (minus, plus): (Vec<usize>, Vec<usize>) = b.iter().partition(|&&i| s.is_minus(i));
            if !plus.is_empty() {
                blocks.push(plus);
            }
            if !minus.is_empty() {
                blocks.push(minus);
            }
        }
        blocks.sort();
        Partition {
            points: self.points,
            blocks,
        }
    }

    /// True iff every block sums to zero under `v`.
    pub fn is_partition_of(&self, v: &DerivedVector) -> bool {
        assert_eq!(self.points, v.len());
        self.blocks.iter().all(|b| {
            b.iter()
                .map(|&i| v.coords()[i].clone())
                .sum::<Rat>()
                .is_zero()
        })
    }

    /// Sum of (|J| - 1) over blocks J on which `v` is not identically zero.
    pub fn essential_dimension(&self, v: &DerivedVector) -> Result<usize, InvariantError> {
        if !self.is_partition_of(v) {
            return Err(InvariantError::NotPartitionOfV);
        }
        Ok(self
            .blocks
            .iter()
            .filter(|b| b.iter().any(|&i| !v.coords()[i].is_zero()))
            .map(|b| b.len() - 1)
            .sum())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .one_based_blocks()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|i| i.to_string()).collect();
                format!("[{}]", inner.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A vector in {+1, -1}^(n+1), encoding a diagonal involution candidate.
/// Bit i of `minus` is set iff coordinate i carries -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    points: usize,
    minus: u64,
}

impl SignVector {
    pub fn new(points: usize, minus: u64) -> Self {
        assert!(points <= MAX_POINTS);
        assert_eq!(minus & !mask(points), 0, "sign bits out of range");
        SignVector { points, minus }
    }

    pub fn all_plus(points: usize) -> Self {
        SignVector { points, minus: 0 }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn minus_mask(&self) -> u64 {
        self.minus
    }

    pub fn is_minus(&self, i: usize) -> bool {
        self.minus >> i & 1 == 1
    }

    pub fn sign(&self, i: usize) -> i64 {
        if self.is_minus(i) {
            -1
        } else {
            1
        }
    }

    /// Coordinatewise product; the group law of {±1}^(n+1).
    pub fn product(&self, other: &SignVector) -> SignVector {
        assert_eq!(self.points, other.points);
        SignVector {
            points: self.points,
            minus: self.minus ^ other.minus,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.minus == 0
    }

    /// Parses strings like "+-+" or "+1,-1,+1".
    pub fn parse(s: &str) -> Result<Self, InvariantError> {
        let s = s.trim();
        let signs: Vec<bool> = if s.contains(',') {
            s.split(',')
                .map(|t| match t.trim() {
                    "1" | "+1" | "+" => Ok(false),
                    "-1" | "-" => Ok(true),
                    other => Err(InvariantError::BadSignVector(format!(
                        "unexpected entry `{other}`"
                    ))),
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '+' => Ok(false),
                    '-' => Ok(true),
                    other => Err(InvariantError::BadSignVector(format!(
                        "unexpected character `{other}`"
                    ))),
                })
                .collect::<Result<_, _>>()?
        };
        if signs.is_empty() || signs.len() > MAX_POINTS {
            return Err(InvariantError::BadSignVector(format!(
                "need 1..={MAX_POINTS} signs, got {}",
                signs.len()
            )));
        }
        let mut minus = 0u64;
        for (i, &m) in signs.iter().enumerate() {
            if m {
                minus |= 1 << i;
            }
        }
        Ok(SignVector {
            points: signs.len(),
            minus,
        })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.points {
            write!(f, "{}", if self.is_minus(i) { '-' } else { '+' })?;
        }
        Ok(())
    }
}

fn mask(points: usize) -> u64 {
    if points == 64 {
        u64::MAX
    } else {
        (1u64 << points) - 1
    }
}

fn parity_mask(w: &[i64]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in w.iter().enumerate() {
        if x.rem_euclid(2) == 1 {
            m |= 1 << i;
        }
    }
    m
}

/// The group E of sign vectors whose minus-set has even w1- and w2-sums;
/// these are exactly the diagonal involutions lying in the group.  Returned
/// sorted by bit pattern; contains the identity and is closed under
/// products (it is the kernel of two F_2-linear forms).
pub fn sign_group(pair: &VectorPair) -> Vec<SignVector> {
    let points = pair.points();
    let c1 = parity_mask(pair.w1());
    let c2 = parity_mask(pair.w2());
    let mut out = Vec::new();
    for minus in 0..=mask(points) {
        if (minus & c1).count_ones().is_multiple_of(2)
            && (minus & c2).count_ones().is_multiple_of(2)
        {
            out.push(SignVector { points, minus });
        }
    }
    out
}

/// Classifies coordinates by their sign profile across `signs`; the result
/// is the common refinement of the corresponding bipartitions.  An empty
/// set yields the trivial partition.
pub fn partition_from_signs(points: usize, signs: &[SignVector]) -> Partition {
    let mut p = Partition::trivial(points);
    for s in signs {
        p = p.refine_by_sign(s);
    }
    p
}

/// Common refinement: blocks are the nonempty intersections of one block
/// from each input.  An empty list yields the trivial partition.
pub fn common_refinement(points: usize, parts: &[Partition]) -> Partition {
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); points];
    for p in parts {
        assert_eq!(p.points(), points);
        let lab = p.labels();
        for i in 0..points {
            labels[i].push(lab[i]);
        }
    }
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 0..points {
        match groups.iter_mut().find(|(key, _)| *key == labels[i]) {
            Some((_, members)) => members.push(i),
            None => groups.push((labels[i].clone(), vec![i])),
        }
    }
    let blocks = groups.into_iter().map(|(_, m)| m).collect();
    Partition::new(points, blocks).expect("refinement blocks cover by construction")
}

/// A bipartition is elementary admissible when either block has even w1-
/// and w2-sums (either block may play the role of the minus set); the
/// trivial partition always qualifies.
pub fn is_elementary_admissible(p: &Partition, pair: &VectorPair) -> Result<bool, InvariantError> {
    assert_eq!(p.points(), pair.points());
    match p.blocks().len() {
        1 => Ok(true),
        2 => {
            let even = |b: &[usize]| {
                let s1: i64 = b.iter().map(|&i| pair.w1()[i]).sum();
                let s2: i64 = b.iter().map(|&i| pair.w2()[i]).sum();
                s1 % 2 == 0 && s2 % 2 == 0
            };
            Ok(even(&p.blocks()[0]) || even(&p.blocks()[1]))
        }
        k => Err(InvariantError::WrongBlockCount(k)),
    }
}

/// A partition P is admissible iff it equals the partition induced by the
/// sign vectors of E that are constant on its blocks.  This is equivalent
/// to being a common refinement of elementary admissible bipartitions and
/// avoids enumerating subsets of E.
pub fn is_admissible(p: &Partition, pair: &VectorPair) -> bool {
    assert_eq!(p.points(), pair.points());
    let labels = p.labels();
    let constant_on_blocks = |s: &SignVector| {
        let mut block_sign: Vec<Option<bool>> = vec![None; p.blocks().len()];
        for i in 0..p.points() {
            let m = s.is_minus(i);
            match block_sign[labels[i]] {
                None => block_sign[labels[i]] = Some(m),
                Some(prev) if prev != m => return false,
                _ => {}
            }
        }
        true
    };
    let e_p: Vec<SignVector> = sign_group(pair)
        .into_iter()
        .filter(constant_on_blocks)
        .collect();
    partition_from_signs(p.points(), &e_p) == *p
}

/// Which engine enumerates the admissible partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Breadth-first refinement walk over the partition lattice.
    Search,
    /// Exhaustive enumeration of the subgroups of E.
    Oracle,
}

/// All admissible partitions, sorted.  Both engines produce the same set:
/// the search walks refinements by one element of E at a time starting
/// from the trivial partition (reaching every partition induced by a
/// subset of E), while the oracle enumerates all subgroups of E directly.
pub fn admissible_partitions(pair: &VectorPair, engine: Engine) -> Vec<Partition> {
    let points = pair.points();
    let e = sign_group(pair);
    let mut found: HashSet<Partition> = HashSet::new();
    match engine {
        Engine::Search => {
            // Work on sorted block-mask vectors; a sign vector and its
            // complement act identically, so keep one of each pair.
            let mut refiners: Vec<u64> = e
                .iter()
                .map(|s| {
                    let m = s.minus_mask();
                    m.min(!m & mask(points))
                })
                .filter(|&m| m != 0)
                .collect();
            refiners.sort_unstable();
            refiners.dedup();
            let start: Vec<u64> = vec![mask(points)];
            let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some(blocks) = queue.pop_front() {
                for &r in &refiners {
                    if !blocks.iter().any(|&b| b & r != 0 && b & !r != 0) {
                        continue;
                    }
                    let mut split: Vec<u64> = Vec::with_capacity(blocks.len() + 4);
                    for &b in &blocks {
                        let lo = b & r;
                        let hi = b & !r;
                        if lo != 0 && hi != 0 {
                            split.push(lo);
                            split.push(hi);
                        } else {
                            split.push(b);
                        }
                    }
                    split.sort_unstable();
                    if !seen.contains(&split) {
                        seen.insert(split.clone());
                        queue.push_back(split);
                    }
                }
            }
            for blocks in seen {
                let expanded: Vec<Vec<usize>> = blocks
                    .iter()
                    .map(|&b| (0..points).filter(|&i| b >> i & 1 == 1).collect())
                    .collect();
                found.insert(Partition::new(points, expanded).expect("masks cover"));
            }
        }
        Engine::Oracle => {
            let basis = f2_basis(&e);
            for subspace in f2_subspaces(basis.len()) {
                let gens: Vec<SignVector> = subspace
                    .iter()
                    .map(|&combo| {
                        let mut m = 0u64;
                        for (j, b) in basis.iter().enumerate() {
                            if combo >> j & 1 == 1 {
                                m ^= b.minus_mask();
                            }
                        }
                        SignVector::new(points, m)
                    })
                    .collect();
                found.insert(partition_from_signs(points, &gens));
            }
        }
    }
    let mut out: Vec<Partition> = found.into_iter().collect();
    out.sort();
    out
}

/// F_2-basis of a subgroup of sign vectors, by Gaussian elimination on the
/// minus masks.
fn f2_basis(group: &[SignVector]) -> Vec<SignVector> {
    let mut basis: Vec<u64> = Vec::new();
    let mut out = Vec::new();
    for s in group {
        let mut m = s.minus_mask();
        for &b in &basis {
            let pivot = 1u64 << (63 - b.leading_zeros());
            if m & pivot != 0 {
                m ^= b;
            }
        }
        if m != 0 {
            basis.push(m);
            out.push(SignVector::new(s.points(), m));
            basis.sort_unstable_by_key(|b| std::cmp::Reverse(*b));
        }
    }
    out
}

/// All subspaces of F_2^k, each given by its reduced-row-echelon basis
/// (rows are k-bit masks).  Every subspace appears exactly once.
fn f2_subspaces(k: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for r in 1..=k {
        let mut pivots = Vec::new();
        enumerate_rref(k, r, 0, &mut pivots, &mut out);
    }
    out
}

fn enumerate_rref(
    k: usize,
    r: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Vec<u64>>,
) {
    if pivots.len() == r {
        // Free positions: row i may have arbitrary bits at non-pivot columns
        // beyond its own pivot.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for c in (p + 1)..k {
                if !pivots.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let nfree = free.len();
        for bits in 0u64..(1 << nfree) {
            let mut rows: Vec<u64> = pivots.iter().map(|&p| 1u64 << p).collect();
            for (t, &(i, c)) in free.iter().enumerate() {
                if bits >> t & 1 == 1 {
                    rows[i] |= 1 << c;
                }
            }
            out.push(rows);
        }
        return;
    }
    for p in start..k {
        pivots.push(p);
        enumerate_rref(k, r, p + 1, pivots, out);
        pivots.pop();
    }
}

/// Result of the minimal essential dimension search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalEd {
    pub m: usize,
    pub witness: Partition,
    pub admissible_count: usize,
}

/// Minimizes the essential dimension over partitions that are admissible
/// and partitions of the derived vector.  The trivial partition is always
/// feasible, so a solution exists; ties are broken by the lexicographically
/// smallest witness (blocks sorted by least element).
pub fn minimal_essential_dimension(pair: &VectorPair, engine: Engine) -> MinimalEd {
    let v = pair.derived_vector();
    let admissible = admissible_partitions(pair, engine);
    let mut best: Option<(usize, Partition)> = None;
    for p in &admissible {
        if !p.is_partition_of(&v) {
            continue;
        }
        let ed = p
            .essential_dimension(&v)
            .expect("partition of v by the preceding check");
        let better = match &best {
            None => true,
            Some((bed, bp)) => ed < *bed || (ed == *bed && p < bp),
        };
        if better {
            best = Some((ed, p.clone()));
        }
    }
    let (m, witness) = best.expect("trivial partition is always feasible");
    debug_assert!(m >= 1, "derived vector is nonzero for valid pairs");
    MinimalEd {
        m,
        witness,
        admissible_count: admissible.len(),
    }
}

/// The two finiteness lengths of the Main Theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FinitenessLengths {
    pub classical: usize,
    pub bredon: usize,
}

/// classical = n - 1 and bredon = m - 1.
pub fn finiteness_lengths(pair: &VectorPair) -> FinitenessLengths {
    let med = minimal_essential_dimension(pair, Engine::Search);
    FinitenessLengths {
        classical: pair.n() - 1,
        bredon: med.m - 1,
    }
}

/// The Abels pair w1 = a_1, w2 = -a_{n+1}.
pub fn abels_pair(n: usize) -> VectorPair {
    let mut w1 = vec![0i64; n + 1];
    w1[0] = 1;
    let mut w2 = vec![0i64; n + 1];
    w2[n] = -1;
    VectorPair::new(w1, w2).expect("the Abels pair is valid")
}

/// The grid pair w1 = 2*sum(a_i), w2 = -m0*a_{n+1} + sum_{i<=m0} a_i.
pub fn grid_pair(m0: usize, n: usize) -> VectorPair {
    assert!(1 <= m0 && m0 <= n);
    let w1 = vec![2i64; n + 1];
    let mut w2 = vec![0i64; n + 1];
    for e in w2.iter_mut().take(m0) {
        *e = 1;
    }
    w2[n] = -(m0 as i64);
    VectorPair::new(w1, w2).expect("the grid pair is valid")
}

/// The even-n pair w1 = a_1 + ... + a_{k+1}, w2 = -a_{k+1} - ... - a_{n+1}
/// with n = 2k, optionally doubled.
pub fn overlap_pair(k: usize, doubled: bool) -> VectorPair {
    assert!(k >= 1);
    let n = 2 * k;
    let scale = if doubled { 2 } else { 1 };
    let mut w1 = vec![0i64; n + 1];
    for e in w1.iter_mut().take(k + 1) {
        *e = scale;
    }
    let mut w2 = vec![0i64; n + 1];
    for e in w2.iter_mut().skip(k) {
        *e = -scale;
    }
    VectorPair::new(w1, w2).expect("the overlap pair is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(points: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_one_based(points, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validate_pair_examples() {
        let p = VectorPair::new(vec![1, 0, 0], vec![0, 0, -1]).unwrap();
        assert_eq!(p.n(), 2);
        assert!(matches!(
            VectorPair::new(vec![0, 1], vec![0, -1]),
            Err(InvariantError::NotMonotone("w1"))
        ));
        assert!(matches!(
            VectorPair::new(vec![-1, -2], vec![0, -1]),
            Err(InvariantError::SumSignViolation(-3, -1))
        ));
        assert!(matches!(
            VectorPair::new(vec![1, 1], vec![-1, -1]),
            Err(InvariantError::DegeneratePair)
        ));
    }

    #[test]
    fn derived_vector_examples() {
        let v = abels_pair(2).derived_vector();
        assert_eq!(
            v.coords(),
            &[rat_from_i64(1), rat_from_i64(0), rat_from_i64(-1)]
        );

        let p = VectorPair::new(vec![2, 2, 2, 2], vec![1, 1, 0, -2]).unwrap();
        let v = p.derived_vector();
        let expect: Vec<Rat> = [1, 1, 0, -2].iter().map(|&x| rat_from_i64(x)).collect();
        assert_eq!(v.coords(), &expect[..]);

        let p = VectorPair::new(vec![1, 1, 1, 0, 0], vec![0, 0, -1, -1, -1]).unwrap();
        let v = p.derived_vector();
        let expect: Vec<Rat> = [1, 1, 0, -1, -1].iter().map(|&x| rat_from_i64(x)).collect();
        assert_eq!(v.coords(), &expect[..]);
    }

    #[test]
    fn elementary_admissible_examples() {
        let pair = abels_pair(2);
        assert!(is_elementary_admissible(&part(3, &[&[2], &[1, 3]]), &pair).unwrap());
        assert!(is_elementary_admissible(&Partition::trivial(3), &pair).unwrap());
        assert!(!is_elementary_admissible(&part(3, &[&[1, 2], &[3]]), &pair).unwrap());
        assert!(matches!(
            is_elementary_admissible(&Partition::discrete(3), &pair),
            Err(InvariantError::WrongBlockCount(3))
        ));
    }

    #[test]
    fn sign_group_examples() {
        let e = sign_group(&abels_pair(2));
        assert_eq!(e.len(), 2);
        assert!(e.contains(&SignVector::parse("+++").unwrap()));
        assert!(e.contains(&SignVector::parse("+-+").unwrap()));

        let all_even = VectorPair::new(vec![2, 2], vec![0, -2]).unwrap();
        assert_eq!(sign_group(&all_even).len(), 4);

        let ex3 = overlap_pair(2, false);
        let e = sign_group(&ex3);
        assert_eq!(e.len(), 8);
        assert!(e.contains(&SignVector::parse("--+--").unwrap()));
        assert!(e.contains(&SignVector::parse("-+-+-").unwrap()));
    }

    #[test]
    fn partition_from_signs_examples() {
        let s1 = SignVector::parse("--+--").unwrap();
        let s2 = SignVector::parse("-+-+-").unwrap();
        assert_eq!(
            partition_from_signs(5, &[s1, s2]),
            part(5, &[&[1, 5], &[2, 4], &[3]])
        );
        assert_eq!(partition_from_signs(4, &[]), Partition::trivial(4));
        assert_eq!(
            partition_from_signs(3, &[SignVector::parse("+-+").unwrap()]),
            part(3, &[&[1, 3], &[2]])
        );
    }

    #[test]
    fn common_refinement_examples() {
        let a = part(5, &[&[1, 2, 4, 5], &[3]]);
        let b = part(5, &[&[1, 3, 5], &[2, 4]]);
        assert_eq!(
            common_refinement(5, &[a.clone(), b]),
            part(5, &[&[1, 5], &[2, 4], &[3]])
        );
        assert_eq!(
            common_refinement(5, &[Partition::trivial(5)]),
            Partition::trivial(5)
        );
        assert_eq!(common_refinement(5, &[a.clone(), a.clone()]), a);
    }

    #[test]
    fn admissibility_examples() {
        let pair = abels_pair(2);
        assert!(is_admissible(&part(3, &[&[2], &[1, 3]]), &pair));
        assert!(!is_admissible(&part(3, &[&[1, 2], &[3]]), &pair));

        // The literal definitions make the pairing partition admissible for
        // the k=2 overlap pair, witnessed by the two sign vectors above.
        let ex3 = overlap_pair(2, false);
        assert!(is_admissible(&part(5, &[&[1, 5], &[2, 4], &[3]]), &ex3));
    }

    #[test]
    fn partition_of_and_essential_dimension() {
        let v = abels_pair(2).derived_vector();
        assert!(part(3, &[&[1, 3], &[2]]).is_partition_of(&v));
        assert!(!Partition::discrete(3).is_partition_of(&v));
        assert!(Partition::trivial(3).is_partition_of(&v));

        assert_eq!(
            part(3, &[&[1, 3], &[2]]).essential_dimension(&v).unwrap(),
            1
        );
        assert!(matches!(
            Partition::discrete(3).essential_dimension(&v),
            Err(InvariantError::NotPartitionOfV)
        ));
        assert_eq!(Partition::trivial(3).essential_dimension(&v).unwrap(), 2);

        let ex3 = overlap_pair(2, false).derived_vector();
        assert_eq!(
            part(5, &[&[1, 2, 4, 5], &[3]])
                .essential_dimension(&ex3)
                .unwrap(),
            3
        );
    }

    #[test]
    fn minimal_ed_examples() {
        for n in 2..=8 {
            let med = minimal_essential_dimension(&abels_pair(n), Engine::Search);
            assert_eq!(med.m, 1, "Abels pair n={n}");
        }
        let med = minimal_essential_dimension(&abels_pair(2), Engine::Search);
        assert_eq!(med.witness, part(3, &[&[1, 3], &[2]]));

        let med = minimal_essential_dimension(&grid_pair(2, 3), Engine::Search);
        assert_eq!(med.m, 2);

        let med = minimal_essential_dimension(&overlap_pair(2, false), Engine::Oracle);
        assert_eq!(med.m, 2);
        // Two pairings attain m = 2; the lexicographically smaller one wins.
        assert_eq!(med.witness, part(5, &[&[1, 4], &[2, 5], &[3]]));
        let v = overlap_pair(2, false).derived_vector();
        let other = part(5, &[&[1, 5], &[2, 4], &[3]]);
        assert!(is_admissible(&other, &overlap_pair(2, false)));
        assert_eq!(other.essential_dimension(&v).unwrap(), 2);
    }

    #[test]
    fn finiteness_lengths_examples() {
        let fl = finiteness_lengths(&abels_pair(4));
        assert_eq!((fl.classical, fl.bredon), (3, 0));

        let fl = finiteness_lengths(&grid_pair(2, 3));
        assert_eq!((fl.classical, fl.bredon), (2, 1));

        let fl = finiteness_lengths(&VectorPair::new(vec![2, 0], vec![1, -1]).unwrap());
        assert_eq!((fl.classical, fl.bredon), (0, 0));
    }

    #[test]
    fn sign_group_is_a_group() {
        for pair in [abels_pair(3), grid_pair(2, 4), overlap_pair(2, false)] {
            let e = sign_group(&pair);
            assert!(e.contains(&SignVector::all_plus(pair.points())));
            for a in &e {
                for b in &e {
                    assert!(e.contains(&a.product(b)));
                }
            }
        }
    }

    #[test]
    fn partition_from_signs_equals_generated_subgroup() {
        let pair = overlap_pair(2, false);
        let e = sign_group(&pair);
        for i in 0..e.len() {
            for j in i..e.len() {
                let gens = [e[i], e[j]];
                let closure = [e[i], e[j], e[i].product(&e[j])];
                assert_eq!(
                    partition_from_signs(5, &gens),
                    partition_from_signs(5, &closure)
                );
            }
        }
    }

    #[test]
    fn f2_subspace_counts_are_galois_numbers() {
        assert_eq!(f2_subspaces(0).len(), 1);
        assert_eq!(f2_subspaces(1).len(), 2);
        assert_eq!(f2_subspaces(2).len(), 5);
        assert_eq!(f2_subspaces(3).len(), 16);
        assert_eq!(f2_subspaces(4).len(), 67);
        assert_eq!(f2_subspaces(5).len(), 374);
    }

    #[test]
    fn engines_agree_on_small_pairs() {
        for pair in [
            abels_pair(2),
            abels_pair(4),
            grid_pair(1, 3),
            grid_pair(3, 4),
            overlap_pair(2, false),
            overlap_pair(2, true),
        ] {
            let a = admissible_partitions(&pair, Engine::Search);
            let b = admissible_partitions(&pair, Engine::Oracle);
            assert_eq!(a, b, "pair {:?}", pair);
        }
    }

    #[test]
    fn refinement_lowers_essential_dimension() {
        let pair = overlap_pair(2, false);
        let v = pair.derived_vector();
        let coarse = Partition::trivial(5);
        let fine = part(5, &[&[1, 5], &[2, 4], &[3]]);
        assert!(fine.refines(&coarse));
        assert!(fine.essential_dimension(&v).unwrap() <= coarse.essential_dimension(&v).unwrap());
    }

    #[test]
    fn all_even_pairs_make_every_partition_admissible() {
        let pair = overlap_pair(2, true);
        // Spot check a few arbitrary partitions of 5 points.
        for blocks in [
            vec![vec![1, 2], vec![3, 4, 5]],
            vec![vec![1], vec![2], vec![3], vec![4], vec![5]],
            vec![vec![1, 4], vec![2, 5], vec![3]],
            vec![vec![1, 2, 3, 4, 5]],
        ] {
            let p = Partition::from_one_based(5, blocks).unwrap();
            assert!(is_admissible(&p, &pair));
        }
    }

    #[test]
    fn doubling_preserves_zero_sum_blocks() {
        let single = overlap_pair(3, false);
        let double = overlap_pair(3, true);
        let v1 = single.derived_vector();
        let v2 = double.derived_vector();
        let p = part(7, &[&[1, 7], &[2, 6], &[3, 5], &[4]]);
        assert_eq!(p.is_partition_of(&v1), p.is_partition_of(&v2));
    }

    #[test]
    fn sign_vector_display_round_trip() {
        let s = SignVector::parse("+-+-").unwrap();
        assert_eq!(s.to_string(), "+-+-");
        assert_eq!(SignVector::parse("+1,-1,+1").unwrap().to_string(), "+-+");
    }
}
