//! Z_p-lattices in Q_p^dim with exact Z[1/p] arithmetic.
//!
//! A lattice is stored by a canonical pair (shift, H): H is the unique
//! upper triangular integer matrix with p-power diagonal p^{e_i} and
//! off-diagonal entries reduced into [0, p^{e_i}), whose columns span
//! p^shift * Lambda over Z_p, with shift >= 0 minimal.  Equal lattices have
//! bitwise-equal representations, so hashing and ordering are free.
//!
//! The columns of H / p^shift form an upper triangular basis over Z[1/p];
//! its diagonal valuations are the apartment coordinates of the vertex
//! under the retraction centered at the chamber fixed by the upper
//! triangular subgroup, and the basis matrix itself is the Borel reduction.

use crate::hnf;
use crate::invariants::SignVector;
use crate::rat::{in_z_inv_p, int_pow_p, int_valuation, pow_p, valuation, Rat, Valuation};
use num::bigint::BigInt;
use num::{Integer, One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("SingularBasis: generators do not span the full space")]
    SingularBasis,
    #[error("SingularMatrix: matrix is not invertible over Q_p")]
    SingularMatrix,
    #[error("NonPAdicEntry: entry {0} is not in Z[1/{1}]")]
    NonPAdicEntry(String, u64),
    #[error("DimensionMismatch: expected dimension {0}, got {1}")]
    DimensionMismatch(usize, usize),
    #[error("PrimeMismatch: expected prime {0}, got {1}")]
    PrimeMismatch(u64, u64),
    #[error("NotInvolution: the matrix does not square to the identity")]
    NotInvolution,
    #[error("NotTriangular: the matrix is not upper triangular")]
    NotTriangular,
    #[error("EvenPrime: the diagonalization recipe needs p odd")]
    EvenPrime,
    #[error("NotUnipotentConjugate: eigencolumn {0} leaves Z[1/p], no unipotent conjugator over the ring")]
    NotUnipotentConjugate(usize),
    #[error("ClassModelMismatch: height with sum(w) != 0 needs the extended model")]
    ClassModelMismatch,
    #[error("BadHeightVector: {0}")]
    BadHeightVector(String),
    #[error("BadLatticeJson: {0}")]
    BadLatticeJson(String),
}

/// Which simplicial model a vertex set lives in: honest lattices (extended
/// building) or homothety class representatives (quotient building).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Extended,
    Quotient,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Extended => write!(f, "extended"),
            Model::Quotient => write!(f, "quotient"),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "extended" => Ok(Model::Extended),
            "quotient" => Ok(Model::Quotient),
            other => Err(format!("unknown model `{other}` (extended|quotient)")),
        }
    }
}

/// Square matrix over Z[1/p].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMatrix {
    p: u64,
    rows: Vec<Vec<Rat>>,
}

impl PMatrix {
    pub fn new(p: u64, rows: Vec<Vec<Rat>>) -> Result<Self, LatticeError> {
        let n = rows.len();
        assert!(n >= 1, "empty matrix");
        for row in &rows {
            if row.len() != n {
                return Err(LatticeError::DimensionMismatch(n, row.len()));
            }
            for e in row {
                if !in_z_inv_p(e, p) {
                    return Err(LatticeError::NonPAdicEntry(e.to_string(), p));
                }
            }
        }
        Ok(PMatrix { p, rows })
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        PMatrix { p, rows }
    }

    pub fn diagonal(p: u64, entries: Vec<Rat>) -> Result<Self, LatticeError> {
        let n = entries.len();
        let mut rows = vec![vec![Rat::zero(); n]; n];
        for (i, e) in entries.into_iter().enumerate() {
            rows[i][i] = e;
        }
        PMatrix::new(p, rows)
    }

    pub fn from_sign_vector(p: u64, s: &SignVector) -> Self {
        let entries = (0..s.points())
            .map(|i| Rat::from_integer(BigInt::from(s.sign(i))))
            .collect();
        PMatrix::diagonal(p, entries).expect("signs are units")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &PMatrix) -> PMatrix {
        assert_eq!(self.p, other.p);
        let n = self.n();
        assert_eq!(n, other.n());
        let mut rows = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &self.rows[i][k] * &other.rows[k][j];
                    rows[i][j] += t;
                }
            }
        }
        PMatrix { p: self.p, rows }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.n();
        assert_eq!(n, v.len());
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.rows[i][j] * &v[j])
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j].is_zero()))
    }

    pub fn is_unipotent_upper(&self) -> bool {
        self.is_upper_triangular() && (0..self.n()).all(|i| self.rows[i][i].is_one())
    }

    pub fn diagonal_entries(&self) -> Vec<Rat> {
        (0..self.n()).map(|i| self.rows[i][i].clone()).collect()
    }

    /// Determinant by exact rational elimination.
    pub fn det(&self) -> Rat {
        let n = self.n();
        let mut a = self.rows.clone();
        let mut acc = Rat::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            if piv != k {
                a.swap(k, piv);
                acc = -acc;
            }
            acc *= a[k][k].clone();
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        acc
    }

    /// Inverse, if the matrix is invertible.
    pub fn inverse(&self) -> Option<PMatrix> {
        let n = self.n();
        let mut a = self.rows.clone();
        let mut b = PMatrix::identity(self.p, n).rows;
        for k in 0..n {
            let piv = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, piv);
            b.swap(k, piv);
            let inv = a[k][k].recip();
            for j in 0..n {
                a[k][j] *= inv.clone();
                b[k][j] *= inv.clone();
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                    let t = &f * &b[k][j];
                    b[i][j] -= t;
                }
            }
        }
        // Entries of the inverse may leave Z[1/p]; the group operations we
        // use it for (conjugation checks) stay exact over Q.
        Some(PMatrix { p: self.p, rows: b })
    }
}

impl fmt::Display for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let es: Vec<String> = r.iter().map(|e| e.to_string()).collect();
                format!("[{}]", es.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Canonical finite representation of a Z_p-lattice in Q_p^dim.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    p: u64,
    dim: usize,
    shift: u64,
    hnf: Vec<Vec<BigInt>>,
    exps: Vec<u64>,
}

impl Lattice {
    /// The standard lattice Z_p^dim.
    pub fn standard(p: u64, dim: usize) -> Self {
        Lattice::diagonal(p, &vec![0i64; dim])
    }

    /// The lattice spanned by p^{e_i} times the standard basis vectors.
    pub fn diagonal(p: u64, exps: &[i64]) -> Self {
        assert!(!exps.is_empty());
        let dim = exps.len();
        let shift = exps.iter().map(|&e| (-e).max(0)).max().unwrap() as u64;
        let mut hnf = hnf::zeros(dim, dim);
        let mut stored = Vec::with_capacity(dim);
        for (i, &e) in exps.iter().enumerate() {
            let se = (e + shift as i64) as u64;
            hnf[i][i] = int_pow_p(p, se);
            stored.push(se);
        }
        Lattice {
            p,
            dim,
            shift,
            hnf,
            exps: stored,
        }
    }

    /// Canonicalizes the Z_p-span of the given generator columns.  Two
    /// generator sets span the same lattice iff the results are equal.
    pub fn from_generators(p: u64, dim: usize, cols: &[Vec<Rat>]) -> Result<Self, LatticeError> {
        assert!(dim >= 1);
        if cols.len() < dim {
            return Err(LatticeError::SingularBasis);
        }
        for c in cols {
            if c.len() != dim {
                return Err(LatticeError::DimensionMismatch(dim, c.len()));
            }
            for e in c {
                if !in_z_inv_p(e, p) {
                    return Err(LatticeError::NonPAdicEntry(e.to_string(), p));
                }
            }
        }
        // Scale into Z^dim.
        let mut shift = 0u64;
        for c in cols {
            for e in c {
                if let Valuation::Finite(v) = valuation(e, p) {
                    if v < 0 {
                        shift = shift.max((-v) as u64);
                    }
                }
            }
        }
        let scale = pow_p(p, shift as i64);
        let gens: hnf::Mat = (0..dim)
            .map(|i| {
                cols.iter()
                    .map(|c| {
                        let x = &c[i] * &scale;
                        debug_assert!(x.denom().is_one());
                        x.numer().clone()
                    })
                    .collect()
            })
            .collect();
        Lattice::from_integer_generators(p, dim, shift, gens)
    }

    /// Core canonicalization: the lattice p^{-shift} * span(integer
    /// columns).  Row-major matrix, columns are generators.
    pub(crate) fn from_integer_generators(
        p: u64,
        dim: usize,
        shift: u64,
        gens: hnf::Mat,
    ) -> Result<Self, LatticeError> {
        // Integer column HNF of the Z-span; its Z_p-span is the target.
        let t = hnf::upper_triangular_span(&gens).ok_or(LatticeError::SingularBasis)?;
        let hnf = p_local_normalize(p, dim, &t);
        Ok(Lattice::assemble(p, dim, shift, hnf))
    }

    pub(crate) fn hnf_matrix(&self) -> &hnf::Mat {
        &self.hnf
    }

    pub(crate) fn shift(&self) -> u64 {
        self.shift
    }

    /// Canonicalizes a square basis matrix given by columns.
    pub fn from_basis_columns(p: u64, cols: &[Vec<Rat>]) -> Result<Self, LatticeError> {
        let dim = cols.len();
        Lattice::from_generators(p, dim, cols)
    }

    fn assemble(p: u64, dim: usize, shift: u64, hnf: Vec<Vec<BigInt>>) -> Self {
        let mut lat = Lattice {
            p,
            dim,
            shift,
            exps: (0..dim).map(|i| int_valuation(&hnf[i][i], p)).collect(),
            hnf,
        };
        lat.minimize_shift();
        lat
    }

    fn minimize_shift(&mut self) {
        if self.shift == 0 {
            return;
        }
        let mut common = u64::MAX;
        for row in &self.hnf {
            for e in row {
                if !e.is_zero() {
                    common = common.min(int_valuation(e, self.p));
                }
            }
        }
        let s = common.min(self.shift);
        if s == 0 {
            return;
        }
        let d = int_pow_p(self.p, s);
        for row in self.hnf.iter_mut() {
            for e in row.iter_mut() {
                if !e.is_zero() {
                    *e = &*e / &d;
                }
            }
        }
        for e in self.exps.iter_mut() {
            *e -= s;
        }
        self.shift -= s;
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Upper triangular basis over Z[1/p], as columns.
    pub fn basis_columns(&self) -> Vec<Vec<Rat>> {
        let den = int_pow_p(self.p, self.shift);
        (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|i| Rat::new(self.hnf[i][j].clone(), den.clone()))
                    .collect()
            })
            .collect()
    }

    /// The triangular basis as a matrix over Z[1/p]; this is a valid Borel
    /// reduction: it is upper triangular, invertible, and maps the standard
    /// lattice onto this one.
    pub fn borel_reduce(&self) -> PMatrix {
        let den = int_pow_p(self.p, self.shift);
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| Rat::new(self.hnf[i][j].clone(), den.clone()))
                    .collect()
            })
            .collect();
        PMatrix::new(self.p, rows).expect("triangular basis entries lie in Z[1/p]")
    }

    /// Apartment coordinates of the vertex: the valuations of the diagonal
    /// of the triangular basis.
    pub fn retraction(&self) -> Vec<i64> {
        self.exps
            .iter()
            .map(|&e| e as i64 - self.shift as i64)
            .collect()
    }

    /// Valuation of det of the basis; ind(Lambda_0, self) in disguise.
    pub fn nu_det(&self) -> i64 {
        self.retraction().iter().sum()
    }

    /// p^k * self.
    pub fn scale_by_p(&self, k: i64) -> Lattice {
        if k == 0 {
            return self.clone();
        }
        let raw = self.shift as i64 - k;
        if raw >= 0 {
            Lattice::assemble(self.p, self.dim, raw as u64, self.hnf.clone())
        } else {
            let f = int_pow_p(self.p, (-raw) as u64);
            let hnf = self
                .hnf
                .iter()
                .map(|row| row.iter().map(|e| e * &f).collect())
                .collect();
            Lattice::assemble(self.p, self.dim, 0, hnf)
        }
    }

    /// Membership test for a vector with entries in Q.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        // Solve H x = p^shift v by back substitution; v is in the lattice
        // iff every coefficient is p-integral.
        let scale = pow_p(self.p, self.shift as i64);
        let mut rhs: Vec<Rat> = v.iter().map(|e| e * &scale).collect();
        for i in (0..self.dim).rev() {
            let diag = Rat::from_integer(self.hnf[i][i].clone());
            let x = &rhs[i] / &diag;
            match valuation(&x, self.p) {
                Valuation::Infinite => {}
                Valuation::Finite(val) if val >= 0 => {}
                _ => return false,
            }
            for r in 0..i {
                let t = &x * Rat::from_integer(self.hnf[r][i].clone());
                rhs[r] -= t;
            }
            rhs[i] = x;
        }
        true
    }

    /// True iff self is contained in other (as Z_p-spans).
    pub fn subset_of(&self, other: &Lattice) -> bool {
        assert_eq!(self.p, other.p);
        assert_eq!(self.dim, other.dim);
        self.basis_columns().iter().all(|c| other.contains(c))
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Vec<String>> = self
            .basis_columns()
            .iter()
            .map(|c| c.iter().map(|e| e.to_string()).collect())
            .collect();
        json!({"p": self.p, "dim": self.dim, "basis": basis})
    }

    pub fn from_json(v: &Value) -> Result<Self, LatticeError> {
        let bad = |m: &str| LatticeError::BadLatticeJson(m.to_string());
        let p = v
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing prime `p`"))?;
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing `dim`"))? as usize;
        let basis = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `basis`"))?;
        let cols: Vec<Vec<Rat>> = basis
            .iter()
            .map(|col| {
                col.as_array()
                    .ok_or_else(|| bad("basis column is not an array"))?
                    .iter()
                    .map(|e| {
                        let s = e
                            .as_str()
                            .ok_or_else(|| bad("basis entry is not a string"))?;
                        crate::rat::parse_rat(s).map_err(|e| bad(&e))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Lattice::from_generators(p, dim, &cols)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .basis_columns()
            .iter()
            .map(|c| {
                let es: Vec<String> = c.iter().map(|e| e.to_string()).collect();
                format!("({})", es.join(","))
            })
            .collect();
        write!(f, "span{{{}}}", cols.join(", "))
    }
}

/// Brings a full-rank upper triangular integer matrix into the canonical
/// p-local form: diagonal entries become exact p-powers and off-diagonal
/// entries are reduced into [0, p^{e_row}).  All operations are column
/// operations invertible over Z_p, performed modulo p^L with L exceeding
/// the total diagonal valuation.
fn p_local_normalize(p: u64, dim: usize, t: &hnf::Mat) -> hnf::Mat {
    let delta: u64 = (0..dim).map(|i| int_valuation(&t[i][i], p)).sum();
    let l = delta + 1;
    let modulus = int_pow_p(p, l);
    let mut r: hnf::Mat = t
        .iter()
        .map(|row| row.iter().map(|e| e.mod_floor(&modulus)).collect())
        .collect();
    // Normalize each diagonal to an exact p-power via a unit scaling.
    for j in 0..dim {
        let e_j = int_valuation(&t[j][j], p);
        let pe = int_pow_p(p, e_j);
        let unit = (&t[j][j] / &pe).mod_floor(&modulus);
        let w = mod_inverse(&unit, &modulus);
        for i in 0..=j {
            r[i][j] = (&r[i][j] * &w).mod_floor(&modulus);
        }
        r[j][j] = pe;
    }
    // Reduce off-diagonal entries; subtracting q * col_i preserves rows
    // below i of col_j, so work upwards within each column.
    for j in 0..dim {
        for i in (0..j).rev() {
            let pe = int_pow_p(p, int_valuation(&r[i][i], p));
            let q = r[i][j].div_floor(&pe);
            if q.is_zero() {
                continue;
            }
            for k in 0..=i {
                let t = &q * &r[k][i];
                r[k][j] = (&r[k][j] - t).mod_floor(&modulus);
            }
        }
    }
    r
}

/// Inverse of a unit modulo m (extended Euclid).
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not a unit modulo m");
    e.x.mod_floor(m)
}

/// Set-theoretic relation of two lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOrder {
    Equal,
    Subset,
    Superset,
    Incomparable,
}

pub fn lattice_order(a: &Lattice, b: &Lattice) -> LatticeOrder {
    if a == b {
        return LatticeOrder::Equal;
    }
    if a.subset_of(b) {
        return LatticeOrder::Subset;
    }
    if b.subset_of(a) {
        return LatticeOrder::Superset;
    }
    LatticeOrder::Incomparable
}

/// g . Lambda for g invertible over Q_p with entries in Z[1/p].
pub fn act(g: &PMatrix, a: &Lattice) -> Result<Lattice, LatticeError> {
    if g.p() != a.p() {
        return Err(LatticeError::PrimeMismatch(a.p(), g.p()));
    }
    if g.n() != a.dim() {
        return Err(LatticeError::DimensionMismatch(a.dim(), g.n()));
    }
    let cols: Vec<Vec<Rat>> = a.basis_columns().iter().map(|c| g.apply(c)).collect();
    Lattice::from_basis_columns(a.p(), &cols).map_err(|e| match e {
        LatticeError::SingularBasis => LatticeError::SingularMatrix,
        other => other,
    })
}

/// ind(A, B) = length(A / L1) - length(B / L1) for a common sublattice L1;
/// the value does not depend on the choice.  Lengths of the finite
/// quotients are valuations of relative determinants.
pub fn index(a: &Lattice, b: &Lattice) -> i64 {
    assert_eq!(a.p(), b.p());
    assert_eq!(a.dim(), b.dim());
    // p^N Lambda_0 <= L whenever N + shift clears the determinant
    // valuation of the integer Hermite matrix (its inverse is the adjugate
    // over p^{sum of exponents}).
    let clears = |l: &Lattice| l.nu_det() + (l.dim() as i64 - 1) * l.shift as i64;
    let n = clears(a).max(clears(b)).max(0) + 1;
    let sub = Lattice::diagonal(a.p(), &vec![n; a.dim()]);
    debug_assert!(sub.subset_of(a) && sub.subset_of(b));
    let len_a = sub.nu_det() - a.nu_det();
    let len_b = sub.nu_det() - b.nu_det();
    len_a - len_b
}

/// epsilon(A) = ind(A, Lambda_0) / dim, the coordinate along the line
/// factor of the extended building.
pub fn epsilon(a: &Lattice) -> Rat {
    let ind = index(a, &Lattice::standard(a.p(), a.dim()));
    Rat::new(BigInt::from(ind), BigInt::from(a.dim() as i64))
}

/// The canonical homothety class representative, scaled so that
/// epsilon lands in (-1, 0].
pub fn class_representative(a: &Lattice) -> Lattice {
    let ind = index(a, &Lattice::standard(a.p(), a.dim()));
    let dim = a.dim() as i64;
    let k = ind.div_euclid(dim) + i64::from(ind.rem_euclid(dim) != 0);
    a.scale_by_p(k)
}

/// Enumerates the proper subspaces of F_p^dim once and reuses the lifted
/// coefficient patterns across neighbor expansions.
pub struct NeighborContext {
    p: u64,
    dim: usize,
    /// Subspace bases as integer coefficient columns, grouped by dimension
    /// 0..=dim (dimension dim is the full space).
    by_dim: Vec<Vec<Vec<Vec<BigInt>>>>,
}

impl NeighborContext {
    pub fn new(p: u64, dim: usize) -> Self {
        let mut by_dim: Vec<Vec<Vec<Vec<BigInt>>>> = vec![Vec::new(); dim + 1];
        for basis in fp_subspaces(p, dim) {
            let r = basis.len();
            let cols: Vec<Vec<BigInt>> = basis
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            by_dim[r].push(cols);
        }
        NeighborContext { p, dim, by_dim }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Neighbors of A: in the extended model all lattices B != A with
    /// pA <= B <= A or pB <= A <= B; in the quotient model the canonical
    /// class representatives of the same, deduplicated by homothety.
    pub fn neighbors(&self, a: &Lattice, model: Model) -> Vec<Lattice> {
        assert_eq!(a.p(), self.p);
        assert_eq!(a.dim(), self.dim);
        // Work on the integer Hermite matrix directly: p^shift * B is
        // spanned by [p * H | H * s] over the subspace lift vectors s.
        let h = a.hnf_matrix();
        let shift = a.shift();
        let p_big = BigInt::from(self.p);
        let scaled: Vec<Vec<BigInt>> = h
            .iter()
            .map(|row| row.iter().map(|e| e * &p_big).collect())
            .collect();
        let mut out: Vec<Lattice> = Vec::new();
        let mut push_subspace_lattice = |r: usize, coeffs: &Vec<Vec<BigInt>>, up: bool| {
            let mut gens = scaled.clone();
            for (i, row) in gens.iter_mut().enumerate() {
                for col in coeffs.iter().take(r) {
                    row.push(
                        (0..self.dim)
                            .map(|j| &h[i][j] * &col[j])
                            .fold(BigInt::zero(), |acc, t| acc + t),
                    );
                }
            }
            let lat = Lattice::from_integer_generators(self.p, self.dim, shift, gens)
                .expect("subspace preimages are full rank");
            out.push(if up { lat.scale_by_p(-1) } else { lat });
        };
        for (r, group) in self.by_dim.iter().enumerate() {
            for coeffs in group {
                if r < self.dim {
                    push_subspace_lattice(r, coeffs, false);
                }
                if r > 0 {
                    push_subspace_lattice(r, coeffs, true);
                }
            }
        }
        match model {
            Model::Extended => {
                out.sort();
                out.dedup();
                out.retain(|b| b != a);
            }
            Model::Quotient => {
                let center = class_representative(a);
                out = out.iter().map(class_representative).collect();
                out.sort();
                out.dedup();
                out.retain(|b| *b != center);
            }
        }
        out
    }
}

/// All subspaces of F_p^dim, each as a reduced-row-echelon basis; rows are
/// coefficient vectors with entries in 0..p.
pub fn fp_subspaces(p: u64, dim: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = vec![vec![]];
    for r in 1..=dim {
        let mut pivots = Vec::new();
        rref_rec(p, dim, r, 0, &mut pivots, &mut out);
    }
    out
}

fn rref_rec(
    p: u64,
    dim: usize,
    r: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<u64>>>,
) {
    if pivots.len() == r {
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for c in (pc + 1)..dim {
                if !pivots.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let total = p.pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows: Vec<Vec<u64>> = pivots
                .iter()
                .map(|&pc| {
                    let mut row = vec![0u64; dim];
                    row[pc] = 1;
                    row
                })
                .collect();
            for &(i, c) in &free {
                rows[i][c] = code % p;
                code /= p;
            }
            out.push(rows);
        }
        return;
    }
    for pc in start..dim {
        pivots.push(pc);
        rref_rec(p, dim, r, pc + 1, pivots, out);
        pivots.pop();
    }
}

/// Gaussian binomial [n choose k]_p.
pub fn gaussian_binomial(p: u64, n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let pb = BigInt::from(p);
    for i in 0..k {
        num *= pb.pow((n - i) as u32) - BigInt::one();
        den *= pb.pow((i + 1) as u32) - BigInt::one();
    }
    num / den
}

/// True iff the given lattices can be ordered L_0 <= ... <= L_k with
/// p L_k <= L_0 (a simplex of the extended simplicial model; duplicates
/// collapse).
pub fn chain_is_simplex(chain: &[Lattice]) -> bool {
    assert!(!chain.is_empty());
    let p = chain[0].p();
    let dim = chain[0].dim();
    assert!(chain.iter().all(|l| l.p() == p && l.dim() == dim));
    let mut sorted: Vec<&Lattice> = chain.iter().collect();
    sorted.sort();
    sorted.dedup();
    // Containment forces strictly decreasing nu_det along the chain.
    sorted.sort_by_key(|l| std::cmp::Reverse(l.nu_det()));
    for w in sorted.windows(2) {
        if !w[0].subset_of(w[1]) {
            return false;
        }
    }
    let top = sorted.last().unwrap();
    top.scale_by_p(1).subset_of(sorted[0])
}

/// A dominant integer height vector; the linear functional <w, retraction>
/// is the exact combinatorial stand-in for the Busemann functions of the
/// filtrations (up to a negative rescaling).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    w: Vec<i64>,
}

impl HeightFunction {
    pub fn new(w: Vec<i64>) -> Result<Self, LatticeError> {
        if w.is_empty() || w.iter().all(|&x| x == 0) {
            return Err(LatticeError::BadHeightVector("w must be nonzero".into()));
        }
        if w.windows(2).any(|t| t[0] < t[1]) {
            return Err(LatticeError::BadHeightVector(
                "entries must be monotonically non-increasing".into(),
            ));
        }
        Ok(HeightFunction { w })
    }

    pub fn coords(&self) -> &[i64] {
        &self.w
    }

    pub fn sum(&self) -> i64 {
        self.w.iter().sum()
    }

    /// Height of a lattice in the extended model; descends to homothety
    /// classes exactly when sum(w) = 0.
    pub fn eval(&self, a: &Lattice) -> i64 {
        assert_eq!(self.w.len(), a.dim());
        self.w
            .iter()
            .zip(a.retraction())
            .map(|(&wi, ri)| wi * ri)
            .sum()
    }
}

/// Height with the model guard: a nonzero-sum height is only defined on
/// honest lattices, not on class representatives.
pub fn height(a: &Lattice, h: &HeightFunction, model: Model) -> Result<i64, LatticeError> {
    if h.sum() != 0 && model == Model::Quotient {
        return Err(LatticeError::ClassModelMismatch);
    }
    Ok(h.eval(a))
}

/// Outcome of testing a lattice against a diagonal involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionAnalysis {
    pub fixed: bool,
    pub splits: bool,
    /// Intersection with the +1 coordinate subspace, in its own dimension
    /// (None when the subspace is zero).
    pub plus: Option<Lattice>,
    pub minus: Option<Lattice>,
    pub plus_coords: Vec<usize>,
    pub minus_coords: Vec<usize>,
}

/// Intersection of A with the coordinate subspace spanned by `coords`,
/// expressed as a lattice in that subspace.
pub fn coordinate_intersection(a: &Lattice, coords: &[usize]) -> Option<Lattice> {
    if coords.is_empty() {
        return None;
    }
    let dim = a.dim();
    let complement: Vec<usize> = (0..dim).filter(|i| !coords.contains(i)).collect();
    let basis = a.basis_columns();
    if complement.is_empty() {
        return Some(a.clone());
    }
    // Solve for Z_p-combinations of the basis with zero complement rows.
    // The scaled basis p^shift * basis is the integer HNF matrix, so its
    // complement rows give an integer system with the same kernel.
    let rows: hnf::Mat = complement
        .iter()
        .map(|&i| (0..dim).map(|j| a.hnf[i][j].clone()).collect())
        .collect();
    let kernel = hnf::kernel_basis(&rows);
    debug_assert_eq!(kernel.len(), coords.len());
    let cols: Vec<Vec<Rat>> = kernel
        .iter()
        .map(|k| {
            coords
                .iter()
                .map(|&i| {
                    (0..dim)
                        .map(|j| &basis[j][i] * Rat::from_integer(k[j].clone()))
                        .fold(Rat::zero(), |acc, t| acc + t)
                })
                .collect()
        })
        .collect();
    Some(
        Lattice::from_basis_columns(a.p(), &cols)
            .expect("saturated kernel gives a full-rank sublattice"),
    )
}

/// Tests whether A is fixed by the diagonal involution with the given
/// signs, and whether it splits as the direct sum of its intersections
/// with the two eigenspaces.  For p odd the two are equivalent; for p = 2
/// fixed lattices may fail to split.
/// Fast fixedness test: sigma(Lambda) = Lambda iff every sign-flipped
/// basis column lies back in Lambda (the determinant is already equal).
pub fn is_fixed_by_signs(s: &SignVector, a: &Lattice) -> bool {
    assert_eq!(s.points(), a.dim());
    if (0..a.dim()).all(|i| !s.is_minus(i)) || (0..a.dim()).all(|i| s.is_minus(i)) {
        return true;
    }
    a.basis_columns().iter().all(|c| {
        let flipped: Vec<Rat> = c
            .iter()
            .enumerate()
            .map(|(i, e)| if s.is_minus(i) { -e.clone() } else { e.clone() })
            .collect();
        a.contains(&flipped)
    })
}

/// nu_det of the intersection with a coordinate subspace, without
/// materialising the canonical form.
pub fn coordinate_intersection_nu_det(a: &Lattice, coords: &[usize]) -> i64 {
    if coords.is_empty() {
        return 0;
    }
    let dim = a.dim();
    let complement: Vec<usize> = (0..dim).filter(|i| !coords.contains(i)).collect();
    if complement.is_empty() {
        return a.nu_det();
    }
    let h = a.hnf_matrix();
    let rows: hnf::Mat = complement
        .iter()
        .map(|&i| (0..dim).map(|j| h[i][j].clone()).collect())
        .collect();
    let kernel = hnf::kernel_basis(&rows);
    debug_assert_eq!(kernel.len(), coords.len());
    // Basis of the intersection in subspace coordinates: rows `coords` of
    // H * K, divided by p^shift; only the determinant valuation matters.
    let m: hnf::Mat = coords
        .iter()
        .map(|&i| {
            kernel
                .iter()
                .map(|k| {
                    (0..dim)
                        .map(|j| &h[i][j] * &k[j])
                        .fold(BigInt::zero(), |acc, t| acc + t)
                })
                .collect()
        })
        .collect();
    let d = hnf::det(&m);
    int_valuation(&d, a.p()) as i64 - coords.len() as i64 * a.shift() as i64
}

pub fn involution_analysis(s: &SignVector, a: &Lattice) -> InvolutionAnalysis {
    assert_eq!(s.points(), a.dim());
    let fixed = is_fixed_by_signs(s, a);
    let plus_coords: Vec<usize> = (0..a.dim()).filter(|&i| !s.is_minus(i)).collect();
    let minus_coords: Vec<usize> = (0..a.dim()).filter(|&i| s.is_minus(i)).collect();
    let plus = coordinate_intersection(a, &plus_coords);
    let minus = coordinate_intersection(a, &minus_coords);
    let sum_nu: i64 =
        plus.as_ref().map_or(0, Lattice::nu_det) + minus.as_ref().map_or(0, Lattice::nu_det);
    let splits = sum_nu == a.nu_det();
    debug_assert!(!splits || fixed, "splitting lattices are always fixed");
    InvolutionAnalysis {
        fixed,
        splits,
        plus,
        minus,
        plus_coords,
        minus_coords,
    }
}

/// Diagonalizes an upper triangular involution over Z[1/p], p odd, by the
/// eigencolumn recipe: column i of (id + g)/2 or (id - g)/2 according to
/// the sign of the diagonal entry.  Returns the unipotent conjugator u and
/// the diagonal signs d with u^{-1} g u = diag(d).
pub fn diagonalize_involution(g: &PMatrix) -> Result<(PMatrix, SignVector), LatticeError> {
    if g.p() == 2 {
        return Err(LatticeError::EvenPrime);
    }
    if !g.is_upper_triangular() {
        return Err(LatticeError::NotTriangular);
    }
    let n = g.n();
    let id = PMatrix::identity(g.p(), n);
    if g.mul(g) != id {
        return Err(LatticeError::NotInvolution);
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut minus = 0u64;
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        let d = g.entry(j, j);
        let sign = if d.is_one() {
            1
        } else {
            minus |= 1 << j;
            -1
        };
        let col: Vec<Rat> = (0..n)
            .map(|i| {
                let delta = if i == j { Rat::one() } else { Rat::zero() };
                let term = Rat::from_integer(BigInt::from(sign)) * g.entry(i, j);
                (delta + term) * &half
            })
            .collect();
        for e in &col {
            if !in_z_inv_p(e, g.p()) {
                // The recipe needs 2 to be invertible in the ring; over
                // Z[1/p] this column has no representative.
                return Err(LatticeError::NotUnipotentConjugate(j + 1));
            }
        }
        cols.push(col);
    }
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect();
    let u = PMatrix::new(g.p(), rows)?;
    debug_assert!(u.is_unipotent_upper());
    let d = SignVector::new(n, minus);
    debug_assert_eq!(
        u.inverse().expect("unipotent").mul(g).mul(&u),
        PMatrix::from_sign_vector(g.p(), &d)
    );
    Ok((u, d))
}

/// Deterministic total order helper for vertex keys.
pub fn cmp_lattices(a: &Lattice, b: &Lattice) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{parse_rat, rat_from_i64};

    fn rv(xs: &[&str]) -> Vec<Rat> {
        xs.iter().map(|s| parse_rat(s).unwrap()).collect()
    }

    fn lat(p: u64, cols: &[&[&str]]) -> Lattice {
        let cols: Vec<Vec<Rat>> = cols.iter().map(|c| rv(c)).collect();
        Lattice::from_basis_columns(p, &cols).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let a = lat(2, &[&["1", "0"], &["1/2", "1"]]);
        assert_ne!(a, Lattice::standard(2, 2));
        let b = a.borel_reduce();
        assert_eq!(b.entry(0, 0), &rat_from_i64(1));
        assert_eq!(b.entry(0, 1), &parse_rat("1/2").unwrap());
        assert_eq!(b.entry(1, 1), &rat_from_i64(1));

        let c = lat(2, &[&["2", "0"], &["1", "1"]]);
        let cb = c.borel_reduce();
        assert_eq!(cb.entry(0, 0), &rat_from_i64(2));
        assert_eq!(cb.entry(0, 1), &rat_from_i64(1));
        assert_eq!(cb.entry(1, 1), &rat_from_i64(1));

        let cols = vec![rv(&["1", "0"]), rv(&["2", "0"])];
        assert!(matches!(
            Lattice::from_basis_columns(2, &cols),
            Err(LatticeError::SingularBasis)
        ));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for cols in [
            vec![rv(&["1", "0"]), rv(&["1/2", "1"])],
            vec![rv(&["6", "2"]), rv(&["3", "9"])],
        ] {
            let a = Lattice::from_basis_columns(2, &cols).unwrap();
            let again = Lattice::from_basis_columns(2, &a.basis_columns()).unwrap();
            assert_eq!(a, again);
        }
    }

    #[test]
    fn same_span_same_canon() {
        // Lambda_0 from two different bases.
        let a = lat(3, &[&["1", "0"], &["0", "1"]]);
        let b = lat(3, &[&["1", "1"], &["2", "1"]]);
        // det = -1, unimodular over Z_3.
        assert_eq!(a, b);
        assert_eq!(a, Lattice::standard(3, 2));
    }

    #[test]
    fn diagonal_lattice_examples() {
        assert_eq!(Lattice::diagonal(3, &[0, 0]), Lattice::standard(3, 2));
        let l = Lattice::diagonal(3, &[0, 1]);
        assert!(l.contains(&rv(&["0", "3"])));
        assert!(!l.contains(&rv(&["0", "1"])));
        let m = Lattice::diagonal(3, &[-1, 0]);
        assert!(m.contains(&rv(&["1/3", "0"])));
        assert_eq!(m.retraction(), vec![-1, 0]);
    }

    #[test]
    fn order_examples() {
        let std2 = Lattice::standard(3, 2);
        let p_std = std2.scale_by_p(1);
        assert_eq!(lattice_order(&std2, &p_std), LatticeOrder::Superset);
        assert_eq!(
            lattice_order(
                &Lattice::diagonal(3, &[0, 1]),
                &Lattice::diagonal(3, &[1, 0])
            ),
            LatticeOrder::Incomparable
        );
        assert_eq!(
            lattice_order(&std2, &Lattice::standard(3, 2)),
            LatticeOrder::Equal
        );
    }

    #[test]
    fn act_examples() {
        let std2 = Lattice::standard(2, 2);
        let p_id = PMatrix::diagonal(2, rv(&["2", "2"])).unwrap();
        assert_eq!(act(&p_id, &std2).unwrap(), std2.scale_by_p(1));

        let u = PMatrix::new(2, vec![rv(&["1", "1"]), rv(&["0", "1"])]).unwrap();
        assert_eq!(act(&u, &std2).unwrap(), std2);

        let d = PMatrix::diagonal(2, rv(&["1", "1/2"])).unwrap();
        let moved = act(&d, &std2).unwrap();
        assert_eq!(moved, Lattice::diagonal(2, &[0, -1]));

        let sing = PMatrix::new(2, vec![rv(&["1", "1"]), rv(&["1", "1"])]).unwrap();
        assert!(matches!(
            act(&sing, &std2),
            Err(LatticeError::SingularMatrix)
        ));
    }

    #[test]
    fn composition_law() {
        let std3 = Lattice::standard(3, 3);
        let g = PMatrix::new(
            3,
            vec![
                rv(&["1", "3", "0"]),
                rv(&["0", "1/3", "2"]),
                rv(&["0", "0", "9"]),
            ],
        )
        .unwrap();
        let h = PMatrix::new(
            3,
            vec![
                rv(&["1/3", "0", "1"]),
                rv(&["0", "3", "0"]),
                rv(&["0", "1", "1"]),
            ],
        )
        .unwrap();
        let lhs = act(&g, &act(&h, &std3).unwrap()).unwrap();
        let rhs = act(&g.mul(&h), &std3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn index_and_epsilon_examples() {
        let std2 = Lattice::standard(2, 2);
        assert_eq!(index(&std2.scale_by_p(1), &std2), -2);
        assert_eq!(index(&std2, &std2), 0);
        assert_eq!(index(&Lattice::diagonal(2, &[0, 1]), &std2), -1);

        assert_eq!(epsilon(&std2), Rat::zero());
        assert_eq!(epsilon(&std2.scale_by_p(1)), rat_from_i64(-1));
        let d = PMatrix::diagonal(2, rv(&["1", "2"])).unwrap();
        assert_eq!(
            epsilon(&act(&d, &std2).unwrap()),
            parse_rat("-1/2").unwrap()
        );
    }

    #[test]
    fn index_additive_along_chains() {
        let a = Lattice::diagonal(5, &[0, 2, -1]);
        let b = Lattice::standard(5, 3);
        let c = lat(5, &[&["5", "0", "0"], &["1", "1", "0"], &["2", "0", "25"]]);
        assert_eq!(index(&a, &b) + index(&b, &c), index(&a, &c));
    }

    #[test]
    fn neighbor_counts() {
        let ctx = NeighborContext::new(3, 2);
        let n = ctx.neighbors(&Lattice::standard(3, 2), Model::Quotient);
        assert_eq!(n.len(), 4);

        let ctx = NeighborContext::new(2, 3);
        let n = ctx.neighbors(&Lattice::standard(2, 3), Model::Quotient);
        assert_eq!(n.len(), 14);

        let ctx = NeighborContext::new(2, 2);
        let n = ctx.neighbors(&Lattice::standard(2, 2), Model::Extended);
        assert_eq!(n.len(), 8);
        let std2 = Lattice::standard(2, 2);
        assert!(n.contains(&std2.scale_by_p(1)));
        assert!(n.contains(&std2.scale_by_p(-1)));
    }

    #[test]
    fn neighbor_counts_match_gaussian_binomials() {
        for p in [2u64, 3, 5] {
            for dim in [2usize, 3] {
                let ctx = NeighborContext::new(p, dim);
                let n = ctx.neighbors(&Lattice::standard(p, dim), Model::Extended);
                let per_direction: BigInt = (0..dim as u64)
                    .map(|k| gaussian_binomial(p, dim as u64, k))
                    .sum();
                assert_eq!(BigInt::from(n.len()), &per_direction * 2u32);
            }
        }
    }

    #[test]
    fn chain_examples() {
        let std2 = Lattice::standard(2, 2);
        let diag01 = Lattice::diagonal(2, &[0, 1]);
        let diag02 = Lattice::diagonal(2, &[0, 2]);
        assert!(chain_is_simplex(&[std2.clone(), diag01.clone()]));
        assert!(chain_is_simplex(&[std2.clone(), std2.scale_by_p(1)]));
        assert!(!chain_is_simplex(&[std2.clone(), diag02]));
        assert!(chain_is_simplex(&[
            std2.clone(),
            diag01,
            std2.scale_by_p(1)
        ]));
    }

    #[test]
    fn retraction_examples() {
        assert_eq!(Lattice::standard(5, 3).retraction(), vec![0, 0, 0]);
        assert_eq!(Lattice::diagonal(3, &[2, -1]).retraction(), vec![2, -1]);
        assert_eq!(
            lat(2, &[&["1", "0"], &["1/2", "1"]]).retraction(),
            vec![0, 0]
        );
    }

    #[test]
    fn retraction_equivariance() {
        // rho(u . A) = rho(A) for unipotent upper triangular u, and
        // rho(t . A) = nu(t) + rho(A) for diagonal t.
        let a = lat(3, &[&["1", "0", "1/3"], &["0", "1", "2"], &["0", "0", "3"]]);
        let u = PMatrix::new(
            3,
            vec![
                rv(&["1", "2", "1/3"]),
                rv(&["0", "1", "5"]),
                rv(&["0", "0", "1"]),
            ],
        )
        .unwrap();
        assert_eq!(act(&u, &a).unwrap().retraction(), a.retraction());
        let t = PMatrix::diagonal(3, rv(&["3", "1/3", "9"])).unwrap();
        let shifted: Vec<i64> = a
            .retraction()
            .iter()
            .zip([1, -1, 2])
            .map(|(r, v)| r + v)
            .collect();
        assert_eq!(act(&t, &a).unwrap().retraction(), shifted);
    }

    #[test]
    fn height_examples() {
        let h = HeightFunction::new(vec![1, 0, -1]).unwrap();
        assert_eq!(h.eval(&Lattice::standard(3, 3)), 0);

        let h2 = HeightFunction::new(vec![1, -1]).unwrap();
        assert_eq!(h2.eval(&Lattice::diagonal(3, &[0, 1])), -1);

        let a = Lattice::diagonal(3, &[2, 0, -1]);
        assert_eq!(h.eval(&a.scale_by_p(1)), h.eval(&a));

        let positive_sum = HeightFunction::new(vec![1, 0, 0]).unwrap();
        assert!(matches!(
            height(&a, &positive_sum, Model::Quotient),
            Err(LatticeError::ClassModelMismatch)
        ));
        assert_eq!(height(&a, &positive_sum, Model::Extended).unwrap(), 2);
    }

    #[test]
    fn involution_examples() {
        let s = SignVector::parse("+-").unwrap();
        let d = Lattice::diagonal(3, &[1, -2]);
        let r = involution_analysis(&s, &d);
        assert!(r.fixed && r.splits);

        let a = lat(3, &[&["1", "1"], &["0", "3"]]);
        let r = involution_analysis(&s, &a);
        assert!(!r.fixed);
        assert!(!r.splits);

        let b = lat(2, &[&["1", "1"], &["0", "2"]]);
        let r = involution_analysis(&s, &b);
        assert!(r.fixed);
        assert!(!r.splits);
        assert_eq!(r.plus.unwrap(), Lattice::diagonal(2, &[1]));
        assert_eq!(r.minus.unwrap(), Lattice::diagonal(2, &[1]));
    }

    #[test]
    fn diagonalize_examples() {
        let g = PMatrix::diagonal(3, rv(&["1", "-1"])).unwrap();
        let (u, d) = diagonalize_involution(&g).unwrap();
        assert!(u.is_unipotent_upper());
        assert_eq!(u, PMatrix::identity(3, 2));
        assert_eq!(d.to_string(), "+-");

        let g = PMatrix::new(3, vec![rv(&["1", "2"]), rv(&["0", "-1"])]).unwrap();
        let (u, d) = diagonalize_involution(&g).unwrap();
        assert_eq!(d.to_string(), "+-");
        assert_eq!(u.entry(0, 1), &rat_from_i64(-1));

        let g = PMatrix::new(3, vec![rv(&["1", "1"]), rv(&["0", "1"])]).unwrap();
        assert!(matches!(
            diagonalize_involution(&g),
            Err(LatticeError::NotInvolution)
        ));

        let g = PMatrix::new(2, vec![rv(&["1", "0"]), rv(&["0", "-1"])]).unwrap();
        assert!(matches!(
            diagonalize_involution(&g),
            Err(LatticeError::EvenPrime)
        ));

        // Odd off-diagonal entries defeat the recipe over Z[1/3].
        let g = PMatrix::new(3, vec![rv(&["-1", "1"]), rv(&["0", "1"])]).unwrap();
        assert!(matches!(
            diagonalize_involution(&g),
            Err(LatticeError::NotUnipotentConjugate(2))
        ));
    }

    #[test]
    fn borel_reduce_round_trip() {
        for cols in [
            vec![rv(&["1", "0"]), rv(&["1/2", "1"])],
            vec![rv(&["2", "0"]), rv(&["1", "1"])],
            vec![rv(&["4", "2"]), rv(&["1", "1"])],
        ] {
            let a = Lattice::from_basis_columns(2, &cols).unwrap();
            let b = a.borel_reduce();
            assert!(b.is_upper_triangular());
            assert_eq!(act(&b, &Lattice::standard(2, 2)).unwrap(), a);
        }
    }

    #[test]
    fn class_representative_normalizes_epsilon() {
        let a = Lattice::diagonal(3, &[4, 3, 3]);
        let c = class_representative(&a);
        let eps = epsilon(&c);
        assert!(eps <= Rat::zero() && eps > rat_from_i64(-1));
        assert_eq!(class_representative(&a.scale_by_p(5)), c);
    }

    #[test]
    fn json_round_trip() {
        let a = lat(3, &[&["1", "0"], &["1/3", "1"]]);
        let v = a.to_json();
        assert_eq!(Lattice::from_json(&v).unwrap(), a);
        assert!(Lattice::from_json(&serde_json::json!({"p": 3})).is_err());
    }
}
