//! Dense integer linear algebra over BigInt: column Hermite forms, kernels,
//! exact solving and determinants.  Sizes here are desk scale, so the
//! implementations favour clarity and exactness over asymptotics.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = shape(a);
    let (rb, cb) = shape(b);
    assert_eq!(ca, rb, "shape mismatch in mat_mul");
    let mut out = zeros(ra, cb);
    for i in 0..ra {
        for k in 0..ca {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn shape(m: &Mat) -> (usize, usize) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    (rows, cols)
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_col(m: &mut Mat, c: usize) {
    for row in m.iter_mut() {
        let v = -std::mem::take(&mut row[c]);
        row[c] = v;
    }
}

/// col_b -= q * col_a
fn sub_col(m: &mut Mat, b: usize, q: &BigInt, a: usize) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = q * &row[a];
        row[b] -= t;
    }
}

/// Column Hermite normal form with transform: returns (H, U) with
/// M * U = H, U unimodular.  H is in column echelon form: pivot rows
/// strictly increase across the leading columns, pivots are positive,
/// entries to the right of a pivot in its row are zero and entries to the
/// left are reduced into [0, pivot).  Trailing columns of H are zero; the
/// matching columns of U span the kernel of M.
pub fn col_hnf(m: &Mat) -> (Mat, Mat) {
    let (rows, cols) = shape(m);
    let mut h = m.clone();
    let mut u = identity(cols);
    let mut lead = 0usize;
    for r in 0..rows {
        if lead == cols {
            break;
        }
        // Euclidean reduction across columns lead..cols in row r.
        loop {
            let mut best: Option<usize> = None;
            for c in lead..cols {
                if !h[r][c].is_zero() && best.is_none_or(|b| h[r][c].abs() < h[r][b].abs()) {
                    best = Some(c);
                }
            }
            let Some(pivot) = best else { break };
            swap_cols(&mut h, lead, pivot);
            swap_cols(&mut u, lead, pivot);
            let mut done = true;
            for c in (lead + 1)..cols {
                if h[r][c].is_zero() {
                    continue;
                }
                let q = div_round(&h[r][c], &h[r][lead]);
                sub_col(&mut h, c, &q, lead);
                sub_col(&mut u, c, &q, lead);
                if !h[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][lead].is_zero() {
            continue;
        }
        if h[r][lead].is_negative() {
            negate_col(&mut h, lead);
            negate_col(&mut u, lead);
        }
        // Reduce earlier columns in this pivot row.
        for c in 0..lead {
            let q = h[r][c].div_floor(&h[r][lead]);
            sub_col(&mut h, c, &q, lead);
            sub_col(&mut u, c, &q, lead);
        }
        lead += 1;
    }
    (h, u)
}

/// Rounded division minimising the remainder's absolute value.
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

/// Pivot (row, col) pairs of a column echelon form.
fn pivots(h: &Mat) -> Vec<(usize, usize)> {
    let (rows, cols) = shape(h);
    let mut out = Vec::new();
    let mut r0 = 0usize;
    for c in 0..cols {
        let mut found = None;
        for r in r0..rows {
            if !h[r][c].is_zero() {
                found = Some(r);
                break;
            }
        }
        match found {
            Some(r) => {
                out.push((r, c));
                r0 = r + 1;
            }
            None => break,
        }
    }
    out
}

pub fn rank(m: &Mat) -> usize {
    let (h, _) = col_hnf(m);
    pivots(&h).len()
}

/// Upper triangular column Hermite form of the Z-span of the columns:
/// pivots sit on the diagonal and are positive, entries below vanish.
/// Returns None when the span has rank below the row count.
pub fn upper_triangular_span(m: &Mat) -> Option<Mat> {
    let (rows, _) = shape(m);
    let flipped: Mat = m.iter().rev().cloned().collect();
    let (h, _) = col_hnf(&flipped);
    if pivots(&h).len() < rows {
        return None;
    }
    // Undo the row flip and reverse the pivot columns; this sends the
    // lower echelon onto an upper triangular basis of the same span.
    let mut t = zeros(rows, rows);
    for i in 0..rows {
        for j in i..rows {
            t[i][j] = h[rows - 1 - i][rows - 1 - j].clone();
        }
    }
    Some(t)
}

/// Basis of the integer kernel {x : M x = 0}; the result is saturated
/// (a basis of the kernel sublattice of Z^cols).
pub fn kernel_basis(m: &Mat) -> Vec<Vec<BigInt>> {
    let (_, cols) = shape(m);
    let (h, u) = col_hnf(m);
    let r = pivots(&h).len();
    (r..cols)
        .map(|c| (0..cols).map(|i| u[i][c].clone()).collect())
        .collect()
}

/// Some integer solution x of M x = b, if one exists.
pub fn solve(m: &Mat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (rows, cols) = shape(m);
    assert_eq!(rows, b.len());
    let (h, u) = col_hnf(m);
    let piv = pivots(&h);
    let mut y = vec![BigInt::zero(); cols];
    let mut residual: Vec<BigInt> = b.to_vec();
    for &(r, c) in &piv {
        // Rows above r of earlier pivots are already cleared; rows between
        // pivots must stay zero in the residual.
        let (q, rem) = residual[r].div_rem(&h[r][c]);
        if !rem.is_zero() {
            return None;
        }
        for (i, res) in residual.iter_mut().enumerate() {
            let t = &q * &h[i][c];
            *res -= t;
        }
        y[c] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| &u[i][j] * &y[j])
                .fold(BigInt::zero(), |acc, t| acc + t)
        })
        .collect();
    Some(x)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &Mat) -> BigInt {
    let (rows, cols) = shape(m);
    assert_eq!(rows, cols, "determinant of a non-square matrix");
    let n = rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_is_a_column_transform() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (h, u) = col_hnf(&a);
        assert_eq!(mat_mul(&a, &u), h);
        assert_eq!(det(&u).abs(), BigInt::one());
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
        let b = vec![BigInt::from(5), BigInt::from(10)];
        let x = solve(&a, &b).unwrap();
        let s: BigInt = a[0].iter().zip(&x).map(|(a, b)| a * b).sum();
        assert_eq!(s, BigInt::from(5));

        // 2x = 3 has no integer solution.
        assert!(solve(&m(&[&[2]]), &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn det_matches_known_values() {
        assert_eq!(det(&m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(det(&m(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            det(&m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])),
            BigInt::from(-2)
        );
    }

    #[test]
    fn rank_of_rectangular() {
        assert_eq!(rank(&m(&[&[1, 0, 1], &[0, 1, 1]])), 2);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
        assert_eq!(rank(&zeros(3, 2)), 0);
    }
}
