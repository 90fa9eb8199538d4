//! Exact integer linear algebra on small dense matrices: column echelon
//! form with a unimodular transform (for saturated kernels) and row
//! Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn col_axpy(m: &mut Matrix, dst: usize, src: usize, k: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[src] * k;
        row[dst] -= v;
    }
}

fn col_swap(m: &mut Matrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Column-reduces `a` (m x n) in place and returns `(u, rank)` with `u`
/// unimodular (n x n) and the reduced matrix equal to `a_orig * u`. After
/// reduction, columns `rank..n` of the matrix are zero.
pub fn column_echelon(a: &mut Matrix) -> (Matrix, usize) {
    let n = a.first().map_or(0, Vec::len);
    let mut u = identity(n);
    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot == n {
            break;
        }
        loop {
            // smallest nonzero |entry| among columns pivot.. in row r
            let best = (pivot..n)
                .filter(|&j| !a[r][j].is_zero())
                .min_by(|&i, &j| a[r][i].abs().cmp(&a[r][j].abs()));
            let Some(best) = best else { break };
            col_swap(a, pivot, best);
            col_swap(&mut u, pivot, best);
            let mut done = true;
            for j in pivot + 1..n {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][pivot]);
                col_axpy(a, j, pivot, &q);
                col_axpy(&mut u, j, pivot, &q);
                if !a[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    (u, pivot)
}

/// A basis of `{x in Z^n : a x = 0}`. The returned lattice is saturated:
/// it is a direct summand of `Z^n`.
pub fn kernel(a: &Matrix) -> Vec<Vec<BigInt>> {
    let mut work = a.clone();
    let (u, rank) = column_echelon(&mut work);
    let n = u.len();
    (rank..n)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row Hermite normal form of `rows`: returns `(h, v)` with `h = v * rows`,
/// `v` unimodular, pivots positive and entries above each pivot reduced
/// into `[0, pivot)`. Zero rows are moved to the bottom.
pub fn row_hermite(rows: &Matrix) -> (Matrix, Matrix) {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut h = rows.clone();
    let mut v = identity(m);
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            let best = (pivot_row..m)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&i, &j| h[i][col].abs().cmp(&h[j][col].abs()));
            let Some(best) = best else { break };
            h.swap(pivot_row, best);
            v.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..m {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[pivot_row][col]);
                row_axpy(&mut h, i, pivot_row, &q);
                row_axpy(&mut v, i, pivot_row, &q);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if h[pivot_row][col].is_negative() {
                    for x in h[pivot_row].iter_mut().chain(v[pivot_row].iter_mut()) {
                        *x = -&*x;
                    }
                }
                for i in 0..pivot_row {
                    let q = h[i][col].div_floor(&h[pivot_row][col]);
                    row_axpy(&mut h, i, pivot_row, &q);
                    row_axpy(&mut v, i, pivot_row, &q);
                }
                pivot_row += 1;
                break;
            }
        }
    }
    (h, v)
}

fn row_axpy(m: &mut Matrix, dst: usize, src: usize, k: &BigInt) {
    let s = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(s) {
        *x -= y * k;
    }
}

pub fn mat_vec(a: &Matrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

/// Determinant by cofactor expansion; intended for sizes up to 4.
pub fn det(a: &Matrix) -> BigInt {
    match a.len() {
        0 => BigInt::one(),
        1 => a[0][0].clone(),
        n => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Matrix = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &a[0][j] * det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// gcd of the 2 x 2 minors of a 2 x n matrix.
pub fn minor_gcd(r1: &[BigInt], r2: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for i in 0..r1.len() {
        for j in i + 1..r1.len() {
            g = g.gcd(&(&r1[i] * &r2[j] - &r1[j] * &r2[i]));
        }
    }
    g
}
