//! Helpers shared by the integration suites. The centerpiece is an
//! integer determinant computed by a completely different route than
//! the library's GF(2) elimination, so mod-2 invertibility claims can
//! be cross-checked against ordinary arithmetic.

#![allow(dead_code)]

use rand::Rng;
use signedalg::{BitMatrix, BitVec};

/// Fraction-free Bareiss determinant over i128 of the 0-1 matrix.
/// Exact for every size the suites use (Hadamard-bounded far below
/// overflow); shares no code with the library's rank routine.
pub fn integer_determinant(m: &BitMatrix) -> i128 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant needs a square matrix");
    if n == 0 {
        return 1;
    }
    let mut a = vec![vec![0i128; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = i128::from(m.get(i, j));
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen());
        }
    }
    m
}

pub fn random_vec<R: Rng + ?Sized>(len: usize, rng: &mut R) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        v.set(i, rng.gen());
    }
    v
}

/// Random square matrix rejection-sampled to be dyadically invertible.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitMatrix {
    loop {
        let m = random_matrix(n, n, rng);
        if signedalg::invert::is_dyadically_invertible(&m).unwrap() {
            return m;
        }
    }
}
