//! Mod-2 invertibility and the anticommutative canonical block form.
//!
//! An integer matrix is *dyadically invertible* (DI) when some integer matrix
//! multiplies it to the identity mod 2; equivalently its mod-2 reduction is
//! invertible over GF(2). This module keeps four independently coded routes
//! to that fact so they can be played against each other in tests:
//!
//! - [`has_left_inverse`]: solves on the transpose, column by column;
//! - [`kernel_vector`]: reduced-echelon back-substitution;
//! - [`is_dyadically_invertible`]: forward elimination rank;
//! - [`has_right_inverse`]: per-column solves on the matrix itself.
//!
//! It also hosts the D-orthogonality and anticommutativity tests and the
//! canonical two-block form of the Gram matrix of an anticommutative matrix.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::matrix::BitMatrix;

/// Outcome of a mod-2 row reduction.
struct Reduced {
    mat: BitMatrix,
    /// Pivot positions (row, col), strictly increasing in both coordinates.
    pivots: Vec<(usize, usize)>,
}

/// Row-reduces `m`, searching pivots only in columns `0..col_limit`.
/// With `jordan` set, clears above the pivots as well (reduced echelon form).
/// Pivoting picks the first set bit scanning down, so the result is
/// deterministic.
fn reduce(m: &BitMatrix, col_limit: usize, jordan: bool) -> Reduced {
    let mut mat = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..col_limit.min(mat.ncols()) {
        if r == mat.nrows() {
            break;
        }
        let Some(pr) = (r..mat.nrows()).find(|&i| mat.get(i, c)) else {
            continue;
        };
        mat.swap_rows(r, pr);
        let prow = mat.row(r).clone();
        let start = if jordan { 0 } else { r + 1 };
        for i in start..mat.nrows() {
            if i != r && mat.get(i, c) {
                mat.xor_row(i, &prow);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    Reduced { mat, pivots }
}

/// Mod-2 rank by forward elimination.
#[must_use]
pub fn rank(m: &BitMatrix) -> usize {
    reduce(m, m.ncols(), false).pivots.len()
}

/// Basis of the mod-2 kernel {x : Mx ≅ 0}, one vector per free column.
#[must_use]
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVec> {
    let red = reduce(m, m.ncols(), true);
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &(_, c) in &red.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        let mut x = BitVec::zeros(n);
        x.set(f, true);
        for &(r, c) in &red.pivots {
            if red.mat.get(r, f) {
                x.set(c, true);
            }
        }
        basis.push(x);
    }
    basis
}

/// Some nonzero kernel vector, or `None` when the kernel is trivial.
#[must_use]
pub fn kernel_vector(m: &BitMatrix) -> Option<BitVec> {
    kernel_basis(m).into_iter().next()
}

/// Solves Mx ≅ b mod 2, with free coordinates set to zero.
///
/// # Panics
///
/// Panics if `b.len() != m.nrows()`.
#[must_use]
pub fn solve(m: &BitMatrix, b: &BitVec) -> Option<BitVec> {
    assert_eq!(m.nrows(), b.len(), "right-hand side length mismatch");
    let n = m.ncols();
    let mut aug = BitMatrix::zeros(m.nrows(), n + 1);
    for i in 0..m.nrows() {
        for j in m.row(i).ones() {
            aug.set(i, j, true);
        }
        if b.get(i) {
            aug.set(i, n, true);
        }
    }
    let red = reduce(&aug, n, true);
    // A leftover row (0 … 0 | 1) marks inconsistency.
    for i in red.pivots.len()..red.mat.nrows() {
        if red.mat.get(i, n) {
            return None;
        }
    }
    let mut x = BitVec::zeros(n);
    for &(r, c) in &red.pivots {
        if red.mat.get(r, n) {
            x.set(c, true);
        }
    }
    Some(x)
}

/// Right inverse assembled column by column from [`solve`].
fn right_inverse_by_columns(p: &BitMatrix) -> Option<BitMatrix> {
    let mut cols = Vec::with_capacity(p.ncols());
    for j in 0..p.ncols() {
        cols.push(solve(p, &BitVec::unit(p.nrows(), j))?);
    }
    Some(BitMatrix::from_cols(&cols))
}

/// True when some integer matrix A has A·P ≅ I mod 2.
/// Coded as a right-inverse search on the transpose, independent of
/// [`is_dyadically_invertible`].
pub fn has_left_inverse(p: &BitMatrix) -> Result<bool> {
    p.require_square()?;
    Ok(right_inverse_by_columns(&p.transpose()).is_some())
}

/// True when some integer matrix B has P·B ≅ I mod 2.
pub fn has_right_inverse(p: &BitMatrix) -> Result<bool> {
    p.require_square()?;
    Ok(right_inverse_by_columns(p).is_some())
}

/// True when Pe ≅ 0 forces e ≅ 0, via kernel back-substitution.
#[must_use]
pub fn has_trivial_kernel(p: &BitMatrix) -> bool {
    kernel_vector(p).is_none()
}

/// True when P is dyadically invertible: forward elimination reaches full
/// mod-2 rank. Equivalent to the left-inverse, right-inverse, and
/// trivial-kernel conditions, which the tests check independently.
pub fn is_dyadically_invertible(p: &BitMatrix) -> Result<bool> {
    let n = p.require_square()?;
    Ok(rank(p) == n)
}

/// The mod-2 inverse of a dyadically invertible matrix.
///
/// Both products are verified before returning: P·Q ≅ Q·P ≅ I.
pub fn dyadic_inverse(p: &BitMatrix) -> Result<BitMatrix> {
    let n = p.require_square()?;
    let mut aug = BitMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in p.row(i).ones() {
            aug.set(i, j, true);
        }
        aug.set(i, n + i, true);
    }
    let red = reduce(&aug, n, true);
    if red.pivots.len() < n {
        return Err(Error::NotInvertible);
    }
    let mut q = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if red.mat.get(i, n + j) {
                q.set(i, j, true);
            }
        }
    }
    assert!(q.mul(p).is_identity(), "inverse postcondition failed");
    assert!(p.mul(&q).is_identity(), "inverse postcondition failed");
    Ok(q)
}

/// True when PᵀP ≅ I mod 2. The mirror product PPᵀ is checked too; the two
/// can never disagree, and the redundancy is kept on purpose.
pub fn is_d_orthogonal(p: &BitMatrix) -> Result<bool> {
    p.require_square()?;
    let left = p.transpose().mul(p).is_identity();
    let right = p.mul(&p.transpose()).is_identity();
    debug_assert_eq!(left, right, "one-sided mod-2 orthogonality");
    Ok(left && right)
}

/// True when PᵀP has zero diagonal and ones everywhere else.
pub fn is_antiorthogonal(p: &BitMatrix) -> Result<bool> {
    let n = p.require_square()?;
    Ok(p.transpose().mul(p) == BitMatrix::ibar(n))
}

/// True when conjugation by P preserves the off-diagonal ones pattern:
/// Pᵀ·Ī·P ≅ Ī mod 2. Vacuously true for n ≤ 1 where Ī is empty or zero.
pub fn is_anticommutative_matrix(p: &BitMatrix) -> Result<bool> {
    let n = p.require_square()?;
    if n <= 1 {
        return Ok(true);
    }
    let ibar = BitMatrix::ibar(n);
    Ok(p.transpose().mul(&ibar).mul(p) == ibar)
}

/// Canonical two-block shape of the Gram matrix PᵀP of an anticommutative P.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcBlockForm {
    /// Size of the leading identity block (odd-mass columns).
    pub m: usize,
    /// Size of the trailing complemented-identity block (even-mass columns).
    pub k: usize,
    /// Index permutation: entry i names the original column placed at slot i.
    pub perm: Vec<usize>,
    /// Whether a matrix with this Gram shape is dyadically invertible:
    /// false exactly when m is even and k is odd.
    pub di: bool,
    /// Whether the Gram matrix is the full off-diagonal pattern (m = 0).
    pub antiorthogonal: bool,
}

/// Sorts the columns of an anticommutative matrix by diagonal parity of its
/// Gram matrix and verifies the two-block canonical shape
/// [[I_m, II], [II, Ī_k]].
///
/// Odd-mass columns come first; ties keep the original order, so the output
/// is deterministic. `MalformedGram` is returned if the sorted Gram matrix
/// misses the pattern, which cannot happen for genuinely anticommutative
/// input and signals a caller bug.
pub fn canonical_ac_blocks(p: &BitMatrix) -> Result<AcBlockForm> {
    let n = p.require_square()?;
    if !is_anticommutative_matrix(p)? {
        let ibar = BitMatrix::ibar(n);
        let form = p.transpose().mul(&ibar).mul(p);
        for i in 0..n {
            for j in 0..n {
                if form.get(i, j) != ibar.get(i, j) {
                    return Err(Error::NotAnticommutative { i, j });
                }
            }
        }
        unreachable!("conjugated form differs from the pattern somewhere");
    }
    let gram = p.transpose().mul(p);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&i| !gram.get(i, i));
    let m = (0..n).filter(|&i| gram.get(i, i)).count();
    let k = n - m;
    let sorted = gram.permute_symmetric(&perm);
    let mut expected = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let inside_first = i < m && j < m;
            let inside_second = i >= m && j >= m;
            let v = if inside_first {
                i == j
            } else if inside_second {
                i != j
            } else {
                true
            };
            expected.set(i, j, v);
        }
    }
    if sorted != expected {
        return Err(Error::MalformedGram);
    }
    Ok(AcBlockForm {
        m,
        k,
        perm,
        di: !(m % 2 == 0 && k % 2 == 1),
        antiorthogonal: m == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// First row all ones, first column a unit, identity elsewhere.
    fn c1(n: usize) -> BitMatrix {
        let mut m = BitMatrix::identity(n);
        for j in 1..n {
            m.set(0, j, true);
        }
        m
    }

    #[test]
    fn di_examples() {
        assert!(is_dyadically_invertible(&BitMatrix::identity(4)).unwrap());
        assert!(!is_dyadically_invertible(&BitMatrix::ibar(3)).unwrap());
        assert!(is_dyadically_invertible(&BitMatrix::ibar(4)).unwrap());
        let p = BitMatrix::parse_text("4 4\n1111\n1100\n1010\n1001").unwrap();
        assert!(!is_dyadically_invertible(&p).unwrap());
        // That matrix kills the all-ones vector mod 2.
        let ones = BitVec::all_ones(4);
        assert!(p.mul_vec(&ones).is_zero());
        assert!(kernel_basis(&p).contains(&ones));
    }

    #[test]
    fn four_routes_agree_on_all_2x2() {
        for code in 0u32..16 {
            let mut p = BitMatrix::zeros(2, 2);
            for b in 0..4 {
                if code >> b & 1 == 1 {
                    p.set(b / 2, b % 2, true);
                }
            }
            let di = is_dyadically_invertible(&p).unwrap();
            assert_eq!(has_left_inverse(&p).unwrap(), di);
            assert_eq!(has_right_inverse(&p).unwrap(), di);
            assert_eq!(has_trivial_kernel(&p), di);
        }
    }

    #[test]
    fn inverse_examples() {
        let i = BitMatrix::identity(5);
        assert_eq!(dyadic_inverse(&i).unwrap(), i);

        let pi = BitMatrix::permutation(&[2, 0, 1, 3]);
        assert_eq!(dyadic_inverse(&pi).unwrap(), pi.transpose());

        let ibar4 = BitMatrix::ibar(4);
        assert_eq!(dyadic_inverse(&ibar4).unwrap(), ibar4);

        assert!(matches!(
            dyadic_inverse(&BitMatrix::ibar(3)),
            Err(Error::NotInvertible)
        ));
        assert!(matches!(
            dyadic_inverse(&BitMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn solve_finds_consistent_solutions_only() {
        let p = BitMatrix::parse_text("3 3\n110\n011\n101").unwrap();
        // Rows sum to zero, so the image is the even-mass subspace.
        let b_in = BitVec::parse_line("110").unwrap();
        let x = solve(&p, &b_in).unwrap();
        assert_eq!(p.mul_vec(&x), b_in);
        let b_out = BitVec::parse_line("100").unwrap();
        assert!(solve(&p, &b_out).is_none());
    }

    #[test]
    fn d_orthogonality_examples() {
        assert!(is_d_orthogonal(&BitMatrix::identity(3)).unwrap());
        assert!(is_d_orthogonal(&BitMatrix::ibar(4)).unwrap());
        assert!(!is_d_orthogonal(&c1(3)).unwrap());
        // D-orthogonal implies DI with inverse congruent to the transpose.
        let p = BitMatrix::ibar(4);
        assert_eq!(dyadic_inverse(&p).unwrap(), p.transpose());
    }

    #[test]
    fn complement_duality_spot_checks() {
        // Even n: complements of D-orthogonal matrices stay D-orthogonal.
        assert!(is_d_orthogonal(&BitMatrix::ibar(4).complement()).unwrap());
        // Odd n: the complement of a D-orthogonal matrix is antiorthogonal.
        let comp = BitMatrix::identity(3).complement();
        assert!(is_antiorthogonal(&comp).unwrap());
        assert!(!is_d_orthogonal(&comp).unwrap());
    }

    #[test]
    fn anticommutativity_examples() {
        assert!(is_anticommutative_matrix(&BitMatrix::identity(4)).unwrap());
        assert!(is_anticommutative_matrix(&c1(3)).unwrap());
        assert!(is_anticommutative_matrix(&c1(5)).unwrap());
        // Row-add matrix: identity plus one subdiagonal entry.
        let mut radd = BitMatrix::identity(3);
        radd.set(1, 0, true);
        assert!(!is_anticommutative_matrix(&radd).unwrap());
        // n <= 1 is vacuous.
        assert!(is_anticommutative_matrix(&BitMatrix::identity(1)).unwrap());
        assert!(is_anticommutative_matrix(&BitMatrix::identity(0)).unwrap());
    }

    #[test]
    fn canonical_blocks_examples() {
        let form = canonical_ac_blocks(&BitMatrix::identity(4)).unwrap();
        assert_eq!((form.m, form.k, form.di, form.antiorthogonal), (4, 0, true, false));

        let form = canonical_ac_blocks(&c1(3)).unwrap();
        assert_eq!((form.m, form.k), (1, 2));
        assert!(form.di);

        let form = canonical_ac_blocks(&BitMatrix::ibar(3)).unwrap();
        assert_eq!((form.m, form.k, form.di, form.antiorthogonal), (0, 3, false, true));
        // Antiorthogonal matrices are never DI.
        assert!(!is_dyadically_invertible(&BitMatrix::ibar(3)).unwrap());

        let mut radd = BitMatrix::identity(3);
        radd.set(1, 0, true);
        assert!(matches!(
            canonical_ac_blocks(&radd),
            Err(Error::NotAnticommutative { .. })
        ));
    }

    #[test]
    fn block_di_rule_matches_rank_on_constructed_grams() {
        // D-orthogonal matrices of odd size have Gram I_n (m = n odd).
        for n in 1..6 {
            let form = canonical_ac_blocks(&BitMatrix::identity(n)).unwrap();
            assert_eq!(form.di, is_dyadically_invertible(&BitMatrix::identity(n)).unwrap());
            let ibar = BitMatrix::ibar(n);
            if n >= 2 {
                let form = canonical_ac_blocks(&ibar).unwrap();
                assert_eq!(form.di, is_dyadically_invertible(&ibar).unwrap());
            }
            let form = canonical_ac_blocks(&c1(n.max(2))).unwrap();
            assert_eq!(form.di, is_dyadically_invertible(&c1(n.max(2))).unwrap());
        }
    }

    #[test]
    fn rank_and_kernel_dimensions_add_up() {
        let p = BitMatrix::parse_text("3 4\n1100\n0110\n1010").unwrap();
        assert_eq!(rank(&p) + kernel_basis(&p).len(), 4);
        for v in kernel_basis(&p) {
            assert!(p.mul_vec(&v).is_zero());
        }
    }
}
