//! Signed permutation matrices for group elements, the toy-Fock
//! operator dictionary, and the 2×2 anticommutant characterization.
//!
//! An element acts on the Walsh-type basis vector indexed by q as
//! `(sign · (−1)^{mass(p ∧ q)}, q ⊕ s)`, which makes every
//! representation a signed permutation matrix of size 2ⁿ×2ⁿ. The
//! module builds that matrix twice: a sparse form straight from the
//! action rule, and (at small sizes) a dense form by iterating the
//! four block-doubling rules from the 1×1 matrix `[1]`. The two
//! constructions are independent and tests pin their agreement, which
//! also nails down the level-order convention: coordinate 0 is the
//! innermost block structure, the highest coordinate the outermost.
//!
//! Basis indexing is the binary one: the vector with occupation bits
//! `p` sits at column `Σ p_j 2^j`.

use crate::bits::BitVec;
use crate::bounds;
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Cap on representation levels; the matrix has 2ⁿ columns.
pub const REP_MAX_LEVELS: usize = 20;
/// Levels up to which a dense copy is carried alongside the sparse one.
pub const DENSE_MAX_LEVELS: usize = 6;

const EPS: f64 = 1e-9;

/// A 2ⁿ×2ⁿ signed permutation matrix.
///
/// Stored as one (row, sign) pair per column; a dense row-major copy
/// rides along for up to [`DENSE_MAX_LEVELS`] levels. Equality
/// compares the signed permutation only, since the dense copy is
/// derived data.
#[derive(Debug, Clone)]
pub struct RepMatrix {
    n: usize,
    rows: Vec<usize>,
    signs: Vec<i8>,
    dense: Option<Vec<i8>>,
}

impl PartialEq for RepMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && self.signs == other.signs
    }
}

impl Eq for RepMatrix {}

fn parity_sign(x: usize) -> i8 {
    if x.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn mask_of(bits: &BitVec) -> usize {
    bits.ones().fold(0usize, |m, i| m | (1 << i))
}

impl RepMatrix {
    /// Number of doubling levels.
    pub fn levels(&self) -> usize {
        self.n
    }

    /// Matrix dimension, 2ⁿ.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Entry at (row, column), from the signed permutation.
    pub fn entry(&self, i: usize, j: usize) -> i8 {
        if self.rows[j] == i {
            self.signs[j]
        } else {
            0
        }
    }

    /// The dense copy when one is carried.
    pub fn dense(&self) -> Option<&[i8]> {
        self.dense.as_deref()
    }

    /// Matrix product. The signed permutations compose directly; the
    /// dense copies, when both sides carry one, are multiplied as
    /// ordinary integer matrices, which keeps the two forms
    /// independently derived.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        let dim = self.dim();
        let mut rows = vec![0usize; dim];
        let mut signs = vec![0i8; dim];
        for q in 0..dim {
            let mid = other.rows[q];
            rows[q] = self.rows[mid];
            signs[q] = other.signs[q] * self.signs[mid];
        }
        let dense = match (&self.dense, &other.dense) {
            (Some(a), Some(b)) => {
                let mut out = vec![0i8; dim * dim];
                for i in 0..dim {
                    for j in 0..dim {
                        let mut acc: i32 = 0;
                        for k in 0..dim {
                            acc += i32::from(a[i * dim + k]) * i32::from(b[k * dim + j]);
                        }
                        out[i * dim + j] = acc as i8;
                    }
                }
                Some(out)
            }
            _ => None,
        };
        Ok(RepMatrix { n: self.n, rows, signs, dense })
    }

    /// `Some(c)` when the matrix is `c · I` with `c = ±1`.
    pub fn is_identity_times(&self) -> Option<i8> {
        let first = self.signs[0];
        for (q, (&row, &sign)) in self.rows.iter().zip(&self.signs).enumerate() {
            if row != q || sign != first {
                return None;
            }
        }
        Some(first)
    }

    /// Rows of space-separated entries, "-1 0 1" style.
    pub fn to_text(&self) -> String {
        let dim = self.dim();
        let mut out = String::new();
        for i in 0..dim {
            if i > 0 {
                out.push('\n');
            }
            for j in 0..dim {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(match self.entry(i, j) {
                    -1 => "-1",
                    0 => "0",
                    _ => "1",
                });
            }
        }
        out
    }
}

/// Dense construction by the four block-doubling rules, one level per
/// coordinate from the innermost out: the per-coordinate factor
/// `R^{s_j} S^{p_j}` wraps the current matrix `e` as `[[e,0],[0,e]]`
/// (identity), `[[0,e],[e,0]]` (R), `[[e,0],[0,−e]]` (S), or
/// `[[0,−e],[e,0]]` (A).
fn dense_by_doubling(e: &GroupElement) -> Vec<i8> {
    let mut cur = vec![e.sign().as_i8()];
    let mut dim = 1usize;
    for j in 0..e.len() {
        let (s, p) = (e.s().get(j), e.p().get(j));
        let next_dim = dim * 2;
        let mut next = vec![0i8; next_dim * next_dim];
        for i in 0..dim {
            for k in 0..dim {
                let v = cur[i * dim + k];
                if v == 0 {
                    continue;
                }
                match (s, p) {
                    (false, false) => {
                        next[i * next_dim + k] = v;
                        next[(i + dim) * next_dim + (k + dim)] = v;
                    }
                    (true, false) => {
                        next[i * next_dim + (k + dim)] = v;
                        next[(i + dim) * next_dim + k] = v;
                    }
                    (false, true) => {
                        next[i * next_dim + k] = v;
                        next[(i + dim) * next_dim + (k + dim)] = -v;
                    }
                    (true, true) => {
                        next[i * next_dim + (k + dim)] = -v;
                        next[(i + dim) * next_dim + k] = v;
                    }
                }
            }
        }
        cur = next;
        dim = next_dim;
    }
    cur
}

/// The 2ⁿ×2ⁿ representation of an element with ambient length n.
///
/// The sparse form comes from the action rule: column q holds
/// `sign · (−1)^{mass(p ∧ q)}` at row `q ⊕ s`. The dense form, carried
/// for small n, is built independently by block doubling.
pub fn represent(e: &GroupElement, n: usize) -> Result<RepMatrix> {
    if e.len() != n {
        return Err(Error::LengthMismatch { left: e.len(), right: n });
    }
    bounds::check("representation levels", n, REP_MAX_LEVELS)?;
    let dim = 1usize << n;
    let s_mask = mask_of(e.s());
    let p_mask = mask_of(e.p());
    let base = e.sign().as_i8();
    let mut rows = vec![0usize; dim];
    let mut signs = vec![0i8; dim];
    for (q, (row, sign)) in rows.iter_mut().zip(&mut signs).enumerate() {
        *row = q ^ s_mask;
        *sign = base * parity_sign(p_mask & q);
    }
    let dense = (n <= DENSE_MAX_LEVELS).then(|| dense_by_doubling(e));
    Ok(RepMatrix { n, rows, signs, dense })
}

/// Whether representation turns multiplication into matrix product:
/// `represent(e·f) == represent(e) · represent(f)`.
pub fn verify_homomorphism(e: &GroupElement, f: &GroupElement, n: usize) -> Result<bool> {
    let product = represent(&e.mul(f)?, n)?;
    let composed = represent(e, n)?.matmul(&represent(f, n)?)?;
    Ok(product == composed)
}

/// Index of a basis vector: the occupation bits of the monomial it
/// stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasisIndex {
    p: BitVec,
}

impl FockBasisIndex {
    pub fn new(p: BitVec) -> Self {
        FockBasisIndex { p }
    }

    pub fn bits(&self) -> &BitVec {
        &self.p
    }

    /// The column this basis vector occupies, `Σ p_j 2^j`.
    pub fn column(&self) -> Result<usize> {
        if self.p.len() >= usize::BITS as usize {
            return Err(Error::Overflow { what: "basis column", n: self.p.len() });
        }
        Ok(mask_of(&self.p))
    }
}

/// The five per-coordinate operators with a simple basis action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockOp {
    Number,
    Annihilation,
    Creation,
    R,
    S,
}

/// Applies a per-coordinate operator to a basis vector, returning the
/// integer coefficient and the resulting index.
///
/// number: `(p_j, p)` — counts the occupation.
/// annihilation: `(p_j, p with bit j toggled)` — removes the variable
/// when present, kills the term otherwise.
/// creation: `(1 − p_j, p toggled)` — adds the variable when missing.
/// R: `(1, p toggled)` — always toggles.
/// S: `(1 − 2 p_j, p)` — flips the sign of occupied terms.
pub fn toy_fock_apply(kind: FockOp, j: usize, idx: &FockBasisIndex) -> Result<(i8, FockBasisIndex)> {
    let len = idx.p.len();
    if j >= len {
        return Err(Error::OutOfRange { what: "coordinate", value: j, min: 0, max: len.saturating_sub(1) });
    }
    let occupied = idx.p.get(j);
    let toggled = || {
        let mut p = idx.p.clone();
        p.flip(j);
        FockBasisIndex { p }
    };
    Ok(match kind {
        FockOp::Number => (i8::from(occupied), idx.clone()),
        FockOp::Annihilation => (i8::from(occupied), toggled()),
        FockOp::Creation => (1 - i8::from(occupied), toggled()),
        FockOp::R => (1, toggled()),
        FockOp::S => (1 - 2 * i8::from(occupied), idx.clone()),
    })
}

/// A 2×2 matrix in the coordinates `γ·I + a·R + b·S + c·A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadruple2x2 {
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Quadruple2x2 {
    pub fn new(gamma: f64, a: f64, b: f64, c: f64) -> Self {
        Quadruple2x2 { gamma, a, b, c }
    }

    /// Standard entries `[[p, q], [r, s]]`: p = γ+b, q = a−c, r = a+c,
    /// s = γ−b.
    pub fn to_standard(&self) -> [[f64; 2]; 2] {
        [
            [self.gamma + self.b, self.a - self.c],
            [self.a + self.c, self.gamma - self.b],
        ]
    }

    /// Inverse of [`to_standard`]; the correspondence is a bijection.
    pub fn from_standard(m: [[f64; 2]; 2]) -> Self {
        let [[p, q], [r, s]] = m;
        Quadruple2x2 {
            gamma: (p + s) / 2.0,
            a: (q + r) / 2.0,
            b: (p - s) / 2.0,
            c: (r - q) / 2.0,
        }
    }

    /// Determinant: `γ² − G(v, v)`, also the product `M·M̄`.
    pub fn det(&self) -> f64 {
        self.gamma * self.gamma - g_form(self, self)
    }

    /// The conjugate `M̄ = γ − v`.
    pub fn conjugate(&self) -> Self {
        Quadruple2x2 { gamma: self.gamma, a: -self.a, b: -self.b, c: -self.c }
    }

    fn vector_is_zero(&self) -> bool {
        self.a.abs() < EPS && self.b.abs() < EPS && self.c.abs() < EPS
    }
}

/// The signature form on vector parts: `G(v, w) = ax + by − cz` for
/// v = (a, b, c), w = (x, y, z). Anticommutation of scalar-free
/// matrices is exactly G-orthogonality.
pub fn g_form(v: &Quadruple2x2, w: &Quadruple2x2) -> f64 {
    v.a * w.a + v.b * w.b - v.c * w.c
}

/// Which matrices anticommute with a given 2×2 matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Anticommutant2x2 {
    /// M = 0: everything.
    All,
    /// M scalar-free and nonzero: the scalar-free G-orthogonal
    /// complement of its vector part, a two-parameter family.
    ScalarFreePlane { basis: [Quadruple2x2; 2] },
    /// M = γ + v with γ ≠ 0 and G(v, v) = γ² (equivalently M is
    /// singular): the multiples of the conjugate M̄ = γ − v.
    ConjugateLine { mbar: Quadruple2x2 },
    /// γ ≠ 0 and M invertible: only the zero matrix.
    OnlyZero,
}

/// Solves `MX + XM = 0` over 2×2 matrices. The quadruple coordinates
/// reduce the problem to `γt + G(v, w) = 0` and `γ·w = −t·v`, which
/// splits into the scalar-free plane (γ = 0) and the conjugate line
/// (γ ≠ 0, G(v, v) = γ²).
pub fn anticommutant_2x2(m: &Quadruple2x2) -> Anticommutant2x2 {
    if m.gamma.abs() < EPS {
        if m.vector_is_zero() {
            return Anticommutant2x2::All;
        }
        // A basis of the kernel of w ↦ G(v, w) = ax + by − cz,
        // branching on the first nonzero coefficient.
        let zero = |a: f64, b: f64, c: f64| Quadruple2x2::new(0.0, a, b, c);
        let basis = if m.a.abs() >= EPS {
            [zero(m.b, -m.a, 0.0), zero(m.c, 0.0, m.a)]
        } else if m.b.abs() >= EPS {
            [zero(1.0, 0.0, 0.0), zero(0.0, m.c, m.b)]
        } else {
            [zero(1.0, 0.0, 0.0), zero(0.0, 1.0, 0.0)]
        };
        return Anticommutant2x2::ScalarFreePlane { basis };
    }
    if m.det().abs() < EPS {
        Anticommutant2x2::ConjugateLine { mbar: m.conjugate() }
    } else {
        Anticommutant2x2::OnlyZero
    }
}
