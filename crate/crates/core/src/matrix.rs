//! Bit-packed 0-1 matrices with mod-2 arithmetic.
//!
//! Rows are [`BitVec`]s, so every row operation (the inner loop of
//! multiplication and elimination) is word-parallel. All arithmetic is mod 2;
//! "congruent" in the docs always means entrywise congruence mod 2.
//!
//! Text form: a header line `rows cols`, then one `0`/`1` line per row.

use std::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// A dense matrix over GF(2), stored row-major with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    /// Zero matrix.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    /// Identity matrix I_n.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// All-ones matrix (the "II" block).
    #[must_use]
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::all_ones(cols); rows],
            cols,
        }
    }

    /// Complement of the identity (ones off the diagonal, zeros on it).
    #[must_use]
    pub fn ibar(n: usize) -> Self {
        let mut m = Self::ones(n, n);
        for i in 0..n {
            m.set(i, i, false);
        }
        m
    }

    /// Builds a matrix from rows.
    ///
    /// # Panics
    ///
    /// Panics if the rows have different lengths.
    #[must_use]
    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
        }
        Self { rows, cols }
    }

    /// Builds a matrix from columns.
    ///
    /// # Panics
    ///
    /// Panics if the columns have different lengths.
    #[must_use]
    pub fn from_cols(cols: &[BitVec]) -> Self {
        let nrows = cols.first().map_or(0, BitVec::len);
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "ragged columns");
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Permutation matrix sending basis column `j` to row `targets[j]`
    /// (a single 1 at `(targets[j], j)`).
    ///
    /// # Panics
    ///
    /// Panics if `targets` is not a permutation of `0..n`.
    #[must_use]
    pub fn permutation(targets: &[usize]) -> Self {
        let n = targets.len();
        let mut seen = vec![false; n];
        let mut m = Self::zeros(n, n);
        for (j, &i) in targets.iter().enumerate() {
            assert!(i < n && !seen[i], "targets is not a permutation");
            seen[i] = true;
            m.set(i, j, true);
        }
        m
    }

    /// Number of rows.
    #[must_use]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    #[must_use]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// True for square matrices.
    #[must_use]
    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    /// Errors with [`Error::NotSquare`] unless square; returns n.
    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.cols)
        } else {
            Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.cols,
            })
        }
    }

    /// Reads entry (i, j).
    ///
    /// # Panics
    ///
    /// Panics if out of range.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Writes entry (i, j).
    ///
    /// # Panics
    ///
    /// Panics if out of range.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Borrow of row `i`.
    ///
    /// # Panics
    ///
    /// Panics if out of range.
    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    /// XORs `v` into row `i` (the elimination step).
    ///
    /// # Panics
    ///
    /// Panics if out of range or if `v` has the wrong length.
    pub fn xor_row(&mut self, i: usize, v: &BitVec) {
        self.rows[i].xor_assign(v);
    }

    /// Swaps rows `i` and `j`.
    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    /// Copy of column `j`.
    ///
    /// # Panics
    ///
    /// Panics if out of range.
    #[must_use]
    pub fn col(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    /// All columns, left to right.
    #[must_use]
    pub fn cols_vec(&self) -> Vec<BitVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Entrywise sum mod 2.
    ///
    /// # Panics
    ///
    /// Panics on dimension mismatch.
    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.nrows(), other.nrows(), "xor of different row counts");
        assert_eq!(self.cols, other.cols, "xor of different column counts");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.xor(b))
            .collect();
        Self { rows, cols: self.cols }
    }

    /// Entrywise complement: congruent to `ones - self` mod 2.
    #[must_use]
    pub fn complement(&self) -> Self {
        self.xor(&Self::ones(self.nrows(), self.cols))
    }

    /// Matrix product mod 2. Row i of the result is the XOR of the rows of
    /// `other` selected by the 1s of row i of `self`.
    ///
    /// # Panics
    ///
    /// Panics if the inner dimensions differ.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.nrows(), "inner dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|arow| {
                let mut acc = BitVec::zeros(other.cols);
                for j in arow.ones() {
                    acc.xor_assign(&other.rows[j]);
                }
                acc
            })
            .collect();
        Self {
            rows,
            cols: other.cols,
        }
    }

    /// Matrix-vector product mod 2.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != ncols`.
    #[must_use]
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = BitVec::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.overlap_parity(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Transpose.
    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// The strict upper triangle: entries with column > row, the rest zeroed.
    #[must_use]
    pub fn strict_upper(&self) -> Self {
        let mut m = self.clone();
        for i in 0..m.nrows() {
            for j in 0..m.cols.min(i + 1) {
                m.set(i, j, false);
            }
        }
        m
    }

    /// Outer product u (x) v: entry (i, j) = u_i v_j. Acts on a vector x as
    /// (u (x) v) x = overlap(v, x) * u.
    #[must_use]
    pub fn outer(u: &BitVec, v: &BitVec) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for i in u.ones() {
            for j in v.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    /// True when entry (i, j) = entry (j, i) everywhere.
    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Diagonal as a vector (square matrices).
    ///
    /// # Panics
    ///
    /// Panics if not square.
    #[must_use]
    pub fn diagonal(&self) -> BitVec {
        assert!(self.is_square(), "diagonal of a non-square matrix");
        let mut d = BitVec::zeros(self.cols);
        for i in 0..self.cols {
            if self.get(i, i) {
                d.set(i, true);
            }
        }
        d
    }

    /// True when the matrix is the identity.
    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.cols)
    }

    /// True when every row and every column has exactly one 1.
    #[must_use]
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut col_seen = vec![false; self.cols];
        for row in &self.rows {
            if row.mass() != 1 {
                return false;
            }
            let j = row.ones().next().unwrap();
            if col_seen[j] {
                return false;
            }
            col_seen[j] = true;
        }
        true
    }

    /// Simultaneous row/column permutation of a square matrix:
    /// result (i, j) = self (perm[i], perm[j]).
    ///
    /// # Panics
    ///
    /// Panics if not square or if `perm` is not a permutation of `0..n`.
    #[must_use]
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        assert!(self.is_square(), "symmetric permute of a non-square matrix");
        let n = self.cols;
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if self.get(perm[i], perm[j]) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses the text form: header `rows cols`, then `0`/`1` rows.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty matrix text".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_dim = |tok: Option<&str>, what: &str| -> Result<usize> {
            tok.ok_or(Error::Parse {
                line: hline + 1,
                msg: format!("missing {what} in header"),
            })?
            .parse()
            .map_err(|_| Error::Parse {
                line: hline + 1,
                msg: format!("bad {what} in header"),
            })
        };
        let nrows = parse_dim(parts.next(), "row count")?;
        let ncols = parse_dim(parts.next(), "column count")?;
        let mut rows = Vec::with_capacity(nrows);
        for _ in 0..nrows {
            let (lno, line) = lines.next().ok_or(Error::Parse {
                line: hline + 1,
                msg: format!("expected {nrows} rows"),
            })?;
            let row = BitVec::parse_line(line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: lno + 1, msg },
                other => other,
            })?;
            if row.len() != ncols {
                return Err(Error::Parse {
                    line: lno + 1,
                    msg: format!("row has {} bits, expected {ncols}", row.len()),
                });
            }
            rows.push(row);
        }
        Ok(Self { rows, cols: ncols })
    }

    /// Renders the text form parsed by [`Self::parse_text`].
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows(), self.cols);
        for row in &self.rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}
