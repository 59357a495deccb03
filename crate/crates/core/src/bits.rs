//! Bit-packed 0-1 vectors over GF(2).
//!
//! [`BitVec`] is the scalar workhorse of the crate: exponent vectors of group
//! elements, matrix rows, and Gram-Schmidt candidates are all `BitVec`s.
//! Coordinates are 0-indexed; bit `i` lives in word `i / 64` at position
//! `i % 64`. Trailing bits of the last word are kept zero so that whole-word
//! operations (xor, mass, comparisons) never see garbage.
//!
//! Text form: one line of `0`/`1` characters, coordinate 0 first.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A dense 0-1 vector with mod-2 arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// Zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Vector with a single 1 at `index`.
    ///
    /// # Panics
    ///
    /// Panics if `index >= len`.
    #[must_use]
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// The all-ones vector ("flatline") of the given length.
    #[must_use]
    pub fn all_ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    /// Builds a vector from explicit bits, coordinate 0 first.
    #[must_use]
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Interprets the low `len` bits of `value` as a vector
    /// (coordinate `i` = bit `i` of `value`).
    ///
    /// # Panics
    ///
    /// Panics if `len > 64`.
    #[must_use]
    pub fn from_low_bits(len: usize, value: u64) -> Self {
        assert!(len <= 64, "from_low_bits supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len == 64 { value } else { value & ((1u64 << len) - 1) };
        }
        v
    }

    /// Number of coordinates.
    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    /// True when the vector has no coordinates.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Reads coordinate `index`.
    ///
    /// # Panics
    ///
    /// Panics if `index >= len`.
    #[must_use]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    /// Writes coordinate `index`.
    ///
    /// # Panics
    ///
    /// Panics if `index >= len`.
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % 64);
        if value {
            self.words[index / 64] |= mask;
        } else {
            self.words[index / 64] &= !mask;
        }
    }

    /// Flips coordinate `index`.
    ///
    /// # Panics
    ///
    /// Panics if `index >= len`.
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / 64] ^= 1u64 << (index % 64);
    }

    /// Coordinatewise sum mod 2.
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// In-place coordinatewise sum mod 2.
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Coordinatewise product (intersection of supports).
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    #[must_use]
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "and of different lengths");
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    /// Mass: the number of 1 coordinates.
    #[must_use]
    pub fn mass(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the mass as a bool (true = odd).
    #[must_use]
    pub fn mass_is_odd(&self) -> bool {
        self.mass() % 2 == 1
    }

    /// Parity of `mass(self AND other)` (true = odd). This is the mod-2 inner
    /// product, the crate's single most used primitive.
    ///
    /// # Panics
    ///
    /// Panics if the lengths differ.
    #[must_use]
    pub fn overlap_parity(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "overlap of different lengths");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// True when every coordinate is 0.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when every coordinate is 1.
    #[must_use]
    pub fn is_all_ones(&self) -> bool {
        self.mass() == self.len
    }

    /// Iterator over the indices of 1 coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Internal invariant: bits past `len` in the last word are zero.
    /// Exposed so tests (including property tests) can assert it after
    /// arbitrary op sequences.
    #[must_use]
    pub fn padding_is_zero(&self) -> bool {
        let tail = self.len % 64;
        if tail == 0 {
            return true;
        }
        match self.words.last() {
            Some(&w) => w & !((1u64 << tail) - 1) == 0,
            None => true,
        }
    }

    /// Parses a single line of `0`/`1` characters (coordinate 0 first).
    pub fn parse_line(line: &str) -> Result<Self> {
        let line = line.trim();
        let mut bits = Vec::with_capacity(line.len());
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected character {other:?} at column {col}"),
                    })
                }
            }
        }
        Ok(Self::from_bits(&bits))
    }

    fn mask_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(w) = self.words.last_mut() {
                *w &= (1u64 << tail) - 1;
            }
        }
    }

    /// Raw words, least significant first. Only for same-length comparisons.
    fn key_words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Orders by length first, then by the value of the vector read as a
/// little-endian integer. This is the canonical coordinate order used to sort
/// group elements.
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| {
                for (a, b) in self.key_words().iter().rev().zip(other.key_words().iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
