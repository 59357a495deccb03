//! Signed-group elements, generators, and the counting oracles built on
//! brute-force enumeration.
//!
//! An element is `sign · R^s S^p` for 0-1 exponent vectors `s`, `p` over a
//! shared ambient length. `R` and `S` generate everything: they satisfy
//! `R² = S² = 1` and `RS = −SR` componentwise, which pins the whole
//! multiplication law down to one parity (see [`GroupElement::mul`]).
//! Generators are ordered lists of elements; powers `e^p` multiply the
//! selected elements left to right.
//!
//! Counting works in two lanes that are kept separate on purpose: an
//! enumeration lane that walks all `2ⁿ` powers or `4ⁿ` ordered pairs, and
//! a closed-form lane evaluating the stated formulas. Reports carry both
//! so disagreements are data, not test failures.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::bits::BitVec;
use crate::bounds;
use crate::error::{Error, Result};
use crate::invert;
use crate::matrix::BitMatrix;

/// A multiplicative sign, ordered `Plus < Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// `Minus` exactly when `parity` is odd (true).
    pub fn from_parity(parity: bool) -> Self {
        if parity {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.as_i8() as f64
    }
}

/// Group product: signs multiply.
impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, other: Self) -> Self {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `sign · R^s S^p` with `s` and `p` of equal length.
///
/// The derived ordering is (sign, s, p) with the bit vectors compared as
/// little-endian integers; it is the canonical order used for group
/// enumeration output and serialization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    sign: Sign,
    s: BitVec,
    p: BitVec,
}

impl GroupElement {
    pub fn new(sign: Sign, s: BitVec, p: BitVec) -> Result<Self> {
        if s.len() != p.len() {
            return Err(Error::LengthMismatch { left: s.len(), right: p.len() });
        }
        Ok(GroupElement { sign, s, p })
    }

    /// The identity `(+1, 0, 0)` at the given ambient length.
    pub fn identity(len: usize) -> Self {
        GroupElement { sign: Sign::Plus, s: BitVec::zeros(len), p: BitVec::zeros(len) }
    }

    /// `R` at coordinate `index`: `(+1, e_index, 0)`.
    pub fn r_at(len: usize, index: usize) -> Self {
        GroupElement { sign: Sign::Plus, s: BitVec::unit(len, index), p: BitVec::zeros(len) }
    }

    /// `S` at coordinate `index`: `(+1, 0, e_index)`.
    pub fn s_at(len: usize, index: usize) -> Self {
        GroupElement { sign: Sign::Plus, s: BitVec::zeros(len), p: BitVec::unit(len, index) }
    }

    /// `A = RS` at coordinate `index`: `(+1, e_index, e_index)`; squares
    /// to −1.
    pub fn a_at(len: usize, index: usize) -> Self {
        GroupElement { sign: Sign::Plus, s: BitVec::unit(len, index), p: BitVec::unit(len, index) }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn s(&self) -> &BitVec {
        &self.s
    }

    pub fn p(&self) -> &BitVec {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// True for `±1`: both exponent vectors zero.
    pub fn is_scalar(&self) -> bool {
        self.s.is_zero() && self.p.is_zero()
    }

    pub fn neg(&self) -> Self {
        GroupElement { sign: self.sign.flip(), s: self.s.clone(), p: self.p.clone() }
    }

    /// Multiplication. Moving `S^p` of the left factor past `R^t` of the
    /// right factor costs one sign per coincident coordinate, so the
    /// result is `(sign·sign'·(−1)^{mass(p ∧ s')}, s⊕s', p⊕p')`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        let swap = self.p.overlap_parity(&other.s);
        let mut sign = self.sign * other.sign;
        if swap {
            sign = sign.flip();
        }
        Ok(GroupElement { sign, s: self.s.xor(&other.s), p: self.p.xor(&other.p) })
    }

    /// The signature `σ(e)` with `e² = σ(e)·1`; equals
    /// `(−1)^{mass(s∧p)}`, independent of the element's sign.
    pub fn signature(&self) -> Sign {
        Sign::from_parity(self.s.and(&self.p).mass_is_odd())
    }

    /// `e²` as an element: `(σ(e), 0, 0)`.
    pub fn square(&self) -> Self {
        let mut sq = GroupElement::identity(self.len());
        sq.sign = self.signature();
        sq
    }

    /// `e⁻¹ = σ(e)·e`.
    pub fn inverse(&self) -> Self {
        if self.signature().is_minus() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// `+1` if the elements commute, `−1` if they anticommute:
    /// `(−1)^{mass(p∧s') + mass(p'∧s)}`.
    pub fn commutator_sign(&self, other: &Self) -> Result<Sign> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        let parity = self.p.overlap_parity(&other.s) ^ other.p.overlap_parity(&self.s);
        Ok(Sign::from_parity(parity))
    }

    /// Extends the ambient length, zero-padding both exponent vectors.
    /// Lengths never shrink implicitly; asking to is an error.
    pub fn pad(&self, len: usize) -> Result<Self> {
        self.embed(len, 0)
    }

    /// Copies the element into ambient length `len` with its coordinates
    /// shifted up by `offset`. Elements embedded into disjoint windows
    /// commute, which makes this the building block for disjoint unions.
    pub fn embed(&self, len: usize, offset: usize) -> Result<Self> {
        if offset + self.len() > len {
            return Err(Error::LengthMismatch { left: offset + self.len(), right: len });
        }
        let mut s = BitVec::zeros(len);
        let mut p = BitVec::zeros(len);
        for i in self.s.ones() {
            s.set(offset + i, true);
        }
        for i in self.p.ones() {
            p.set(offset + i, true);
        }
        Ok(GroupElement { sign: self.sign, s, p })
    }

    /// Parses one `s=<bits> p=<bits> sign=<+|->` line.
    pub fn parse_line(text: &str) -> Result<Self> {
        Self::parse_numbered(text, 1)
    }

    fn parse_numbered(text: &str, line: usize) -> Result<Self> {
        let mut s = None;
        let mut p = None;
        let mut sign = None;
        for token in text.split_whitespace() {
            if let Some(bits) = token.strip_prefix("s=") {
                s = Some(BitVec::parse_line(bits).map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad s bits {bits:?}"),
                })?);
            } else if let Some(bits) = token.strip_prefix("p=") {
                p = Some(BitVec::parse_line(bits).map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad p bits {bits:?}"),
                })?);
            } else if let Some(sg) = token.strip_prefix("sign=") {
                sign = Some(match sg {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    other => {
                        return Err(Error::Parse { line, msg: format!("bad sign {other:?}") })
                    }
                });
            } else {
                return Err(Error::Parse { line, msg: format!("unexpected token {token:?}") });
            }
        }
        match (s, p, sign) {
            (Some(s), Some(p), Some(sign)) => {
                if s.len() != p.len() {
                    return Err(Error::Parse {
                        line,
                        msg: format!("s has {} bits but p has {}", s.len(), p.len()),
                    });
                }
                Ok(GroupElement { sign, s, p })
            }
            _ => Err(Error::Parse { line, msg: "need s=, p=, and sign= fields".into() }),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} p={} sign={}", self.s, self.p, self.sign)
    }
}

/// The ±1 commutation table of a generator, stored in 0-1 form
/// (`d = (1−c)/2`). The diagonal of `c` is +1, so `d` has zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcMatrix {
    n: usize,
    d: BitMatrix,
}

impl AcMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The 0-1 form: `d(i,j) = 1` iff elements i and j anticommute.
    pub fn d(&self) -> &BitMatrix {
        &self.d
    }

    /// The ±1 form.
    pub fn c(&self, i: usize, j: usize) -> Sign {
        Sign::from_parity(self.d.get(i, j))
    }
}

/// Uniform signature of a generator's elements, when there is one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Purity {
    Positive,
    Negative,
    Mixed,
}

/// Enumerated negative-power count next to the closed forms that apply
/// to pure anticommutative generators.
///
/// `enumerated` counts exponents `p` with `σ(e^p) = −1` and is always
/// present. The closed-form fields are populated only when the generator
/// is anticommutative with a uniform signature: `b_formula` is the
/// binomial sum (`b₂+b₃` positive case, `b₁+b₂` negative case),
/// `trig_corrected` the cosine/sine form with leading constant `2^{n−1}`
/// evaluated exactly, and `trig_as_printed` the same form as stated with
/// leading constant `2^{n−2}`, kept verbatim for comparison (it already
/// fails at n = 2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegCountReport {
    pub n: usize,
    pub purity: Purity,
    pub enumerated: u128,
    pub b_formula: Option<u128>,
    pub trig_corrected: Option<u128>,
    pub trig_as_printed: Option<f64>,
}

/// An ordered list of equal-length elements with a basicness certificate.
///
/// `basic` is true when no nonempty product of the elements is `±1`,
/// equivalently when the stacked exponent columns `(sᵢ|pᵢ)` are linearly
/// independent mod 2. Basic generators of size n generate exactly
/// `2^{n+1}` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    elements: Vec<GroupElement>,
    ambient: usize,
    basic: bool,
}

impl Generator {
    pub fn new(elements: Vec<GroupElement>) -> Result<Self> {
        let ambient = elements.first().map_or(0, GroupElement::len);
        for e in &elements {
            if e.len() != ambient {
                return Err(Error::InconsistentLengths {
                    what: "generator elements",
                    left: ambient,
                    right: e.len(),
                });
            }
        }
        let basic = Self::exponent_rank(&elements, ambient) == elements.len();
        Ok(Generator { elements, ambient, basic })
    }

    /// Rank of the 2L×n matrix whose column i stacks sᵢ over pᵢ. A power
    /// e^p is scalar exactly when p lies in this matrix's kernel, so full
    /// column rank certifies basicness without enumeration.
    fn exponent_rank(elements: &[GroupElement], ambient: usize) -> usize {
        let cols: Vec<BitVec> = elements
            .iter()
            .map(|e| {
                let mut col = BitVec::zeros(2 * ambient);
                for i in e.s.ones() {
                    col.set(i, true);
                }
                for i in e.p.ones() {
                    col.set(ambient + i, true);
                }
                col
            })
            .collect();
        if cols.is_empty() {
            return 0;
        }
        invert::rank(&BitMatrix::from_cols(&cols))
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    /// The linear-algebra basicness certificate.
    pub fn basic(&self) -> bool {
        self.basic
    }

    /// Scans all 2ⁿ exponents and checks that only p = 0 yields a scalar.
    /// Exists to cross-validate the rank certificate; they always agree.
    pub fn is_basic_exhaustive(&self) -> Result<bool> {
        bounds::check("is_basic_exhaustive", self.n(), bounds::ENUMERATION_MAX_N)?;
        for v in 1..(1u64 << self.n()) {
            let p = BitVec::from_low_bits(self.n(), v);
            if self.power(&p)?.is_scalar() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The ordered product `e₁^{p₁} ⋯ e_n^{p_n}`.
    pub fn power(&self, p: &BitVec) -> Result<GroupElement> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch { left: p.len(), right: self.n() });
        }
        let mut acc = GroupElement::identity(self.ambient);
        for i in p.ones() {
            acc = acc.mul(&self.elements[i])?;
        }
        Ok(acc)
    }

    /// Signatures of the generator's elements, in order.
    pub fn signatures(&self) -> Vec<Sign> {
        self.elements.iter().map(GroupElement::signature).collect()
    }

    /// Number of elements with negative signature.
    pub fn n_minus(&self) -> usize {
        self.signatures().iter().filter(|s| s.is_minus()).count()
    }

    pub fn purity(&self) -> Purity {
        let negatives = self.n_minus();
        if negatives == 0 {
            Purity::Positive
        } else if negatives == self.n() {
            Purity::Negative
        } else {
            Purity::Mixed
        }
    }

    /// The pairwise commutation table.
    pub fn ac_matrix(&self) -> AcMatrix {
        let n = self.n();
        let mut d = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let anti = self.elements[i]
                    .commutator_sign(&self.elements[j])
                    .expect("equal ambient lengths by construction")
                    .is_minus();
                d.set(i, j, anti);
                d.set(j, i, anti);
            }
        }
        AcMatrix { n, d }
    }

    pub fn is_anticommutative(&self) -> bool {
        let ac = self.ac_matrix();
        (0..self.n()).all(|i| (0..self.n()).all(|j| i == j || ac.d.get(i, j)))
    }

    pub fn is_commutative(&self) -> bool {
        let ac = self.ac_matrix();
        (0..self.n()).all(|i| (0..self.n()).all(|j| !ac.d.get(i, j)))
    }

    /// The reordering sign `(−1)^{⟨D↑p, q⟩} = (−1)^{Σ_{j<k} d_{jk} p_k q_j}`
    /// collected when the interleaved product `e^p e^q` is sorted into
    /// position order. The full relation to `e^{p⊕q}` also carries the
    /// squared-out factor `∏_{i: p_i=q_i=1} σ(e_i)`, which this function
    /// deliberately excludes; see the tests for the complete identity.
    pub fn product_sign(&self, p: &BitVec, q: &BitVec) -> Result<Sign> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch { left: p.len(), right: self.n() });
        }
        if q.len() != self.n() {
            return Err(Error::LengthMismatch { left: q.len(), right: self.n() });
        }
        let upper = self.ac_matrix().d.strict_upper();
        let dp = upper.mul_vec(p);
        Ok(Sign::from_parity(dp.overlap_parity(q)))
    }

    /// `σ(e^p)`. For anticommutative generators this is the closed form
    /// `∏_i σ(e_i)^{p_i} · (−1)^{P(P−1)/2}` with `P = mass(p)`; otherwise
    /// it falls back to squaring the power.
    pub fn signature_of_power(&self, p: &BitVec) -> Result<Sign> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch { left: p.len(), right: self.n() });
        }
        if self.is_anticommutative() {
            let mass = p.mass();
            let mut parity = (mass * mass.saturating_sub(1) / 2) % 2 == 1;
            for i in p.ones() {
                parity ^= self.elements[i].signature().is_minus();
            }
            Ok(Sign::from_parity(parity))
        } else {
            Ok(self.power(p)?.signature())
        }
    }

    /// All `±e^p`, as a sorted set. Cardinality is `2^{n+1}` exactly when
    /// the generator is basic.
    pub fn enumerate_group(&self) -> Result<BTreeSet<GroupElement>> {
        bounds::check("enumerate_group", self.n(), bounds::ENUMERATION_MAX_N)?;
        let mut out = BTreeSet::new();
        for v in 0..(1u64 << self.n()) {
            let p = BitVec::from_low_bits(self.n(), v);
            let e = self.power(&p)?;
            out.insert(e.neg());
            out.insert(e);
        }
        if self.basic {
            assert_eq!(out.len() as u128, 1u128 << (self.n() + 1));
        }
        Ok(out)
    }

    /// The AC-count c⁻: ordered exponent pairs (p, q) whose powers
    /// anticommute. Uses `com(e^p, e^q) = (−1)^{⟨Dp, q⟩}` with D the 0-1
    /// commutation matrix, scanning all 4ⁿ pairs.
    pub fn ac_count(&self) -> Result<u128> {
        bounds::check("ac_count", self.n(), bounds::PAIR_SCAN_MAX_N)?;
        let d = self.ac_matrix().d.clone();
        let n = self.n();
        let mut count = 0u128;
        for pv in 0..(1u64 << n) {
            let p = BitVec::from_low_bits(n, pv);
            let dp = d.mul_vec(&p);
            if dp.is_zero() {
                continue;
            }
            for qv in 0..(1u64 << n) {
                let q = BitVec::from_low_bits(n, qv);
                if dp.overlap_parity(&q) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Counts negative powers by enumeration and attaches the applicable
    /// closed forms (pure anticommutative generators only).
    pub fn negative_counts(&self) -> Result<NegCountReport> {
        bounds::check("negative_counts", self.n(), bounds::ENUMERATION_MAX_N)?;
        let n = self.n();
        let mut enumerated = 0u128;
        for v in 0..(1u64 << n) {
            let p = BitVec::from_low_bits(n, v);
            if self.signature_of_power(&p)?.is_minus() {
                enumerated += 1;
            }
        }
        let purity = self.purity();
        let closed_forms = self.is_anticommutative() && purity != Purity::Mixed;
        let (b_formula, trig_corrected, trig_as_printed) = if closed_forms {
            let positive = purity == Purity::Positive;
            (
                Some(if positive {
                    b_q(n, 2)? + b_q(n, 3)?
                } else {
                    b_q(n, 1)? + b_q(n, 2)?
                }),
                Some(trig_corrected(n, positive)?),
                Some(trig_as_printed(n, positive)),
            )
        } else {
            (None, None, None)
        };
        Ok(NegCountReport { n, purity, enumerated, b_formula, trig_corrected, trig_as_printed })
    }

    /// Serializes one element per line in the `s= p= sign=` format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the [`Generator::to_text`] format; blank lines are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut elements = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            elements.push(GroupElement::parse_numbered(line, idx + 1)?);
        }
        Generator::new(elements)
    }
}

fn binomial(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow { what: "binomial", n })?;
        acc /= (i + 1) as u128;
    }
    Ok(acc)
}

/// The four-step binomial sum `b_q(n) = Σ_j C(n, q+4j)`.
pub fn b_q(n: usize, q: usize) -> Result<u128> {
    let mut acc = 0u128;
    let mut k = q;
    while k <= n {
        acc = acc
            .checked_add(binomial(n, k)?)
            .ok_or(Error::Overflow { what: "b_q", n })?;
        k += 4;
    }
    Ok(acc)
}

/// The negative-power count in exact integer form, with the corrected
/// leading constant `2^{n−1}`:
/// `s = 2^{n−1} − E(n)` where `E(n) = 2^{n/2−1}·(cos(nπ/4) ± sin(nπ/4))`
/// simplifies to a signed power of two depending on `n mod 8` (or zero).
/// `positive` selects the `s₊` branch (+sin), otherwise `s₋` (−sin).
pub fn trig_corrected(n: usize, positive: bool) -> Result<u128> {
    if n == 0 {
        // 2^{n−1} does not apply; the empty generator has no negative powers.
        return Ok(0);
    }
    if n >= 127 {
        return Err(Error::Overflow { what: "trig_corrected", n });
    }
    let half_even = |n: usize| 1i128 << ((n - 2) / 2); // 2^{(n−2)/2}, even n
    let half_odd = |n: usize| 1i128 << ((n - 1) / 2); // 2^{(n−1)/2}, odd n
    let e: i128 = if positive {
        match n % 8 {
            0 => half_even(n),
            1 => half_odd(n),
            2 => half_even(n),
            3 => 0,
            4 => -half_even(n),
            5 => -half_odd(n),
            6 => -half_even(n),
            _ => 0,
        }
    } else {
        match n % 8 {
            0 => half_even(n),
            1 => 0,
            2 => -half_even(n),
            3 => -half_odd(n),
            4 => -half_even(n),
            5 => 0,
            6 => half_even(n),
            _ => half_odd(n),
        }
    };
    let value = (1i128 << (n - 1)) - e;
    u128::try_from(value).map_err(|_| Error::Overflow { what: "trig_corrected", n })
}

/// The same closed form exactly as stated, with leading constant
/// `2^{n−2}`: `2^{n−2} − 2^{n/2−1}(cos(nπ/4) ± sin(nπ/4))`. Returned as
/// a float and kept for comparison only; it already disagrees with
/// enumeration at n = 2 (value 0 against an enumerated count of 1).
pub fn trig_as_printed(n: usize, positive: bool) -> f64 {
    let nf = n as f64;
    let angle = nf * std::f64::consts::FRAC_PI_4;
    let trig = if positive {
        angle.cos() + angle.sin()
    } else {
        angle.cos() - angle.sin()
    };
    2f64.powf(nf - 2.0) - 2f64.powf(nf / 2.0 - 1.0) * trig
}

/// A pure anticommutative basic generator of size n with the first
/// `n_plus` elements positive and the rest negative. Element i is
/// `R_i · ∏_{j<i} S_j`, with the `S_i` bit also set on negative slots,
/// which flips the signature without disturbing any commutator.
pub fn standard_ac_generator(n: usize, n_plus: usize) -> Result<Generator> {
    if n_plus > n {
        return Err(Error::OutOfRange { what: "n_plus", value: n_plus, min: 0, max: n });
    }
    let mut elements = Vec::with_capacity(n);
    for i in 0..n {
        let s = BitVec::unit(n, i);
        let mut p = BitVec::zeros(n);
        for j in 0..i {
            p.set(j, true);
        }
        if i >= n_plus {
            p.set(i, true);
        }
        elements.push(GroupElement::new(Sign::Plus, s, p)?);
    }
    Generator::new(elements)
}

/// The three spin matrices in double-logic form over ambient length 2:
/// `σ₁ = R₂`, `σ₂ = −R^{(1,1)}S^{(1,1)}`, `σ₃ = S₂`. Pairwise
/// anticommuting with all-positive signatures; their ordered product is
/// the central negative-squaring element `ι = S₁R₁`.
pub fn pauli_triple() -> Generator {
    let sigma1 = GroupElement::r_at(2, 1);
    let sigma2 = GroupElement::new(
        Sign::Minus,
        BitVec::from_bits(&[true, true]),
        BitVec::from_bits(&[true, true]),
    )
    .unwrap();
    let sigma3 = GroupElement::s_at(2, 1);
    Generator::new(vec![sigma1, sigma2, sigma3]).unwrap()
}

/// The central element `ι = S₁R₁ = (−1, e₁, e₁)` commuting with the
/// whole ambient-2 group and squaring to −1.
pub fn imaginary_unit() -> GroupElement {
    GroupElement::new(Sign::Minus, BitVec::unit(2, 0), BitVec::unit(2, 0)).unwrap()
}

/// The quaternion triple `i = ισ₃`, `j = ισ₂`, `k = ισ₁` over ambient
/// length 2: all signatures −1, `ij = k`, `jk = i`, `ki = j`, `ijk = −1`.
/// Not basic as a triple (the product of all three is scalar).
pub fn quaternion_triple() -> Generator {
    let i = GroupElement::new(
        Sign::Minus,
        BitVec::from_bits(&[true, false]),
        BitVec::from_bits(&[true, true]),
    )
    .unwrap();
    let j = GroupElement::new(
        Sign::Minus,
        BitVec::from_bits(&[false, true]),
        BitVec::from_bits(&[false, true]),
    )
    .unwrap();
    let k = GroupElement::new(
        Sign::Minus,
        BitVec::from_bits(&[true, true]),
        BitVec::from_bits(&[true, false]),
    )
    .unwrap();
    Generator::new(vec![i, j, k]).unwrap()
}

/// Disjoint commuting union: each block is embedded into its own
/// coordinate window, followed by `extra_commuting` fresh `R`
/// singletons. Elements from different windows commute, so the result
/// inherits exactly the block structure it was given.
pub fn commuting_union(blocks: &[Generator], extra_commuting: usize) -> Result<Generator> {
    let total: usize = blocks.iter().map(Generator::n).sum::<usize>() + extra_commuting;
    let ambient: usize = blocks.iter().map(Generator::ambient).sum::<usize>() + extra_commuting;
    let mut elements = Vec::with_capacity(total);
    let mut offset = 0;
    for block in blocks {
        for e in block.elements() {
            elements.push(e.embed(ambient, offset)?);
        }
        offset += block.ambient();
    }
    for i in 0..extra_commuting {
        elements.push(GroupElement::r_at(ambient, offset + i));
    }
    Generator::new(elements)
}

/// A uniformly random element of the ambient-`len` group.
pub fn random_element<R: Rng + ?Sized>(len: usize, rng: &mut R) -> GroupElement {
    let sign = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
    let mut s = BitVec::zeros(len);
    let mut p = BitVec::zeros(len);
    for i in 0..len {
        s.set(i, rng.gen::<bool>());
        p.set(i, rng.gen::<bool>());
    }
    GroupElement::new(sign, s, p).unwrap()
}

/// A random basic generator of size n over ambient length n, found by
/// rejection. A random exponent matrix is full-rank with probability
/// bounded well away from zero, so the loop terminates fast; the cap
/// only guards against a broken RNG.
pub fn random_basic_generator<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Generator {
    for _ in 0..10_000 {
        let elements: Vec<GroupElement> = (0..n).map(|_| random_element(n, rng)).collect();
        let gen = Generator::new(elements).unwrap();
        if gen.basic() {
            return gen;
        }
    }
    unreachable!("rejection sampling failed to find a basic generator");
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    fn r() -> GroupElement {
        GroupElement::r_at(1, 0)
    }

    fn s() -> GroupElement {
        GroupElement::s_at(1, 0)
    }

    fn a() -> GroupElement {
        GroupElement::a_at(1, 0)
    }

    #[test]
    fn multiplication_examples() {
        let rs = r().mul(&s()).unwrap();
        assert_eq!(rs, a());
        assert_eq!(rs.sign(), Sign::Plus);

        let sr = s().mul(&r()).unwrap();
        assert_eq!(sr, a().neg());

        let aa = a().mul(&a()).unwrap();
        assert!(aa.is_scalar());
        assert_eq!(aa.sign(), Sign::Minus);

        let e = GroupElement::new(Sign::Minus, BitVec::from_low_bits(3, 5), BitVec::from_low_bits(3, 3)).unwrap();
        assert_eq!(e.mul(&GroupElement::identity(3)).unwrap(), e);
        assert_eq!(GroupElement::identity(3).mul(&e).unwrap(), e);

        assert!(matches!(
            r().mul(&GroupElement::identity(2)),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn signatures_and_commutators() {
        assert_eq!(r().signature(), Sign::Plus);
        assert_eq!(s().signature(), Sign::Plus);
        assert_eq!(a().signature(), Sign::Minus);
        assert_eq!(a().neg().signature(), Sign::Minus);

        assert_eq!(r().commutator_sign(&s()).unwrap(), Sign::Minus);
        assert_eq!(r().commutator_sign(&r()).unwrap(), Sign::Plus);

        // e² equals the signature times the identity, and e·e⁻¹ = 1.
        for e in [r(), s(), a(), a().neg()] {
            assert_eq!(e.mul(&e).unwrap(), e.square());
            let inv = e.inverse();
            let prod = e.mul(&inv).unwrap();
            assert!(prod.is_scalar());
            assert_eq!(prod.sign(), Sign::Plus);
        }
    }

    #[test]
    fn element_text_roundtrip() {
        let e = GroupElement::new(
            Sign::Minus,
            BitVec::from_bits(&[true, false, true]),
            BitVec::from_bits(&[false, true, true]),
        )
        .unwrap();
        let line = e.to_string();
        assert_eq!(line, "s=101 p=011 sign=-");
        assert_eq!(GroupElement::parse_line(&line).unwrap(), e);

        assert!(matches!(GroupElement::parse_line("s=10 p=1 sign=+"), Err(Error::Parse { .. })));
        assert!(matches!(GroupElement::parse_line("s=10 p=10"), Err(Error::Parse { .. })));
        assert!(matches!(GroupElement::parse_line("s=10 p=10 sign=?"), Err(Error::Parse { .. })));
        assert!(matches!(GroupElement::parse_line("s=12 p=10 sign=+"), Err(Error::Parse { .. })));
    }

    #[test]
    fn generator_text_roundtrip() {
        let gen = standard_ac_generator(3, 1).unwrap();
        let text = gen.to_text();
        let back = Generator::parse_text(&text).unwrap();
        assert_eq!(back, gen);

        let mismatched = "s=10 p=10 sign=+\ns=1 p=1 sign=-\n";
        assert!(matches!(Generator::parse_text(mismatched), Err(Error::InconsistentLengths { .. })));
    }

    #[test]
    fn basicness_certificate() {
        let pair = Generator::new(vec![r(), s()]).unwrap();
        assert!(pair.basic());
        assert!(pair.is_basic_exhaustive().unwrap());

        // e, f, e·f can never be basic: the full product is scalar.
        let e = GroupElement::r_at(2, 0);
        let f = GroupElement::s_at(2, 1);
        let ef = e.mul(&f).unwrap();
        let dependent = Generator::new(vec![e, f, ef]).unwrap();
        assert!(!dependent.basic());
        assert!(!dependent.is_basic_exhaustive().unwrap());

        // The sign does not affect basicness.
        let pair_neg = Generator::new(vec![r().neg(), s()]).unwrap();
        assert!(pair_neg.basic());
    }

    #[test]
    fn group_enumeration_orders() {
        let pair = Generator::new(vec![r(), s()]).unwrap();
        let group = pair.enumerate_group().unwrap();
        assert_eq!(group.len(), 8);

        let empty = Generator::new(vec![]).unwrap();
        let group = empty.enumerate_group().unwrap();
        assert_eq!(group.len(), 2);

        for n in 1..=6 {
            let gen = standard_ac_generator(n, n / 2).unwrap();
            assert_eq!(gen.enumerate_group().unwrap().len() as u64, 1 << (n + 1));
        }
    }

    #[test]
    fn group_closure_under_mul_and_inverse() {
        let gen = standard_ac_generator(3, 2).unwrap();
        let group: Vec<GroupElement> = gen.enumerate_group().unwrap().into_iter().collect();
        for x in &group {
            assert!(group.contains(&x.inverse()));
            for y in &group {
                assert!(group.contains(&x.mul(y).unwrap()));
            }
        }
    }

    #[test]
    fn power_and_product_sign() {
        let gen = standard_ac_generator(2, 2).unwrap();
        let zero = BitVec::zeros(2);
        assert_eq!(gen.power(&zero).unwrap(), GroupElement::identity(2));
        for qv in 0..4 {
            let q = BitVec::from_low_bits(2, qv);
            assert_eq!(gen.product_sign(&zero, &q).unwrap(), Sign::Plus);
        }

        let p01 = BitVec::from_bits(&[false, true]);
        let p10 = BitVec::from_bits(&[true, false]);
        assert_eq!(gen.product_sign(&p01, &p10).unwrap(), Sign::Minus);
        assert_eq!(gen.product_sign(&p10, &p01).unwrap(), Sign::Plus);
    }

    #[test]
    fn product_sign_full_identity_exhaustive() {
        // e^p · e^q = product_sign(p,q) · ∏_{i: p_i = q_i = 1} σ(e_i) · e^{p⊕q},
        // checked across mixed-signature and partially commuting generators.
        let gens = [
            standard_ac_generator(4, 4).unwrap(),
            standard_ac_generator(4, 2).unwrap(),
            standard_ac_generator(4, 0).unwrap(),
            Generator::new(vec![
                GroupElement::r_at(4, 0),
                GroupElement::s_at(4, 1),
                GroupElement::a_at(4, 2),
                GroupElement::a_at(4, 3).neg(),
            ])
            .unwrap(),
        ];
        for gen in &gens {
            let n = gen.n();
            for pv in 0..(1u64 << n) {
                for qv in 0..(1u64 << n) {
                    let p = BitVec::from_low_bits(n, pv);
                    let q = BitVec::from_low_bits(n, qv);
                    let lhs = gen.power(&p).unwrap().mul(&gen.power(&q).unwrap()).unwrap();
                    let mut rhs = gen.power(&p.xor(&q)).unwrap();
                    let mut sign = gen.product_sign(&p, &q).unwrap();
                    for i in p.and(&q).ones() {
                        sign = sign * gen.element(i).signature();
                    }
                    if sign.is_minus() {
                        rhs = rhs.neg();
                    }
                    assert_eq!(lhs, rhs, "p={pv:b} q={qv:b}");
                }
            }
        }
    }

    #[test]
    fn signature_of_power_closed_form() {
        // Positive anticommutative: negative signature iff mass ≡ 2, 3 mod 4.
        let gen = standard_ac_generator(6, 6).unwrap();
        for v in 0..(1u64 << 6) {
            let p = BitVec::from_low_bits(6, v);
            let by_formula = gen.signature_of_power(&p).unwrap();
            let by_squaring = gen.power(&p).unwrap().signature();
            assert_eq!(by_formula, by_squaring);
            let mass = p.mass() % 4;
            assert_eq!(by_formula.is_minus(), mass == 2 || mass == 3);
        }

        // Negative anticommutative: negative signature iff mass ≡ 1, 2 mod 4.
        let gen = standard_ac_generator(6, 0).unwrap();
        for v in 0..(1u64 << 6) {
            let p = BitVec::from_low_bits(6, v);
            let by_formula = gen.signature_of_power(&p).unwrap();
            assert_eq!(by_formula, gen.power(&p).unwrap().signature());
            let mass = p.mass() % 4;
            assert_eq!(by_formula.is_minus(), mass == 1 || mass == 2);
        }

        // Mixed signatures still agree with squaring.
        let gen = standard_ac_generator(5, 2).unwrap();
        for v in 0..(1u64 << 5) {
            let p = BitVec::from_low_bits(5, v);
            assert_eq!(gen.signature_of_power(&p).unwrap(), gen.power(&p).unwrap().signature());
        }
    }

    #[test]
    fn order_eight_rigidity_spot() {
        let gen = standard_ac_generator(3, 3).unwrap();
        let e23 = gen.element(1).mul(gen.element(2)).unwrap();
        assert_eq!(gen.element(0).commutator_sign(&e23).unwrap(), Sign::Plus);
    }

    #[test]
    fn negative_count_examples() {
        let gen = standard_ac_generator(2, 2).unwrap();
        let report = gen.negative_counts().unwrap();
        assert_eq!(report.enumerated, 1);
        assert_eq!(report.b_formula, Some(1));
        assert_eq!(report.trig_corrected, Some(1));
        // The stated 2^{n−2} constant gives 0 here: first mismatch.
        assert!((report.trig_as_printed.unwrap() - 0.0).abs() < 1e-9);

        let gen = standard_ac_generator(4, 4).unwrap();
        let plus = gen.negative_counts().unwrap();
        assert_eq!(plus.enumerated, 10);
        assert_eq!(plus.b_formula, Some(10));
        let gen = standard_ac_generator(4, 0).unwrap();
        let minus = gen.negative_counts().unwrap();
        assert_eq!(minus.enumerated, 10);

        let gen = standard_ac_generator(3, 0).unwrap();
        let report = gen.negative_counts().unwrap();
        assert_eq!(report.purity, Purity::Negative);
        assert_eq!(report.enumerated, 6);
        assert_eq!(report.b_formula, Some(6));

        let mixed = standard_ac_generator(3, 1).unwrap();
        let report = mixed.negative_counts().unwrap();
        assert_eq!(report.purity, Purity::Mixed);
        assert_eq!(report.b_formula, None);
    }

    #[test]
    fn b_sums_match_enumeration_and_corrected_trig() {
        for n in 1..=10 {
            let s_plus = b_q(n, 2).unwrap() + b_q(n, 3).unwrap();
            let s_minus = b_q(n, 1).unwrap() + b_q(n, 2).unwrap();
            let plus_gen = standard_ac_generator(n, n).unwrap();
            assert_eq!(plus_gen.negative_counts().unwrap().enumerated, s_plus, "s+ at n={n}");
            let minus_gen = standard_ac_generator(n, 0).unwrap();
            assert_eq!(minus_gen.negative_counts().unwrap().enumerated, s_minus, "s- at n={n}");
        }
        for n in 1..=16 {
            let s_plus = b_q(n, 2).unwrap() + b_q(n, 3).unwrap();
            let s_minus = b_q(n, 1).unwrap() + b_q(n, 2).unwrap();
            assert_eq!(trig_corrected(n, true).unwrap(), s_plus, "trig s+ at n={n}");
            assert_eq!(trig_corrected(n, false).unwrap(), s_minus, "trig s- at n={n}");
            assert_eq!(s_plus == s_minus, n % 4 == 0, "equality rule at n={n}");
        }
    }

    #[test]
    fn ac_count_examples() {
        let commuting = Generator::new(vec![
            GroupElement::r_at(3, 0),
            GroupElement::r_at(3, 1),
            GroupElement::r_at(3, 2),
        ])
        .unwrap();
        assert_eq!(commuting.ac_count().unwrap(), 0);

        let pair = standard_ac_generator(2, 2).unwrap();
        assert_eq!(pair.ac_count().unwrap(), 6);

        // Two commuting anticommutative doubletons.
        let two_blocks = Generator::new(vec![
            GroupElement::r_at(4, 0),
            GroupElement::s_at(4, 0),
            GroupElement::r_at(4, 1),
            GroupElement::s_at(4, 1),
        ])
        .unwrap();
        assert!(two_blocks.basic());
        assert_eq!(two_blocks.ac_count().unwrap(), 120);
    }

    #[test]
    fn ac_count_matches_direct_commutators() {
        let gen = standard_ac_generator(4, 2).unwrap();
        let n = gen.n();
        let mut direct = 0u128;
        for pv in 0..(1u64 << n) {
            for qv in 0..(1u64 << n) {
                let p = BitVec::from_low_bits(n, pv);
                let q = BitVec::from_low_bits(n, qv);
                let ep = gen.power(&p).unwrap();
                let eq = gen.power(&q).unwrap();
                if ep.commutator_sign(&eq).unwrap().is_minus() {
                    direct += 1;
                }
            }
        }
        assert_eq!(gen.ac_count().unwrap(), direct);
    }

    #[test]
    fn standard_generator_shapes() {
        for n in 1..=5 {
            for n_plus in 0..=n {
                let gen = standard_ac_generator(n, n_plus).unwrap();
                assert!(gen.basic());
                assert!(gen.is_anticommutative());
                let sigs = gen.signatures();
                for (i, sig) in sigs.iter().enumerate() {
                    assert_eq!(sig.is_minus(), i >= n_plus);
                }
                assert_eq!(gen.n_minus(), n - n_plus);
            }
        }
        assert!(matches!(standard_ac_generator(3, 4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn pauli_and_quaternion_structure() {
        let pauli = pauli_triple();
        assert!(pauli.is_anticommutative());
        assert_eq!(pauli.purity(), Purity::Positive);
        let iota = imaginary_unit();
        assert_eq!(iota.signature(), Sign::Minus);
        let product = pauli
            .element(0)
            .mul(pauli.element(1))
            .unwrap()
            .mul(pauli.element(2))
            .unwrap();
        assert_eq!(product, iota);
        for e in pauli.elements() {
            assert_eq!(iota.commutator_sign(e).unwrap(), Sign::Plus);
        }

        let q = quaternion_triple();
        assert!(q.is_anticommutative());
        assert_eq!(q.purity(), Purity::Negative);
        assert!(!q.basic());
        let (i, j, k) = (q.element(0), q.element(1), q.element(2));
        assert_eq!(i.mul(j).unwrap(), *k);
        assert_eq!(j.mul(k).unwrap(), *i);
        assert_eq!(k.mul(i).unwrap(), *j);
        let ijk = i.mul(j).unwrap().mul(k).unwrap();
        assert!(ijk.is_scalar());
        assert_eq!(ijk.sign(), Sign::Minus);
        // ι links the two triples: i = ι·σ₃.
        assert_eq!(imaginary_unit().mul(pauli.element(2)).unwrap(), *i);
    }

    #[test]
    fn pad_extends_ambient() {
        let e = GroupElement::a_at(2, 1).neg();
        let padded = e.pad(5).unwrap();
        assert_eq!(padded.len(), 5);
        assert_eq!(padded.sign(), Sign::Minus);
        assert_eq!(padded.signature(), e.signature());
        assert!(padded.s().get(1) && padded.p().get(1));
        assert!(matches!(e.pad(1), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn element_ordering_is_sign_then_exponents() {
        let id = GroupElement::identity(2);
        assert!(id < id.neg());
        let r0 = GroupElement::r_at(2, 0);
        let r1 = GroupElement::r_at(2, 1);
        assert!(id < r0);
        assert!(r0 < r1);
        assert!(r1 < id.neg());
    }

    #[test]
    fn embed_shifts_coordinates() {
        let a = GroupElement::a_at(2, 1);
        let shifted = a.embed(5, 2).unwrap();
        assert_eq!(shifted.len(), 5);
        assert!(shifted.s().get(3) && shifted.p().get(3));
        assert_eq!(shifted.s().mass(), 1);
        assert!(matches!(a.embed(3, 2), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn commuting_union_keeps_blocks_apart() {
        let b1 = standard_ac_generator(2, 2).unwrap();
        let b2 = standard_ac_generator(3, 0).unwrap();
        let union = commuting_union(&[b1, b2], 2).unwrap();
        assert_eq!(union.n(), 7);
        assert_eq!(union.ambient(), 7);
        assert!(union.basic());
        let ac = union.ac_matrix();
        // Within-block commutators survive, cross-block pairs commute.
        for i in 0..7 {
            for j in 0..7 {
                let same_block = (i < 2 && j < 2) || (2..5).contains(&i) && (2..5).contains(&j);
                if i != j && same_block && i.max(j) < 5 {
                    assert_eq!(ac.c(i, j), Sign::Minus);
                } else if i != j {
                    assert_eq!(ac.c(i, j), Sign::Plus);
                }
            }
        }
        assert_eq!(union.element(5), &GroupElement::r_at(7, 5));
    }

    #[test]
    fn random_basic_generator_is_basic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let gen = random_basic_generator(n, &mut rng);
            assert_eq!(gen.n(), n);
            assert!(gen.basic());
            assert_eq!(gen.enumerate_group().unwrap().len(), 1 << (n + 1));
        }
    }
}
