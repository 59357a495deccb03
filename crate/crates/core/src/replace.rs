//! Generator replacements: matrix-induced substitutions, chain and
//! doubleton conversions, partition into commuting blocks, signature
//! classification, anticommutant-count closed forms, and the dual
//! (two commuting families) constructions.
//!
//! A replacement swaps a generator for another list of powers of its
//! elements that generates the same group. Replacements are exactly the
//! dyadically invertible exponent matrices, so every operation here
//! either takes such a matrix or builds one implicitly; tests pin the
//! group-preservation property by enumerating both sides.
//!
//! Counting again runs in two lanes. Closed forms carry an
//! `_as_printed` twin wherever the stated constant disagrees with
//! enumeration at small sizes, and reports keep both values.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::group::{Generator, GroupElement, Sign};
use crate::invert;
use crate::matrix::BitMatrix;

fn pow2(k: usize, what: &'static str, n: usize) -> Result<u128> {
    u32::try_from(k)
        .ok()
        .filter(|k| *k < 128)
        .and_then(|k| 1u128.checked_shl(k))
        .ok_or(Error::Overflow { what, n })
}

/// Tag for one block of a partitioned generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Commutative,
    Anticommutative,
}

/// A generator replaced into pairwise-commuting blocks.
///
/// `blocks[0]` is always the commutative block (possibly empty) and
/// carries `kinds[0] == Commutative`; the remaining blocks are
/// anticommutative of size at least 2. Indices refer to `replaced`,
/// which generates the same group as the input it came from.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub replaced: Generator,
    pub blocks: Vec<Vec<usize>>,
    pub kinds: Vec<BlockKind>,
}

impl PartitionReport {
    /// Sizes of the anticommutative blocks, in report order.
    pub fn anticommutative_sizes(&self) -> Vec<usize> {
        self.blocks.iter().skip(1).map(Vec::len).collect()
    }

    /// Size of the commutative block.
    pub fn commutative_size(&self) -> usize {
        self.blocks[0].len()
    }
}

/// Outcome of the anticommutant reduction: the loose element either
/// joins the block or ends up commuting with all of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionCase {
    Absorbed,
    Commuting,
}

/// A signature-class or taxonomy label.
///
/// `label` is the class name keyed by `(n mod 4, N₊ mod 4)`; `taxon`
/// is only set by the doubleton classifier and holds the
/// parity-reduced `<p,q>` or `<p,q;s>` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassLabel {
    pub n: usize,
    pub residue: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub taxon: Option<String>,
}

/// Replaces each element by the power selected by the matching column
/// of `p`. Requires `p` square of size `gen.n()` and dyadically
/// invertible; anything else fails to be a replacement at all.
pub fn transform(gen: &Generator, p: &BitMatrix) -> Result<Generator> {
    p.require_square()?;
    if p.nrows() != gen.n() {
        return Err(Error::LengthMismatch { left: p.nrows(), right: gen.n() });
    }
    if !invert::is_dyadically_invertible(p)? {
        return Err(Error::NotInvertible);
    }
    let elements: Result<Vec<GroupElement>> = (0..p.ncols()).map(|j| gen.power(&p.col(j))).collect();
    Generator::new(elements?)
}

/// Keeps element `i` and multiplies every other element by it (in
/// index order, so slot j becomes the product of slots min(i,j) and
/// max(i,j)). Anticommutativity survives, and when element i has
/// positive signature the signature split (m, k) moves to (k+1, m−1).
pub fn multiply_replacement(gen: &Generator, i: usize) -> Result<Generator> {
    let n = gen.n();
    if i >= n {
        return Err(Error::OutOfRange { what: "element index", value: i, min: 0, max: n.saturating_sub(1) });
    }
    let mut p = BitMatrix::identity(n);
    for j in 0..n {
        if j != i {
            p.set(i, j, true);
        }
    }
    transform(gen, &p)
}

/// Turns a chain (adjacent elements anticommute, distant ones commute)
/// into a fully anticommutative generator via prefix products
/// `e_k = u_1 ⋯ u_k`.
pub fn chain_to_ac(u: &Generator) -> Result<Generator> {
    let ac = u.ac_matrix();
    for i in 0..u.n() {
        for j in (i + 1)..u.n() {
            let want_anti = j == i + 1;
            if (ac.c(i, j) == Sign::Minus) != want_anti {
                return Err(Error::NotAChain { i, j });
            }
        }
    }
    let mut elements = Vec::with_capacity(u.n());
    let mut prefix = GroupElement::identity(u.ambient());
    for e in u.elements() {
        prefix = prefix.mul(e)?;
        elements.push(prefix.clone());
    }
    Generator::new(elements)
}

/// Inverse of [`chain_to_ac`]: consecutive quotients `u_k = e_{k−1} e_k`
/// of a fully anticommutative generator form a chain. The roundtrip
/// reproduces the original elements up to sign (the quotient picks up
/// the signature of the prefix), so the generated group is unchanged.
pub fn ac_to_chain(e: &Generator) -> Result<Generator> {
    require_anticommutative(e)?;
    let mut elements = Vec::with_capacity(e.n());
    for k in 0..e.n() {
        if k == 0 {
            elements.push(e.element(0).clone());
        } else {
            elements.push(e.element(k - 1).mul(e.element(k))?);
        }
    }
    Generator::new(elements)
}

/// Shared body of the doubleton conversions: slot k is multiplied by
/// the product of the elements before its own pair,
/// `new_k = (e_1 ⋯ e_{2⌊k/2⌋}) e_k`. Applying it to an anticommutative
/// generator yields commuting doubletons; applying it to commuting
/// doubletons yields an anticommutative generator. The two directions
/// differ only in what they validate.
fn prefix_twist(gen: &Generator) -> Result<Generator> {
    let mut elements = Vec::with_capacity(gen.n());
    let mut prefix = GroupElement::identity(gen.ambient());
    for (k, e) in gen.elements().iter().enumerate() {
        if k % 2 == 0 && k > 0 {
            prefix = prefix.mul(gen.element(k - 2))?.mul(gen.element(k - 1))?;
        }
        elements.push(prefix.mul(e)?);
    }
    Generator::new(elements)
}

/// Converts an even-size anticommutative generator into a chain of
/// pairwise-commuting anticommutative doubletons.
pub fn ac_to_doubletons(e: &Generator) -> Result<Generator> {
    if e.n() % 2 == 1 {
        return Err(Error::OddSize { n: e.n() });
    }
    require_anticommutative(e)?;
    prefix_twist(e)
}

/// Converts a chain of commuting anticommutative doubletons into a
/// single anticommutative generator. Self-inverse against
/// [`ac_to_doubletons`] up to element signs.
pub fn doubletons_to_ac(d: &Generator) -> Result<Generator> {
    require_doubleton_chain(d)?;
    prefix_twist(d)
}

fn require_anticommutative(gen: &Generator) -> Result<()> {
    let ac = gen.ac_matrix();
    for i in 0..gen.n() {
        for j in (i + 1)..gen.n() {
            if ac.c(i, j) == Sign::Plus {
                return Err(Error::NotAnticommutative { i, j });
            }
        }
    }
    Ok(())
}

fn require_doubleton_chain(gen: &Generator) -> Result<()> {
    if gen.n() % 2 == 1 {
        return Err(Error::OddSize { n: gen.n() });
    }
    let ac = gen.ac_matrix();
    for i in 0..gen.n() {
        for j in (i + 1)..gen.n() {
            let within = j == i + 1 && i % 2 == 0;
            let anti = ac.c(i, j) == Sign::Minus;
            if within && !anti {
                return Err(Error::NotADoubletonChain {
                    reason: format!("elements {i} and {j} form a doubleton but commute"),
                });
            }
            if !within && anti {
                return Err(Error::NotADoubletonChain {
                    reason: format!("elements {i} and {j} lie in different doubletons but anticommute"),
                });
            }
        }
    }
    Ok(())
}

/// Reduces a loose element against an anticommutative block.
///
/// Let F_a be the elements of `f` anticommuting with `g`. While
/// |F_a| ≥ 2, replace `f` by `f(f₀)` (multiply through by the first
/// offender) and `g` by `f₀f₁g`; each step shrinks |F_a| by exactly 2.
/// An odd |F_a| therefore ends at 1, where one more multiply-through
/// makes `g` anticommute with the whole block: the returned generator
/// is the block with `g` appended ([`ReductionCase::Absorbed`]). An
/// even |F_a| ends at 0 with `g` commuting with the whole block
/// ([`ReductionCase::Commuting`]); the returned generator is the block
/// alone and the returned element is the final `g`.
pub fn reduce_anticommutants(
    f: &Generator,
    g: &GroupElement,
) -> Result<(Generator, GroupElement, ReductionCase)> {
    require_anticommutative(f)?;
    if g.len() != f.ambient() {
        return Err(Error::LengthMismatch { left: g.len(), right: f.ambient() });
    }
    let mut combined = f.elements().to_vec();
    combined.push(g.clone());
    if !Generator::new(combined)?.basic() {
        return Err(Error::NotIndependent);
    }

    let mut f = f.clone();
    let mut g = g.clone();
    loop {
        let offenders: Vec<usize> = (0..f.n())
            .filter(|&i| f.element(i).commutator_sign(&g).map(|c| c == Sign::Minus).unwrap_or(false))
            .collect();
        match offenders.len() {
            0 => return Ok((f, g, ReductionCase::Commuting)),
            1 => {
                let replaced = multiply_replacement(&f, offenders[0])?;
                let mut elements = replaced.elements().to_vec();
                elements.push(g.clone());
                return Ok((Generator::new(elements)?, g, ReductionCase::Absorbed));
            }
            _ => {
                let f0 = f.element(offenders[0]).clone();
                let f1 = f.element(offenders[1]).clone();
                f = multiply_replacement(&f, offenders[0])?;
                g = f0.mul(&f1)?.mul(&g)?;
            }
        }
    }
}

fn find_anticommuting_pair(elements: &[GroupElement]) -> Result<Option<(usize, usize)>> {
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            if elements[i].commutator_sign(&elements[j])? == Sign::Minus {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Recursive block extraction: grow one anticommutative block from the
/// lowest anticommuting pair, sweeping the remaining elements through
/// the reduction. An absorption changes the block, so previously
/// settled leftovers are requeued; the loop terminates because the
/// block only ever grows. Leftovers all commute with the finished
/// block and recurse into further blocks.
fn split_blocks(elements: Vec<GroupElement>) -> Result<(Vec<GroupElement>, Vec<Vec<GroupElement>>)> {
    let Some((i, j)) = find_anticommuting_pair(&elements)? else {
        return Ok((elements, Vec::new()));
    };
    let mut block = Generator::new(vec![elements[i].clone(), elements[j].clone()])?;
    let mut queue: VecDeque<GroupElement> = elements
        .into_iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, e)| e)
        .collect();
    let mut leftovers: Vec<GroupElement> = Vec::new();
    while let Some(g) = queue.pop_front() {
        // An element anticommuting with the whole block extends it
        // verbatim; this keeps a fully anticommutative input intact
        // where the parity reduction would rewrite or eject it.
        let mut fully_anti = true;
        for e in block.elements() {
            if e.commutator_sign(&g)? == Sign::Plus {
                fully_anti = false;
                break;
            }
        }
        if fully_anti {
            let mut elements = block.elements().to_vec();
            elements.push(g);
            block = Generator::new(elements)?;
            queue.extend(leftovers.drain(..));
            continue;
        }
        let (replaced, g2, case) = reduce_anticommutants(&block, &g)?;
        block = replaced;
        match case {
            ReductionCase::Absorbed => queue.extend(leftovers.drain(..)),
            ReductionCase::Commuting => leftovers.push(g2),
        }
    }
    let (f0, mut rest) = split_blocks(leftovers)?;
    rest.insert(0, block.elements().to_vec());
    Ok((f0, rest))
}

fn assemble_report(f0: Vec<GroupElement>, ac_blocks: Vec<Vec<GroupElement>>) -> Result<PartitionReport> {
    let mut elements = f0;
    let mut blocks = vec![(0..elements.len()).collect::<Vec<_>>()];
    let mut kinds = vec![BlockKind::Commutative];
    for block in ac_blocks {
        let start = elements.len();
        elements.extend(block);
        blocks.push((start..elements.len()).collect());
        kinds.push(BlockKind::Anticommutative);
    }
    Ok(PartitionReport { replaced: Generator::new(elements)?, blocks, kinds })
}

/// Partitions a basic generator, after replacement, into a commutative
/// block plus pairwise-commuting anticommutative blocks of size ≥ 2.
/// A commutative input comes back as a single commutative block.
pub fn partition_generator(e: &Generator) -> Result<PartitionReport> {
    if !e.basic() {
        return Err(Error::NotIndependent);
    }
    let (f0, ac_blocks) = split_blocks(e.elements().to_vec())?;
    assemble_report(f0, ac_blocks)
}

/// Canonical two-block form: one anticommutative block K of even size
/// equal to the rank of the commutator form, plus a commutative block
/// M. The construction runs a symplectic elimination on the element
/// indices (peel off a hyperbolic pair, sweep it out of the rest),
/// then merges the resulting commuting doubletons into a single block.
/// No even anticommutative block in any replacement can be larger,
/// because an anticommutative block of size b forces rank ≥ b − 1.
pub fn canonical_km(e: &Generator) -> Result<PartitionReport> {
    if !e.basic() {
        return Err(Error::NotIndependent);
    }
    let n = e.n();
    let d = e.ac_matrix().d().clone();
    let anti = |x: &BitVec, y: &BitVec| d.mul_vec(x).overlap_parity(y);

    let mut basis: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
    let mut pairs: Vec<(BitVec, BitVec)> = Vec::new();
    loop {
        let mut found = None;
        'scan: for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if anti(&basis[i], &basis[j]) {
                    found = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((i, j)) = found else { break };
        let vb = basis.remove(j);
        let va = basis.remove(i);
        for w in &mut basis {
            let hit_a = anti(w, &va);
            let hit_b = anti(w, &vb);
            // Sweeping with the partner vector cancels the pairing:
            // the form is alternating, so w ⊕ va kills the vb-overlap
            // and vice versa.
            if hit_b {
                w.xor_assign(&va);
            }
            if hit_a {
                w.xor_assign(&vb);
            }
        }
        pairs.push((va, vb));
    }

    let m_elems: Result<Vec<GroupElement>> = basis.iter().map(|w| e.power(w)).collect();
    let mut doubletons = Vec::with_capacity(2 * pairs.len());
    for (va, vb) in &pairs {
        doubletons.push(e.power(va)?);
        doubletons.push(e.power(vb)?);
    }
    let k_block = if doubletons.is_empty() {
        Vec::new()
    } else {
        doubletons_to_ac(&Generator::new(doubletons)?)?.elements().to_vec()
    };
    let ac_blocks = if k_block.is_empty() { Vec::new() } else { vec![k_block] };
    assemble_report(m_elems?, ac_blocks)
}

/// Toggles the parity of the anticommutative block of a two-block
/// report. Even k with m ≥ 1: the product of K times the first
/// commutative element anticommutes with all of K and joins it,
/// (k, m) → (k+1, m−1). Odd k: the product of all of K commutes with
/// everything and moves to M while K sheds its first element,
/// (k, m) → (k−1, m+1).
pub fn parity_toggle(report: &PartitionReport) -> Result<PartitionReport> {
    let n = report.replaced.n();
    let ac_blocks = report.blocks.len().saturating_sub(1);
    if ac_blocks > 1 {
        return Err(Error::OutOfRange { what: "anticommutative blocks", value: ac_blocks, min: 0, max: 1 });
    }
    let m_idx = &report.blocks[0];
    let empty = Vec::new();
    let k_idx = report.blocks.get(1).unwrap_or(&empty);
    let k = k_idx.len();
    let m = m_idx.len();
    if k == 0 {
        return Err(Error::OutOfRange { what: "anticommutative block size", value: 0, min: 1, max: n });
    }

    let elems = report.replaced.elements();
    let mut k_product = GroupElement::identity(report.replaced.ambient());
    for &i in k_idx {
        k_product = k_product.mul(&elems[i])?;
    }

    let (new_m, new_k): (Vec<GroupElement>, Vec<GroupElement>) = if k % 2 == 0 {
        if m == 0 {
            return Err(Error::OutOfRange { what: "commutative block size", value: 0, min: 1, max: n });
        }
        let m0 = &elems[m_idx[0]];
        let k0 = k_product.mul(m0)?;
        let new_m = m_idx[1..].iter().map(|&i| elems[i].clone()).collect();
        let mut new_k: Vec<GroupElement> = k_idx.iter().map(|&i| elems[i].clone()).collect();
        new_k.push(k0);
        (new_m, new_k)
    } else {
        let mut new_m: Vec<GroupElement> = m_idx.iter().map(|&i| elems[i].clone()).collect();
        new_m.push(k_product);
        let new_k = k_idx[1..].iter().map(|&i| elems[i].clone()).collect();
        (new_m, new_k)
    };
    let ac_blocks = if new_k.is_empty() { Vec::new() } else { vec![new_k] };
    assemble_report(new_m, ac_blocks)
}

/// The class label of a pure anticommutative generator of size n with
/// N₊ positive signatures, per the published two-way (even n) or
/// three-way (odd n) table keyed by (n mod 4, N₊ mod 4).
pub fn classify_signature_type(n: usize, n_plus: usize) -> Result<ClassLabel> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n", value: n, min: 2, max: usize::MAX });
    }
    if n_plus > n {
        return Err(Error::OutOfRange { what: "n_plus", value: n_plus, min: 0, max: n });
    }
    let residue = n % 4;
    let class: &[usize] = match (residue, n_plus % 4) {
        (0, 0 | 1) => &[0, 1],
        (0, _) => &[2, 3],
        (1, 0 | 2) => &[0, 2],
        (1, 1) => &[1],
        (1, _) => &[3],
        (2, 0 | 3) => &[0, 3],
        (2, _) => &[1, 2],
        (3, 0) => &[0],
        (3, 1 | 3) => &[1, 3],
        _ => &[2],
    };
    let list: Vec<String> = class.iter().map(ToString::to_string).collect();
    let label = format!("R_{{{}:{}}}({})", n, residue, list.join(","));
    Ok(ClassLabel { n, residue, label, taxon: None })
}

/// Convenience wrapper: counts positive signatures of an
/// anticommutative generator and classifies the pair (n, N₊).
pub fn classify_generator(gen: &Generator) -> Result<ClassLabel> {
    require_anticommutative(gen)?;
    let n_plus = gen.signatures().iter().filter(|s| **s == Sign::Plus).count();
    classify_signature_type(gen.n(), n_plus)
}

/// The set of signature splits (N₊, N₋) reachable from the given one
/// by the two replacement moves: multiply through by a positive
/// element, (m, k) → (k+1, m−1), and flip four like signatures at
/// once, N₊ → N₊ ± 4. Closure under these moves partitions the splits
/// of n into exactly two classes for even n and three for odd n.
pub fn signature_orbit(n: usize, n_plus: usize) -> Result<BTreeSet<(usize, usize)>> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n", value: n, min: 2, max: usize::MAX });
    }
    if n_plus > n {
        return Err(Error::OutOfRange { what: "n_plus", value: n_plus, min: 0, max: n });
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![(n_plus, n - n_plus)];
    while let Some((p, q)) = stack.pop() {
        if !seen.insert((p, q)) {
            continue;
        }
        if p >= 1 {
            stack.push((q + 1, p - 1));
        }
        if p >= 4 {
            stack.push((p - 4, q + 4));
        }
        if q >= 4 {
            stack.push((p + 4, q - 4));
        }
    }
    Ok(seen)
}

fn purify_doubletons(chain: &[GroupElement]) -> Result<(Vec<GroupElement>, usize, usize)> {
    let mut out = Vec::with_capacity(chain.len());
    let (mut p, mut q) = (0, 0);
    for pair in chain.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        match (a.signature(), b.signature()) {
            (Sign::Plus, Sign::Plus) => {
                p += 1;
                out.push(a.clone());
                out.push(b.clone());
            }
            (Sign::Minus, Sign::Minus) => {
                q += 1;
                out.push(a.clone());
                out.push(b.clone());
            }
            // A mixed doubleton always has a pure positive replacement:
            // the product of an anticommuting pair has signature
            // −σ(a)σ(b) = +, so pairing it with the positive member
            // gives (+, +).
            (Sign::Plus, Sign::Minus) => {
                p += 1;
                out.push(a.clone());
                out.push(a.mul(b)?);
            }
            (Sign::Minus, Sign::Plus) => {
                p += 1;
                out.push(b.clone());
                out.push(b.mul(a)?);
            }
        }
    }
    Ok((out, p, q))
}

/// Classifies a chain of commuting anticommutative doubletons, with an
/// optional commuting leftover element carrying signature `s`.
///
/// Mixed doubletons are first purified, leaving p positive and q
/// negative doubletons with p + q = j. The taxon is the parity-reduced
/// split: `<0,j>` for even p, `<1,j−1>` for odd p, with `;s` appended
/// when a leftover is present; a negative leftover merges all splits
/// into `<0,j;−>`. The label is computed honestly rather than by a
/// second table: the chain is converted to a single anticommutative
/// block (folding the leftover in via the block-product trick when one
/// is present) and the result's signature count is classified.
pub fn classify_doubleton_taxon(chain: &Generator, leftover_sign: Option<Sign>) -> Result<ClassLabel> {
    require_doubleton_chain(chain)?;
    if !chain.basic() {
        return Err(Error::NotIndependent);
    }
    let j = chain.n() / 2;
    let n = chain.n() + usize::from(leftover_sign.is_some());
    if n < 2 {
        return Err(Error::OutOfRange { what: "classified size", value: n, min: 2, max: usize::MAX });
    }
    let (purified, p, _q) = purify_doubletons(chain.elements())?;

    let ac = doubletons_to_ac(&Generator::new(purified)?)?;
    let mut signatures: Vec<Sign> = ac.signatures();
    let taxon = match leftover_sign {
        None => {
            if p % 2 == 0 {
                format!("<0,{j}>")
            } else {
                format!("<1,{}>", j - 1)
            }
        }
        Some(s) => {
            // Fold the leftover into the block: the product of the
            // whole even block times the leftover anticommutes with
            // every block element, giving an odd block of size 2j+1.
            let mut block_product = GroupElement::identity(ac.ambient());
            for e in ac.elements() {
                block_product = block_product.mul(e)?;
            }
            let extra = block_product.signature() * s;
            signatures.push(extra);
            match s {
                Sign::Minus => format!("<0,{j};->"),
                Sign::Plus if p % 2 == 0 => format!("<0,{j};+>"),
                Sign::Plus => format!("<1,{};+>", j - 1),
            }
        }
    };
    let n_plus = signatures.iter().filter(|s| **s == Sign::Plus).count();
    let base = classify_signature_type(n, n_plus)?;
    Ok(ClassLabel { n, residue: n % 4, label: base.label, taxon: Some(taxon) })
}

/// Anticommutant count of a union of pairwise-commuting blocks:
/// `c⁻ = (2^{2n} − ∏ᵢ (2^{2ℓᵢ} − 2cᵢ)) / 2 · 2^{2m}` where block i has
/// ℓᵢ generators and own count cᵢ, n = Σℓᵢ, and m extra commuting
/// generators multiply the count by 4 each.
pub fn ac_count_formula(block_lengths: &[usize], block_counts: &[u128], m_commuting: usize) -> Result<u128> {
    if block_lengths.len() != block_counts.len() {
        return Err(Error::InconsistentLengths {
            what: "block lists",
            left: block_lengths.len(),
            right: block_counts.len(),
        });
    }
    let n: usize = block_lengths.iter().sum();
    let total = pow2(2 * n, "pair count", n)?;
    let mut product: u128 = 1;
    for (&len, &count) in block_lengths.iter().zip(block_counts) {
        let block_total = pow2(2 * len, "block pair count", len)?;
        let doubled = count.checked_mul(2).ok_or(Error::Overflow { what: "block count", n: len })?;
        let term = block_total
            .checked_sub(doubled)
            .ok_or(Error::Overflow { what: "block count exceeds block pairs", n: len })?;
        product = product
            .checked_mul(term)
            .ok_or(Error::Overflow { what: "block product", n })?;
    }
    let anticommuting = total
        .checked_sub(product)
        .ok_or(Error::Overflow { what: "block product exceeds pair count", n })?
        / 2;
    anticommuting
        .checked_mul(pow2(2 * m_commuting, "commuting factor", m_commuting)?)
        .ok_or(Error::Overflow { what: "anticommutant count", n })
}

/// Anticommutant count of a pure anticommutative generator of even
/// size n: `2^{n−1} (2ⁿ − 1)`.
pub fn even_ac_count(n: usize) -> Result<u128> {
    if n == 0 {
        return Ok(0);
    }
    pow2(n - 1, "even count", n)?
        .checked_mul(pow2(n, "even count", n)? - 1)
        .ok_or(Error::Overflow { what: "even count", n })
}

/// Anticommutant count of a pure anticommutative generator of odd
/// size n as enumeration gives it: `2ⁿ (2^{n−1} − 1)`.
pub fn odd_ac_count_corrected(n: usize) -> Result<u128> {
    if n == 0 {
        return Ok(0);
    }
    pow2(n, "odd count", n)?
        .checked_mul(pow2(n - 1, "odd count", n)? - 1)
        .ok_or(Error::Overflow { what: "odd count", n })
}

/// The odd-size count exactly as stated, `2^{n−2} (2^{n−1} − 1)`; it
/// disagrees with enumeration by a factor of 4 at every odd n ≥ 3 and
/// is kept for discrepancy reporting only.
pub fn odd_ac_count_as_printed(n: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n", value: n, min: 2, max: usize::MAX });
    }
    pow2(n - 2, "odd count as printed", n)?
        .checked_mul(pow2(n - 1, "odd count as printed", n)? - 1)
        .ok_or(Error::Overflow { what: "odd count as printed", n })
}

/// Anticommutant count of the two-block form: an anticommutative block
/// of even size 2j plus n − 2j commuting generators. Derived from
/// [`ac_count_formula`]: `2^{2n−2j−1} (2^{2j} − 1)`.
pub fn km_count_corrected(n: usize, j: usize) -> Result<u128> {
    if 2 * j > n {
        return Err(Error::OutOfRange { what: "j", value: j, min: 0, max: n / 2 });
    }
    if j == 0 {
        return Ok(0);
    }
    pow2(2 * n - 2 * j - 1, "two-block count", n)?
        .checked_mul(pow2(2 * j, "two-block count", n)? - 1)
        .ok_or(Error::Overflow { what: "two-block count", n })
}

/// The two-block count exactly as stated, `2^{2n−1} (2^j − 1)`; it
/// already fails at n = 2, j = 1 (8 against an enumerated 6) and is
/// kept for discrepancy reporting only.
pub fn km_count_as_printed(n: usize, j: usize) -> Result<u128> {
    if 2 * j > n {
        return Err(Error::OutOfRange { what: "j", value: j, min: 0, max: n / 2 });
    }
    pow2(2 * n - 1, "two-block count as printed", n)?
        .checked_mul(pow2(j, "two-block count as printed", n)? - 1)
        .ok_or(Error::Overflow { what: "two-block count as printed", n })
}

fn dual_base_pair(ambient: usize, s1: Sign, s2: Sign) -> (GroupElement, GroupElement) {
    match (s1, s2) {
        (Sign::Plus, Sign::Plus) => (GroupElement::r_at(ambient, 0), GroupElement::s_at(ambient, 0)),
        (Sign::Plus, Sign::Minus) => (GroupElement::r_at(ambient, 0), GroupElement::a_at(ambient, 0)),
        (Sign::Minus, Sign::Plus) => (GroupElement::a_at(ambient, 0), GroupElement::r_at(ambient, 0)),
        (Sign::Minus, Sign::Minus) => {
            // Both negative needs a quaternion-style pair, which takes
            // two coordinates.
            let mut p1 = BitVec::zeros(ambient);
            p1.set(0, true);
            p1.set(1, true);
            let i = GroupElement::new(Sign::Plus, BitVec::unit(ambient, 0), p1).unwrap();
            let j = GroupElement::new(Sign::Plus, BitVec::unit(ambient, 1), BitVec::unit(ambient, 1)).unwrap();
            (i, j)
        }
    }
}

/// Builds two internally commutative families F (size i) and G
/// (size j) that anticommute with each other, following one of three
/// recipes. All recipes start from an anticommuting pair e₁, e₂ and
/// commuting single-coordinate elements d₁, d₂, …
///
/// Recipe 1 (ambient i+j−1): F = {e₁, e₁d₁, …, e₁d_{i−1}},
/// G = {e₁e₂d_{i−1}, …, e₁e₂d_{N−2}} with d₀ read as the identity; F is
/// pure of signature σ(e₁) and G pure of −σ(e₁)σ(e₂).
///
/// Recipe 2 (sizes i+1 and j+1, ambient N = i+j+2): uses growing piles
/// t_l = d₁⋯d_l, F = {e₁} ∪ e₁{t₁…t_i}, G = {e₂} ∪ e₂{t_{i+1}…t_{N−2}};
/// `signatures` selects (σ(e₁), σ(e₂)) and the families are pure of
/// those signatures.
///
/// Recipe 3 (ambient i+j−1): σ(e₁) = +, σ(e₂) = − fixed;
/// F = {e₁e₂} ∪ {e₁e₂d_p} with the d-signatures taken from
/// `signatures` (length i−1), making F arbitrarily mixed, while
/// G = {e₂} ∪ {e₂d_q} stays pure negative.
pub fn dual_decomposition(
    recipe: u8,
    i: usize,
    j: usize,
    signatures: Option<&[Sign]>,
) -> Result<(Generator, Generator)> {
    if !(1..=3).contains(&recipe) {
        return Err(Error::OutOfRange { what: "recipe", value: recipe as usize, min: 1, max: 3 });
    }
    if i < 1 {
        return Err(Error::OutOfRange { what: "i", value: i, min: 1, max: usize::MAX });
    }
    if j < 1 {
        return Err(Error::OutOfRange { what: "j", value: j, min: 1, max: usize::MAX });
    }
    match recipe {
        1 => {
            if signatures.is_some_and(|s| !s.is_empty()) {
                return Err(Error::InconsistentLengths {
                    what: "recipe-1 signatures",
                    left: signatures.unwrap().len(),
                    right: 0,
                });
            }
            let n = i + j;
            let ambient = n - 1;
            let e1 = GroupElement::r_at(ambient, 0);
            let e2 = GroupElement::s_at(ambient, 0);
            let d = |p: usize| -> GroupElement {
                if p == 0 {
                    GroupElement::identity(ambient)
                } else {
                    GroupElement::r_at(ambient, p)
                }
            };
            let mut f = vec![e1.clone()];
            for p in 1..i {
                f.push(e1.mul(&d(p))?);
            }
            let e12 = e1.mul(&e2)?;
            let mut g = Vec::with_capacity(j);
            for q in (i - 1)..=(n - 2) {
                g.push(e12.mul(&d(q))?);
            }
            Ok((Generator::new(f)?, Generator::new(g)?))
        }
        2 => {
            let n = i + j + 2;
            let (s1, s2) = match signatures {
                None => (Sign::Plus, Sign::Plus),
                Some(sl) if sl.len() == 2 => (sl[0], sl[1]),
                Some(sl) => {
                    return Err(Error::InconsistentLengths {
                        what: "recipe-2 signatures",
                        left: sl.len(),
                        right: 2,
                    })
                }
            };
            let (e1, e2) = dual_base_pair(n, s1, s2);
            // t_l multiplies the first l commuting singles, which live
            // on coordinates 2..=l+1.
            let pile = |l: usize| -> GroupElement {
                let mut s = BitVec::zeros(n);
                for c in 2..=(l + 1) {
                    s.set(c, true);
                }
                GroupElement::new(Sign::Plus, s, BitVec::zeros(n)).unwrap()
            };
            let mut f = vec![e1.clone()];
            for l in 1..=i {
                f.push(e1.mul(&pile(l))?);
            }
            let mut g = vec![e2.clone()];
            for l in (i + 1)..=(n - 2) {
                g.push(e2.mul(&pile(l))?);
            }
            Ok((Generator::new(f)?, Generator::new(g)?))
        }
        _ => {
            let n = i + j;
            let ambient = n - 1;
            let signs: Vec<Sign> = match signatures {
                None => vec![Sign::Plus; i - 1],
                Some(sl) if sl.len() == i - 1 => sl.to_vec(),
                Some(sl) => {
                    return Err(Error::InconsistentLengths {
                        what: "recipe-3 signatures",
                        left: sl.len(),
                        right: i - 1,
                    })
                }
            };
            let e1 = GroupElement::r_at(ambient, 0);
            let e2 = GroupElement::a_at(ambient, 0);
            let e12 = e1.mul(&e2)?;
            let mut f = vec![e12.clone()];
            for (p, sign) in (1..i).zip(&signs) {
                let d = match sign {
                    Sign::Plus => GroupElement::r_at(ambient, p),
                    Sign::Minus => GroupElement::a_at(ambient, p),
                };
                f.push(e12.mul(&d)?);
            }
            let mut g = vec![e2.clone()];
            for q in i..=(n - 2) {
                g.push(e2.mul(&GroupElement::r_at(ambient, q))?);
            }
            Ok((Generator::new(f)?, Generator::new(g)?))
        }
    }
}

/// Probability that some element of a random basic generator of size n
/// commutes with all later ones, as (closed form, Monte Carlo
/// estimate). The closed form is `1 − ∏_{k=1}^{n−1} (1 − 2^{−k})`; the
/// estimate draws `samples` uniformly random strict-upper commutator
/// patterns from a seeded generator and counts patterns with an
/// all-zero strict-upper row among the first n − 1.
pub fn commutant_probability(n: usize, samples: u64, seed: u64) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::OutOfRange { what: "n", value: n, min: 2, max: usize::MAX });
    }
    if samples == 0 {
        return Err(Error::OutOfRange { what: "samples", value: 0, min: 1, max: usize::MAX });
    }
    let closed: f64 = 1.0 - (1..n).map(|k| 1.0 - 0.5f64.powi(k as i32)).product::<f64>();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row_is_zero = |width: usize| -> bool {
        let mut rem = width;
        let mut zero = true;
        while rem > 0 {
            let take = rem.min(64);
            let mask = if take == 64 { u64::MAX } else { (1u64 << take) - 1 };
            if rng.gen::<u64>() & mask != 0 {
                zero = false;
            }
            rem -= take;
        }
        zero
    };
    let mut hits = 0u64;
    for _ in 0..samples {
        let mut hit = false;
        for k in 0..(n - 1) {
            if row_is_zero(n - 1 - k) {
                hit = true;
            }
        }
        if hit {
            hits += 1;
        }
    }
    Ok((closed, hits as f64 / samples as f64))
}
