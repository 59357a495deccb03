//! Crate-wide error type.
//!
//! Every fallible public operation returns [`Error`]. The variants name the
//! violated precondition so a front end can report it verbatim; shape
//! violations in the raw bit kernels (`bits`, `matrix`) are documented panics
//! instead, since they indicate caller bugs rather than bad input data.

use thiserror::Error;

/// Errors reported by the signedalg operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands have different ambient lengths or dimensions.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A scan or enumeration would exceed the configured bound.
    /// See [`crate::bounds`] for the defaults and the override.
    #[error("{what} refused at n = {n}: bound is {max} (raise SIGNEDALG_MAX_N to override)")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    /// The matrix has no inverse mod 2.
    #[error("matrix is not dyadically invertible")]
    NotInvertible,

    /// A square matrix was required.
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// An elementary orthogonal factor needs an even-mass vector.
    #[error("vector has odd mass {mass}; elementary orthogonal factors need even mass")]
    OddMass { mass: usize },

    /// A Gram-Schmidt seed is not pairwise D-orthogonal with odd masses.
    #[error("bad seed: {reason}")]
    BadSeed { reason: String },

    /// The all-ones vector lies in the span of the seed, so no orthogonal
    /// completion exists.
    #[error("all-ones vector lies in the seed span; no D-orthogonal completion exists")]
    FlatlineInSpan,

    /// The matrix is not D-orthogonal (P^T P != I mod 2).
    #[error("matrix is not D-orthogonal")]
    NotOrthogonal,

    /// The Gram matrix P^T P does not permute into the canonical
    /// [[I, ones], [ones, complement-of-I]] block pattern.
    #[error("Gram matrix does not match the canonical block pattern")]
    MalformedGram,

    /// The generator is not basic: some nontrivial power collapses to +-1.
    #[error("generator is not basic")]
    NotBasic,

    /// The operation needs a pairwise anticommuting generator.
    #[error("generator is not anticommutative (offending pair {i}, {j})")]
    NotAnticommutative { i: usize, j: usize },

    /// The operation needs an even-size generator.
    #[error("generator has odd size {n}; this operation needs an even size")]
    OddSize { n: usize },

    /// The element already lies in the group generated by the given set.
    #[error("element is not independent of the generator")]
    NotIndependent,

    /// The generator does not have chain commutation structure
    /// (neighbors anticommute, all other pairs commute).
    #[error("not a chain: pair ({i}, {j}) breaks the neighbor pattern")]
    NotAChain { i: usize, j: usize },

    /// The generator is not a commuting sequence of anticommuting pairs
    /// (plus at most one central leftover).
    #[error("not a doubleton chain: {reason}")]
    NotADoubletonChain { reason: String },

    /// An argument fell outside its documented range.
    #[error("{what} = {value} out of range (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    /// Parallel block data with inconsistent lengths.
    #[error("inconsistent lengths: {what}: {left} vs {right}")]
    InconsistentLengths {
        what: &'static str,
        left: usize,
        right: usize,
    },

    /// Text input failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Arithmetic would overflow the 128-bit counters.
    #[error("{what} overflows 128-bit arithmetic at n = {n}")]
    Overflow { what: &'static str, n: usize },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
