//! Signed groups over double 0-1 logic, with a bit-packed mod-2 matrix toolkit.
//!
//! The crate has two halves that feed each other:
//!
//! - a linear-algebra half over GF(2): packed vectors and matrices, rank and
//!   inversion, D-orthogonal factorization, and exhaustive counting oracles;
//! - an algebraic half: group elements encoded as a sign and two exponent
//!   vectors, generator sets and their commutation structure, replacement
//!   moves that re-cut a generator into anticommuting and commuting blocks,
//!   and an integer matrix representation.
//!
//! Every closed-form count exposed here is paired with a brute-force
//! enumeration at small sizes; the test suite treats the enumeration as the
//! ground truth and the formula as the claim under test.

// Parity conditions are written `x % 2 == 0` so they read uniformly next to
// the `% 2 == 1` and `% 4` forms used throughout; one idiom beats two.
#![allow(clippy::manual_is_multiple_of)]

pub mod bits;
pub mod bounds;
pub mod invert;
pub mod error;
pub mod group;
pub mod matrix;
pub mod ortho;
pub mod rep;
pub mod replace;

pub use bits::BitVec;
pub use error::{Error, Result};
pub use matrix::BitMatrix;
