//! Size bounds for brute-force scans.
//!
//! The enumeration oracles are desk-scale by design: they refuse inputs whose
//! cost would explode instead of silently churning. Each bound has a
//! compile-time default and can be raised (never lowered) through the
//! `SIGNEDALG_MAX_N` environment variable, read once per process.
//!
//! | scan                                   | default | cost shape |
//! |----------------------------------------|---------|------------|
//! | group enumeration (2^(n+1) elements)   | 20      | 2^n        |
//! | ordered pair scans (4^n pairs)         | 10      | 4^n        |
//! | exhaustive matrix scans (2^(n^2))      | 4       | 2^(n^2)    |

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default cap for 2^n-style group enumerations.
pub const ENUMERATION_MAX_N: usize = 20;
/// Default cap for 4^n-style ordered pair scans.
pub const PAIR_SCAN_MAX_N: usize = 10;
/// Default cap for 2^(n^2)-style whole-matrix-space scans.
pub const MATRIX_SCAN_MAX_N: usize = 4;

fn env_override() -> Option<usize> {
    static OVERRIDE: OnceLock<Option<usize>> = OnceLock::new();
    *OVERRIDE.get_or_init(|| {
        std::env::var("SIGNEDALG_MAX_N")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
    })
}

/// Effective bound for a given default: the default, or `SIGNEDALG_MAX_N`
/// when that is set and larger.
#[must_use]
pub fn effective(default: usize) -> usize {
    match env_override() {
        Some(raised) if raised > default => raised,
        _ => default,
    }
}

/// Checks `n` against a bound, naming the scan in the error.
pub fn check(what: &'static str, n: usize, default: usize) -> Result<()> {
    let max = effective(default);
    if n > max {
        Err(Error::TooLarge { what, n, max })
    } else {
        Ok(())
    }
}
