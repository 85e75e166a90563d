//! Process-wide size limits for exhaustive operations.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

/// Largest ground set any partition-indexed table may be built for.
/// Restricted growth strings are packed four bits per entry into a `u64`.
pub const HARD_MAX_N: usize = 16;

pub const DEFAULT_MAX_N: usize = 12;
pub const DEFAULT_SUBSET_EDGE_LIMIT: usize = 22;

static MAX_N: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_N);
static SUBSET_EDGE_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_SUBSET_EDGE_LIMIT);

/// Current exhaustive ground-set limit (default 12).
pub fn max_n() -> usize {
    MAX_N.load(Ordering::Relaxed)
}

pub fn set_max_n(n: usize) -> Result<()> {
    if n == 0 || n > HARD_MAX_N {
        return Err(Error::domain(format!(
            "exhaustive limit must lie in 1..={HARD_MAX_N}, got {n}"
        )));
    }
    MAX_N.store(n, Ordering::Relaxed);
    Ok(())
}

/// Largest edge count accepted by the 2^|E| subset expansion.
pub fn subset_edge_limit() -> usize {
    SUBSET_EDGE_LIMIT.load(Ordering::Relaxed)
}

pub fn set_subset_edge_limit(m: usize) -> Result<()> {
    if m > 40 {
        return Err(Error::domain(format!(
            "subset edge limit must be at most 40, got {m}"
        )));
    }
    SUBSET_EDGE_LIMIT.store(m, Ordering::Relaxed);
    Ok(())
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    let max = max_n();
    if n > max {
        return Err(Error::Resource {
            limit: "max_n",
            value: n,
            max,
        });
    }
    Ok(())
}
