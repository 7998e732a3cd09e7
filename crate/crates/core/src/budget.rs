use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits for the exponential parts of the library.
///
/// Structural fast paths (trees, unicyclic graphs, bipartite matching) ignore
/// these limits; only exhaustive searches consult them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest graph for which maximum independent sets or maximum matchings are enumerated.
    pub max_enum_n: usize,
    /// Largest component handed to the branch-and-bound independence solver.
    pub max_bnb_n: usize,
    /// Largest graph for the 2^n subset sweep behind critical sets.
    pub max_subset_n: usize,
    /// Maximum number of maximum matchings collected before giving up.
    pub matching_limit: usize,
    /// Largest order for isomorphism-deduplicated enumeration.
    pub max_dedupe_n: usize,
    /// Largest order for labeled (non-deduplicated) enumeration.
    pub max_labeled_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enum_n: 20,
            max_bnb_n: 40,
            max_subset_n: 20,
            matching_limit: 1_000_000,
            max_dedupe_n: 10,
            max_labeled_n: 12,
        }
    }
}

/// Bitmask searches store vertex sets in a `u64`.
pub(crate) const MASK_BITS: usize = 64;

pub(crate) fn ensure(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::BudgetExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

/// Like [`ensure`], but also refuses anything that does not fit a `u64` mask.
pub(crate) fn ensure_mask(what: &'static str, size: usize, limit: usize) -> Result<()> {
    ensure(what, size, limit.min(MASK_BITS))
}
