//! Global behaviour of `s_T` as a map on `S_n`.
//!
//! Every sweep here enumerates `S_n` by lexicographic rank and fans out over
//! rayon; results are merged in rank order so output never depends on the
//! number of worker threads.

mod bijection;
mod fertility;
mod orbits;
mod table;

pub use bijection::*;
pub use fertility::*;
pub use orbits::*;
pub use table::*;

use rayon::prelude::*;

use crate::error::Result;
use crate::machine::sort_perm;
use crate::patterns::PatternSet;
use crate::perm::{check_size, factorial, Perm};

/// Ranks of `s_T(p)` for every `p` in `S_n`, indexed by the rank of `p`.
pub(crate) fn image_ranks(patterns: &PatternSet, n: usize) -> Result<Vec<usize>> {
    check_size(n)?;
    Ok((0..factorial(n)).into_par_iter().map(|r| sort_perm(&Perm::unrank(n, r), patterns).rank()).collect())
}

/// First permutation of `S_n` (in lexicographic order) failing `check`.
pub(crate) fn find_first<F>(n: usize, check: F) -> Result<Option<Perm>>
where
    F: Fn(&Perm) -> bool + Sync,
{
    check_size(n)?;
    Ok((0..factorial(n)).into_par_iter().map(|r| Perm::unrank(n, r)).find_first(|p| !check(p)))
}
