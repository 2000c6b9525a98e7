use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::image_ranks;
use crate::error::{Error, Result};
use crate::machine::sort_perm;
use crate::patterns::PatternSet;
use crate::perm::Perm;

/// `s_T` is a bijection iff the reduced set is closed under swapping the
/// first two letters of each pattern. Non-reduced input is reduced first,
/// which does not change the map.
pub fn bijectivity_criterion(patterns: &PatternSet) -> bool {
    let reduced = patterns.reduce();
    let closed = reduced.iter().all(|sigma| sigma.hat().is_ok_and(|h| reduced.contains_pattern(&h)));
    closed
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Injectivity {
    Injective,
    /// Two distinct inputs with the same image; `first < second`.
    Collision {
        first: Perm,
        second: Perm,
        image: Perm,
    },
}

impl Injectivity {
    pub fn is_injective(&self) -> bool {
        matches!(self, Injectivity::Injective)
    }
}

/// Exhaustive injectivity check of `s_T` on `S_n`. The reported collision is
/// the one whose larger member comes first in lexicographic order.
pub fn verify_bijective(patterns: &PatternSet, n: usize) -> Result<Injectivity> {
    let images = image_ranks(patterns, n)?;
    let mut owner: Vec<Option<usize>> = vec![None; images.len()];
    for (r, &img) in images.iter().enumerate() {
        if let Some(first) = owner[img] {
            return Ok(Injectivity::Collision {
                first: Perm::unrank(n, first),
                second: Perm::unrank(n, r),
                image: Perm::unrank(n, img),
            });
        }
        owner[img] = Some(r);
    }
    Ok(Injectivity::Injective)
}

/// `r ∘ s_T ∘ r`, the inverse of `s_T` when it is a bijection.
pub fn inverse_sort(p: &Perm, patterns: &PatternSet) -> Result<Perm> {
    if !bijectivity_criterion(patterns) {
        return Err(Error::NotBijective(patterns.to_string()));
    }
    Ok(sort_perm(&p.reversed(), patterns).reversed())
}

/// `|s_T(S_n)|`.
pub fn image_size(patterns: &PatternSet, n: usize) -> Result<usize> {
    let mut images = image_ranks(patterns, n)?;
    images.par_sort_unstable();
    images.dedup();
    Ok(images.len())
}
