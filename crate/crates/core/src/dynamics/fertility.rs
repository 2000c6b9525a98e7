use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{find_first, image_ranks};
use crate::error::{Error, Result};
use crate::machine::{self, legal_movement_sequences, sort_perm};
use crate::patterns::PatternSet;
use crate::perm::{catalan, check_size, enumerate_permutations, Letter, LiteralLetter, LiteralWord, Perm};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreimageStrategy {
    /// Reconstruct one candidate per legal movement sequence, keep the ones
    /// that really sort to the target.
    #[default]
    MovementSequences,
    /// Sort every permutation of the same length.
    BruteForce,
}

/// `C_{n-k+2}`, clamped to `C_0` when `n < k - 2`.
pub fn fertility_bound(patterns: &PatternSet, n: usize) -> Result<u64> {
    catalan(n - machine::forced_steps(n, patterns))
}

pub fn preimages(target: &Perm, patterns: &PatternSet) -> Result<Vec<Perm>> {
    preimages_with(target, patterns, PreimageStrategy::default())
}

/// `s_T^{-1}(target)` in lexicographic order.
pub fn preimages_with(target: &Perm, patterns: &PatternSet, strategy: PreimageStrategy) -> Result<Vec<Perm>> {
    let n = target.len();
    check_size(n)?;
    match strategy {
        PreimageStrategy::MovementSequences => {
            let mut found = BTreeSet::new();
            for m in legal_movement_sequences(n, patterns) {
                let candidate = machine::reconstruct_input(target, &m)?;
                let candidate = Perm::try_from(candidate)?;
                if &sort_perm(&candidate, patterns) == target {
                    found.insert(candidate);
                }
            }
            Ok(found.into_iter().collect())
        }
        PreimageStrategy::BruteForce => {
            Ok(enumerate_permutations(n)?.filter(|p| &sort_perm(p, patterns) == target).collect())
        }
    }
}

/// Brute-force preimage classes of every `γ ∈ S_n`, indexed by the rank of
/// `γ`, each in lexicographic order. One forward sort per permutation.
pub fn all_preimages(patterns: &PatternSet, n: usize) -> Result<Vec<Vec<Perm>>> {
    let images = image_ranks(patterns, n)?;
    let mut classes = vec![Vec::new(); images.len()];
    for (r, img) in images.into_iter().enumerate() {
        classes[img].push(Perm::unrank(n, r));
    }
    Ok(classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FertilityReport {
    pub patterns: PatternSet,
    pub n: usize,
    pub max_count: u64,
    /// Every permutation with `max_count` preimages, in lexicographic order.
    pub witnesses: Vec<Perm>,
    pub bound: u64,
}

/// Largest preimage size over `S_n`, from one pass that histograms images.
pub fn fertility_max(patterns: &PatternSet, n: usize) -> Result<FertilityReport> {
    let images = image_ranks(patterns, n)?;
    let mut counts = vec![0u64; images.len()];
    for img in images {
        counts[img] += 1;
    }
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let witnesses =
        counts.iter().enumerate().filter(|&(_, &c)| c == max_count).map(|(r, _)| Perm::unrank(n, r)).collect();
    Ok(FertilityReport { patterns: patterns.clone(), n, max_count, witnesses, bound: fertility_bound(patterns, n)? })
}

fn check_consecutive_head(sigma: &Perm) -> Result<()> {
    if sigma.len() < 3 {
        return Err(Error::PatternTooShortForKappa(sigma.to_string()));
    }
    if sigma[0].abs_diff(sigma[1]) != 1 {
        return Err(Error::NotConsecutive(sigma.to_string()));
    }
    Ok(())
}

/// The literal word pinning the bottom `k - 2` stack letters in the extremal
/// construction: `σ(i+2)` when below `σ(1)`, else `(k + 1 - σ(i+2))^c`.
pub fn kappa(sigma: &Perm) -> Result<LiteralWord> {
    check_consecutive_head(sigma)?;
    let k = sigma.len() as Letter;
    Ok(LiteralWord(
        sigma[2..]
            .iter()
            .map(|&x| if x < sigma[0] { LiteralLetter::Plain(x) } else { LiteralLetter::Complement(k + 1 - x) })
            .collect(),
    ))
}

fn literal_values(sigma: &Perm, n: usize) -> Result<(Vec<Letter>, Vec<Letter>)> {
    let k = sigma.len();
    if n < k {
        return Err(Error::LengthBelowPattern { n, k });
    }
    check_size(n)?;
    let pinned = kappa(sigma)?.resolve(n).expect("kappa letters lie in 1..=k-1");
    let free: Vec<Letter> = (1..=n as Letter).filter(|x| !pinned.contains(x)).collect();
    Ok((pinned, free))
}

/// The permutation of length `n` with `C_{n-k+2}` preimages under `s_{σ}`:
/// the remaining letters in increasing (`σ(1) > σ(2)`) or decreasing order,
/// followed by `κ(σ)`.
pub fn mu(sigma: &Perm, n: usize) -> Result<Perm> {
    let (pinned, mut free) = literal_values(sigma, n)?;
    if sigma[0] < sigma[1] {
        free.reverse();
    }
    free.extend(pinned);
    Ok(Perm::from_vec_unchecked(free))
}

/// The preimage family of `μ(σ)`: `κ(σ)^r` followed by a 231-avoiding
/// (`σ(1) > σ(2)`) or 213-avoiding arrangement of the remaining letters.
pub fn p_set(sigma: &Perm, n: usize) -> Result<Vec<Perm>> {
    let (mut pinned, free) = literal_values(sigma, n)?;
    pinned.reverse();
    let avoided: Perm = if sigma[0] > sigma[1] { "231" } else { "213" }.parse()?;
    let avoided = PatternSet::single(avoided)?;
    let mut out: Vec<Perm> = crate::perm::enumerate_avoiders(free.len(), &avoided)?
        .map(|rho| {
            let mut v = pinned.clone();
            v.extend(rho.iter().map(|&x| free[x as usize - 1]));
            Perm::from_vec_unchecked(v)
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// First `p` in `S_n` with `s_{T^c}(p^c) != s_T(p)^c`, if any.
pub fn complement_conjugation_counterexample(patterns: &PatternSet, n: usize) -> Result<Option<Perm>> {
    let conj = patterns.complemented();
    find_first(n, |p| sort_perm(&p.complement(), &conj) == sort_perm(p, patterns).complement())
}

pub fn complement_conjugation_check(patterns: &PatternSet, n: usize) -> Result<bool> {
    Ok(complement_conjugation_counterexample(patterns, n)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&perm("213")).unwrap().to_string(), "1c");
        assert_eq!(kappa(&perm("3241")).unwrap().to_string(), "1c,1");
        assert_eq!(kappa(&perm("132")), Err(Error::NotConsecutive("132".into())));
        assert!(matches!(kappa(&perm("21")), Err(Error::PatternTooShortForKappa(_))));
        for sigma in enumerate_permutations(5).unwrap().filter(|s| s[0].abs_diff(s[1]) == 1) {
            assert_eq!(kappa(&sigma).unwrap().len(), 3);
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&perm("213"), 5).unwrap(), perm("12345"));
        assert_eq!(mu(&perm("231"), 5).unwrap(), perm("54321"));
        assert_eq!(mu(&perm("321"), 4).unwrap(), perm("2341"));
        assert!(matches!(mu(&perm("3241"), 3), Err(Error::LengthBelowPattern { n: 3, k: 4 })));
    }

    #[test]
    fn p_set_of_213() {
        let family = p_set(&perm("213"), 5).unwrap();
        assert_eq!(family.len(), 14);
        assert!(family.iter().all(|p| p[0] == 5 && crate::perm::avoids(&p[1..], &[2, 3, 1])));
    }

    #[test]
    fn preimage_strategies_agree_on_small_cases() {
        let t = set("213,231");
        for gamma in enumerate_permutations(5).unwrap() {
            assert_eq!(
                preimages_with(&gamma, &t, PreimageStrategy::MovementSequences).unwrap(),
                preimages_with(&gamma, &t, PreimageStrategy::BruteForce).unwrap(),
            );
        }
    }

    #[test]
    fn preimage_classes_match_per_target_filter() {
        let t = set("132");
        let classes = all_preimages(&t, 4).unwrap();
        for (r, class) in classes.iter().enumerate() {
            let gamma = Perm::unrank(4, r);
            assert_eq!(class, &preimages_with(&gamma, &t, PreimageStrategy::BruteForce).unwrap());
        }
    }

    #[test]
    fn classical_identity_preimages() {
        for n in 0..=6 {
            assert_eq!(preimages(&Perm::identity(n), &set("21")).unwrap().len() as u64, catalan(n).unwrap());
        }
    }

    #[test]
    fn fertility_for_long_patterns_on_short_inputs() {
        // Every input shorter than k - 1 is simply reversed.
        let report = fertility_max(&set("12345"), 3).unwrap();
        assert_eq!(report.max_count, 1);
        assert_eq!(report.bound, 1);
        assert_eq!(report.witnesses.len(), 6);
    }

    #[test]
    fn complement_check_small() {
        assert!(complement_conjugation_check(&set("123,132"), 1).unwrap());
        assert!(complement_conjugation_check(&set("21"), 5).unwrap());
    }
}
