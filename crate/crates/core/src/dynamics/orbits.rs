use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::image_ranks;
use crate::error::{Error, Result};
use crate::machine::sort_perm;
use crate::patterns::PatternSet;
use crate::perm::{check_size, Letter, Perm};

/// 0-based positions `n-2, n-4, ...` (1-based `n-1, n-3, ...`) down to
/// position 2 (odd `n`) or 3 (even `n`).
pub fn decreasing_half_positions(n: usize) -> Vec<usize> {
    (0..(n.saturating_sub(1)) / 2).map(|j| n - 2 - 2 * j).collect()
}

/// The letters at `n-1, n-3, ...` are literally `1, 2, ...`.
pub fn is_half_decreasing(p: &Perm) -> bool {
    decreasing_half_positions(p.len()).iter().enumerate().all(|(j, &pos)| p[pos] as usize == j + 1)
}

pub fn is_half_increasing(p: &Perm) -> bool {
    is_half_decreasing(&p.complement())
}

/// Closed form of `s_{123,132}` on a half-decreasing permutation: the
/// decreasing half stays put and the other letters rotate one place left.
pub fn half_decreasing_step(p: &Perm) -> Result<Perm> {
    if !is_half_decreasing(p) {
        return Err(Error::NotHalfDecreasing(p.to_string()));
    }
    let n = p.len();
    let fixed = decreasing_half_positions(n);
    let moving: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();
    let mut out: Vec<Letter> = p.to_vec();
    for (j, &pos) in moving.iter().enumerate() {
        out[pos] = p[moving[(j + 1) % moving.len()]];
    }
    Ok(Perm::from_vec_unchecked(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub start: Perm,
    /// Points visited before the cycle is entered.
    pub tail: Vec<Perm>,
    pub cycle: Vec<Perm>,
    pub cycle_length: usize,
}

/// Iterates `s_T` from `p` until a point repeats.
pub fn orbit(p: &Perm, patterns: &PatternSet) -> Result<OrbitReport> {
    check_size(p.len())?;
    let mut seen: HashMap<Perm, usize> = HashMap::new();
    let mut path = Vec::new();
    let mut current = p.clone();
    let entry = loop {
        if let Some(&i) = seen.get(&current) {
            break i;
        }
        seen.insert(current.clone(), path.len());
        let next = sort_perm(&current, patterns);
        path.push(current);
        current = next;
    };
    let cycle = path.split_off(entry);
    Ok(OrbitReport { start: p.clone(), cycle_length: cycle.len(), tail: path, cycle })
}

/// Cycles of the functional graph `r -> succ[r]`, each rotated to start at
/// its least element, ordered by that element.
fn cycles(succ: &[usize]) -> Vec<Vec<usize>> {
    const FRESH: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![FRESH; succ.len()];
    let mut out = Vec::new();
    let mut path = Vec::new();
    for start in 0..succ.len() {
        if state[start] != FRESH {
            continue;
        }
        let mut x = start;
        while state[x] == FRESH {
            state[x] = ON_PATH;
            path.push(x);
            x = succ[x];
        }
        if state[x] == ON_PATH {
            let from = path.iter().position(|&y| y == x).expect("on path");
            let mut cycle = path[from..].to_vec();
            let least = cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
            cycle.rotate_left(least);
            out.push(cycle);
        }
        for &y in &path {
            state[y] = DONE;
        }
        path.clear();
    }
    out.sort_unstable_by_key(|c| c[0]);
    out
}

/// The periodic orbits of `s_T` on `S_n`.
pub fn orbit_partition(patterns: &PatternSet, n: usize) -> Result<Vec<Vec<Perm>>> {
    let succ = image_ranks(patterns, n)?;
    Ok(cycles(&succ).into_iter().map(|c| c.into_iter().map(|r| Perm::unrank(n, r)).collect()).collect())
}

/// All periodic points of `s_T` on `S_n`, in lexicographic order.
pub fn periodic_points(patterns: &PatternSet, n: usize) -> Result<Vec<Perm>> {
    let mut points: Vec<Perm> = orbit_partition(patterns, n)?.into_iter().flatten().collect();
    points.sort_unstable();
    Ok(points)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCheck {
    pub patterns: PatternSet,
    pub n: usize,
    pub periodic_points: Vec<Perm>,
    /// First periodic point other than the identity and its reverse.
    pub counterexample: Option<Perm>,
}

impl ConjectureCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Tests whether the only periodic points are `id_n` and its reverse.
pub fn conjecture_trivial_periodics(patterns: &PatternSet, n: usize) -> Result<ConjectureCheck> {
    let periodic = periodic_points(patterns, n)?;
    let (id, rev) = (Perm::identity(n), Perm::reverse_identity(n));
    let counterexample = periodic.iter().find(|p| **p != id && **p != rev).cloned();
    Ok(ConjectureCheck { patterns: patterns.clone(), n, periodic_points: periodic, counterexample })
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
    fn half_decreasing_examples() {
        assert!(is_half_decreasing(&perm("56342718")));
        assert!(is_half_decreasing(&perm("947382615")));
        assert!(!is_half_decreasing(&perm("789342615")));
        assert!(!is_half_decreasing(&perm("634251")));
        assert!(is_half_decreasing(&perm("")));
        assert!(is_half_decreasing(&perm("1")));
        assert!(is_half_decreasing(&perm("21")));
        assert_eq!(decreasing_half_positions(9), vec![7, 5, 3, 1]);
        assert_eq!(decreasing_half_positions(8), vec![6, 4, 2]);
    }

    #[test]
    fn half_increasing_is_complement() {
        assert!(is_half_increasing(&perm("56342718").complement()));
        assert!(!is_half_increasing(&perm("634251").complement()));
    }

    #[test]
    fn step_examples() {
        assert_eq!(half_decreasing_step(&perm("213")).unwrap(), perm("312"));
        assert_eq!(half_decreasing_step(&perm("312")).unwrap(), perm("213"));
        // odd n: p3 p2 p5 p4 ... pn p(n-1) p1
        let p = perm("947382615");
        assert_eq!(half_decreasing_step(&p).unwrap(), perm("748362519"));
        // even n: p2 p4 p3 p6 p5 ... pn p(n-1) p1
        let p = perm("56342718");
        assert_eq!(half_decreasing_step(&p).unwrap(), perm("64372815"));
        assert!(matches!(half_decreasing_step(&perm("634251")), Err(Error::NotHalfDecreasing(_))));
    }

    #[test]
    fn orbit_of_213() {
        let report = orbit(&perm("213"), &set("123,132")).unwrap();
        assert!(report.tail.is_empty());
        assert_eq!(report.cycle, vec![perm("213"), perm("312")]);
        assert_eq!(report.cycle_length, 2);
    }

    #[test]
    fn orbit_with_tail() {
        let report = orbit(&perm("123"), &set("123,132")).unwrap();
        assert!(!report.tail.is_empty());
        assert!(report.cycle.iter().all(is_half_decreasing));
    }

    #[test]
    fn cycle_finder() {
        // 0 -> 1 -> 2 -> 1, 3 -> 3, 4 -> 0
        let c = cycles(&[1, 2, 1, 3, 0]);
        assert_eq!(c, vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn periodic_points_n5() {
        let t = set("123,132");
        let orbits = orbit_partition(&t, 5).unwrap();
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(|o| o.len() == 3));
        let points = periodic_points(&t, 5).unwrap();
        assert_eq!(points.len(), 6);
        assert!(points.iter().all(is_half_decreasing));
        assert_eq!(periodic_points(&t, 1).unwrap(), vec![perm("1")]);
    }

    #[test]
    fn conjecture_fails_for_123_132() {
        let check = conjecture_trivial_periodics(&set("123,132"), 5).unwrap();
        let bad = check.counterexample.expect("non-trivial periodic points exist");
        assert!(is_half_decreasing(&bad));
        assert_ne!(bad, Perm::identity(5));
    }
}
