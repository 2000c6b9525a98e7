//! Exhaustive finite checks of the structural results about `s_T`, grouped
//! into named suites. Each suite stops at its first failing case.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    all_preimages, bijectivity_criterion, complement_conjugation_counterexample, conjecture_trivial_periodics,
    fertility_max, half_decreasing_step, inverse_sort, is_half_decreasing, is_half_increasing, mu, orbit_partition,
    p_set, preimages, sort_count, verify_bijective, PreimageStrategy,
};
use crate::error::{Error, Result};
use crate::machine::{sort, sort_perm, sort_recursive};
use crate::patterns::PatternSet;
use crate::perm::{catalan, enumerate_permutations, factorial, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Bijectivity,
    Recursion,
    Bound,
    Sharpness,
    Periodic,
    Complement,
    MachineCatalan,
    Conjectures,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Bijectivity,
        Suite::Recursion,
        Suite::Bound,
        Suite::Sharpness,
        Suite::Periodic,
        Suite::Complement,
        Suite::MachineCatalan,
        Suite::Conjectures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bijectivity => "bijectivity",
            Suite::Recursion => "recursion",
            Suite::Bound => "bound",
            Suite::Sharpness => "sharpness",
            Suite::Periodic => "periodic",
            Suite::Complement => "complement",
            Suite::MachineCatalan => "machine-catalan",
            Suite::Conjectures => "conjectures",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Expands `"all"` or a comma-separated list of suite names.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    s.split(',').map(|part| part.trim().parse()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_n: usize,
    pub passed: bool,
    /// Progress and summary lines.
    pub lines: Vec<String>,
    pub failure: Option<String>,
}

/// A failed check, or a genuine error from the library.
enum Fail {
    Case(String),
    Error(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Error(e)
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Fail::Case(format!($($msg)+)));
        }
    };
}

type Lines = Vec<String>;

pub fn run_suite(suite: Suite, max_n: usize) -> Result<SuiteReport> {
    let mut lines = Vec::new();
    let outcome = match suite {
        Suite::Bijectivity => bijectivity(max_n, &mut lines),
        Suite::Recursion => recursion(max_n, &mut lines),
        Suite::Bound => bound(max_n, &mut lines),
        Suite::Sharpness => sharpness(max_n, &mut lines),
        Suite::Periodic => periodic(max_n, &mut lines),
        Suite::Complement => complement(max_n, &mut lines),
        Suite::MachineCatalan => machine_catalan(max_n, &mut lines),
        Suite::Conjectures => conjectures(max_n, &mut lines),
    };
    let failure = match outcome {
        Ok(()) => None,
        Err(Fail::Case(msg)) => Some(msg),
        Err(Fail::Error(e)) => return Err(e),
    };
    Ok(SuiteReport { suite, max_n, passed: failure.is_none(), lines, failure })
}

fn sets(list: &[&str]) -> Vec<PatternSet> {
    list.iter().map(|s| s.parse().expect("built-in pattern set")).collect()
}

/// Every reduced `T ⊆ S_3` with `|T| <= 2`.
pub fn small_s3_sets() -> Vec<PatternSet> {
    let s3: Vec<Perm> = enumerate_permutations(3).expect("small").collect();
    let mut out: Vec<PatternSet> = s3.iter().map(|p| PatternSet::single(p.clone()).expect("valid")).collect();
    for (i, a) in s3.iter().enumerate() {
        for b in &s3[i + 1..] {
            out.push(PatternSet::new([a.clone(), b.clone()]).expect("valid"));
        }
    }
    out
}

fn bijectivity(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    let mut all = small_s3_sets();
    all.extend(sets(&["21"]));
    for t in &all {
        let criterion = bijectivity_criterion(t);
        for n in 1..=max_n {
            let injective = verify_bijective(t, n)?;
            ensure!(
                injective.is_injective() == criterion || (n < t.min_len() && injective.is_injective()),
                "T={{{t}}} n={n}: criterion says {criterion}, exhaustive check found {injective:?}"
            );
        }
        if criterion {
            for p in enumerate_permutations(max_n)? {
                let image = sort_perm(&p, t);
                ensure!(inverse_sort(&image, t)? == p, "T={{{t}}}: inverse_sort(sort({p})) != {p}");
                ensure!(sort_perm(&inverse_sort(&p, t)?, t) == p, "T={{{t}}}: sort(inverse_sort({p})) != {p}");
            }
        }
        lines.push(format!("T={{{t}}}: bijective={criterion} confirmed for n=1..={max_n}"));
    }
    Ok(())
}

pub const RECURSION_SETS: [&str; 6] = ["21", "123", "132", "123,132", "213,231", "231,321"];

fn recursion(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    for t in sets(&RECURSION_SETS) {
        for n in 0..=max_n {
            for p in enumerate_permutations(n)? {
                let direct = sort(&p, &t);
                let recursive = sort_recursive(&p, &t);
                ensure!(direct == recursive, "T={{{t}}} p={p}: simulation {direct} != recursion {recursive}");
            }
        }
        lines.push(format!("T={{{t}}}: simulation = recursion on S_n, n<={max_n}"));
    }
    Ok(())
}

pub const BOUND_SETS: [&str; 5] = ["123,132", "213,231", "213", "132", "21"];

fn bound(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    for t in sets(&BOUND_SETS) {
        for n in 1..=max_n {
            let classes = all_preimages(&t, n)?;
            let report = fertility_max(&t, n)?;
            ensure!(
                report.max_count <= report.bound,
                "T={{{t}}} n={n}: max fertility {} exceeds bound {}",
                report.max_count,
                report.bound
            );
            for (r, class) in classes.iter().enumerate() {
                let gamma = Perm::unrank(n, r);
                let via_moves = crate::dynamics::preimages_with(&gamma, &t, PreimageStrategy::MovementSequences)?;
                ensure!(
                    &via_moves == class,
                    "T={{{t}}} gamma={gamma}: movement-sequence preimages {} != brute force {}",
                    via_moves.len(),
                    class.len()
                );
            }
            lines.push(format!("T={{{t}}} n={n}: max fertility {} <= {}", report.max_count, report.bound));
        }
    }
    Ok(())
}

fn consecutive_head(sigma: &Perm) -> bool {
    sigma[0].abs_diff(sigma[1]) == 1
}

/// Checks the sharp-bound dichotomy for `{σ}` at length `n`. Returns a short
/// description of what was observed.
pub fn sharpness_case(sigma: &Perm, n: usize) -> Result<std::result::Result<String, String>> {
    let t = PatternSet::single(sigma.clone())?;
    let k = sigma.len();
    let report = fertility_max(&t, n)?;
    let bound = report.bound;
    if consecutive_head(sigma) {
        let m = mu(sigma, n)?;
        if report.max_count != bound {
            return Ok(Err(format!("sigma={sigma} n={n}: max {} != bound {bound}", report.max_count)));
        }
        if !report.witnesses.contains(&m) {
            return Ok(Err(format!("sigma={sigma} n={n}: mu={m} is not a maximiser")));
        }
        if preimages(&m, &t)? != p_set(sigma, n)? {
            return Ok(Err(format!("sigma={sigma} n={n}: preimages of mu={m} differ from the P family")));
        }
        Ok(Ok(format!("sigma={sigma} n={n}: max {bound} attained at mu={m}")))
    } else if n > k {
        if report.max_count >= bound {
            return Ok(Err(format!("sigma={sigma} n={n}: max {} reaches bound {bound}", report.max_count)));
        }
        Ok(Ok(format!("sigma={sigma} n={n}: max {} < {bound}", report.max_count)))
    } else {
        Ok(Ok(format!("sigma={sigma} n={n} (n=k, not covered): max {} vs bound {bound}", report.max_count)))
    }
}

fn sharpness(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    for k in 3..=4 {
        for sigma in enumerate_permutations(k)? {
            for n in k..=max_n {
                match sharpness_case(&sigma, n)? {
                    Ok(line) => lines.push(line),
                    Err(msg) => return Err(Fail::Case(msg)),
                }
            }
        }
    }
    for tau in ["231", "321"] {
        let t: PatternSet = format!("213,{tau}").parse()?;
        for n in 3..=max_n {
            let expected = nrho_family(n)?;
            let got = preimages(&Perm::identity(n), &t)?;
            ensure!(got == expected, "T={{{t}}} n={n}: identity preimages are not n·Av(231)");
            ensure!(got.len() as u64 == catalan(n - 1)?, "T={{{t}}} n={n}: size {}", got.len());
        }
        lines.push(format!("T={{{t}}}: preimages(id_n) = n·Av_(n-1)(231) for n=3..={max_n}"));
    }
    let t: PatternSet = "213,231".parse()?;
    for n in 3..=max_n {
        let report = fertility_max(&t, n)?;
        ensure!(
            report.max_count == catalan(n - 1)?
                && report.witnesses == vec![Perm::identity(n), Perm::reverse_identity(n)],
            "T={{213,231}} n={n}: maximisers {:?} with {} preimages",
            report.witnesses,
            report.max_count
        );
    }
    lines.push(format!("T={{213,231}}: max fertility C_(n-1) only at id_n and its reverse, n=3..={max_n}"));
    Ok(())
}

/// `{ n·ρ : ρ ∈ Av_{n-1}(231) }`, sorted.
pub fn nrho_family(n: usize) -> Result<Vec<Perm>> {
    let avoid = PatternSet::single("231".parse()?)?;
    let mut out: Vec<Perm> = crate::perm::enumerate_avoiders(n - 1, &avoid)?
        .map(|rho| {
            let mut v = vec![n as u32];
            v.extend(rho.iter());
            Perm::new(v).expect("prefixing n keeps a permutation")
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

fn ceil_half(n: usize) -> usize {
    (n + 2) / 2
}

fn periodic(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    let t: PatternSet = "123,132".parse()?;
    for n in 1..=max_n {
        let orbits = orbit_partition(&t, n)?;
        let mut points: Vec<Perm> = orbits.iter().flatten().cloned().collect();
        points.sort_unstable();
        let half: Vec<Perm> = enumerate_permutations(n)?.filter(is_half_decreasing).collect();
        ensure!(points == half, "n={n}: periodic points differ from the half-decreasing permutations");
        let len = ceil_half(n);
        ensure!(half.len() == factorial(len), "n={n}: {} half-decreasing, expected {}!", half.len(), len);
        ensure!(
            orbits.iter().all(|o| o.len() == len),
            "n={n}: orbit lengths {:?}, expected {len}",
            orbits.iter().map(Vec::len).collect::<Vec<_>>()
        );
        ensure!(orbits.len() == factorial(n / 2), "n={n}: {} orbits, expected {}!", orbits.len(), n / 2);
        for p in &half {
            ensure!(half_decreasing_step(p)? == sort_perm(p, &t), "n={n}: closed form disagrees at {p}");
        }
        for p in enumerate_permutations(n)? {
            let mut x = p.clone();
            let mut steps = 0;
            while !is_half_decreasing(&x) {
                ensure!(steps <= factorial(n), "n={n}: {p} never becomes half-decreasing");
                x = sort_perm(&x, &t);
                steps += 1;
            }
        }
        lines.push(format!(
            "n={n}: {} periodic points in {} orbits of length {len} (= {}!)",
            points.len(),
            orbits.len(),
            n / 2
        ));
    }
    let t: PatternSet = "312,321".parse()?;
    for n in 1..=max_n {
        let mut points: Vec<Perm> = orbit_partition(&t, n)?.into_iter().flatten().collect();
        points.sort_unstable();
        let half: Vec<Perm> = enumerate_permutations(n)?.filter(is_half_increasing).collect();
        ensure!(points == half, "T={{312,321}} n={n}: periodic points differ from the half-increasing permutations");
    }
    lines.push(format!("T={{312,321}}: periodic points = half-increasing for n=1..={max_n}"));
    Ok(())
}

pub const COMPLEMENT_SETS: [&str; 3] = ["123,132", "213", "21"];

fn complement(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    for t in sets(&COMPLEMENT_SETS) {
        for n in 1..=max_n {
            if let Some(p) = complement_conjugation_counterexample(&t, n)? {
                return Err(Fail::Case(format!("T={{{t}}}: complement law fails at {p}")));
            }
        }
        lines.push(format!("T={{{t}}}: s_(T^c)(p^c) = s_T(p)^c for n<={max_n}"));
    }
    Ok(())
}

fn machine_catalan(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    for sigma in ["123", "132", "231"] {
        let sigma: Perm = sigma.parse()?;
        let hat = sigma.hat()?;
        let mut counts = Vec::new();
        for n in 1..=max_n {
            let c = sort_count(&sigma, &hat, n)?;
            ensure!(c == catalan(n)?, "({sigma},{hat}) n={n}: {c} != C_{n}");
            counts.push(c.to_string());
        }
        lines.push(format!("({sigma},{hat}): {}", counts.join(" ")));
    }
    Ok(())
}

pub const CONJECTURE_SETS: [&str; 2] = ["132,213", "231,213"];

fn conjectures(max_n: usize, lines: &mut Lines) -> std::result::Result<(), Fail> {
    for t in sets(&CONJECTURE_SETS) {
        for n in 1..=max_n {
            let check = conjecture_trivial_periodics(&t, n)?;
            if let Some(p) = &check.counterexample {
                return Err(Fail::Case(format!("T={{{t}}} n={n}: non-trivial periodic point {p}")));
            }
        }
        lines.push(format!("T={{{t}}}: only id_n and its reverse are periodic, n=1..={max_n}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(parse_suites("all").unwrap().len(), 8);
        assert_eq!(parse_suites("bound, periodic").unwrap(), vec![Suite::Bound, Suite::Periodic]);
        assert!(parse_suites("nope").is_err());
    }

    #[test]
    fn every_suite_passes_at_n4() {
        for s in Suite::ALL {
            let report = run_suite(s, 4).unwrap();
            assert!(report.passed, "{s}: {:?}", report.failure);
        }
    }

    #[test]
    fn small_sets() {
        let all = small_s3_sets();
        assert_eq!(all.len(), 21);
        assert!(all.iter().all(PatternSet::is_reduced));
    }
}
