//! Sets of forbidden stack patterns.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Letter, Perm};

/// A nonempty set of permutation patterns, each of length at least 2, kept in
/// lexicographic order.
///
/// The set is not required to be reduced: sorting with a non-reduced set is
/// well defined and agrees with its [`reduce`](PatternSet::reduce)d form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Perm>", into = "Vec<Perm>")]
pub struct PatternSet {
    patterns: Vec<Perm>,
    min_len: usize,
}

impl PatternSet {
    pub fn new<I: IntoIterator<Item = Perm>>(patterns: I) -> Result<Self> {
        let patterns: BTreeSet<Perm> = patterns.into_iter().collect();
        if patterns.is_empty() {
            return Err(Error::EmptyPatternSet);
        }
        if let Some(short) = patterns.iter().find(|p| p.len() < 2) {
            return Err(Error::PatternTooShort(short.to_string()));
        }
        let min_len = patterns.iter().map(|p| p.len()).min().unwrap_or(0);
        Ok(PatternSet { patterns: patterns.into_iter().collect(), min_len })
    }

    /// Builds the set and drops every member containing another member.
    pub fn reduced<I: IntoIterator<Item = Perm>>(patterns: I) -> Result<Self> {
        Ok(PatternSet::new(patterns)?.reduce())
    }

    pub fn single(pattern: Perm) -> Result<Self> {
        PatternSet::new([pattern])
    }

    /// Shorthand for tests and examples: `PatternSet::parse_list("123,132")`.
    pub fn parse_list(s: &str) -> Result<Self> {
        s.parse()
    }

    pub fn patterns(&self) -> &[Perm] {
        &self.patterns
    }

    pub fn iter(&self) -> impl Iterator<Item = &Perm> {
        self.patterns.iter()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Minimum pattern length `k`.
    pub fn min_len(&self) -> usize {
        self.min_len
    }

    pub fn contains_pattern(&self, p: &Perm) -> bool {
        self.patterns.binary_search(p).is_ok()
    }

    pub fn is_reduced(&self) -> bool {
        self.patterns.iter().all(|p| !self.has_smaller_member_in(p))
    }

    fn has_smaller_member_in(&self, p: &Perm) -> bool {
        self.patterns.iter().any(|q| q != p && perm::contains(p, q))
    }

    pub fn reduce(&self) -> PatternSet {
        let kept: Vec<Perm> = self.patterns.iter().filter(|p| !self.has_smaller_member_in(p)).cloned().collect();
        PatternSet::new(kept).expect("a nonempty set always keeps a minimal member")
    }

    /// `T^r`.
    pub fn reversed(&self) -> PatternSet {
        PatternSet::new(self.patterns.iter().map(Perm::reversed)).expect("same lengths")
    }

    /// `T^c`.
    pub fn complemented(&self) -> PatternSet {
        PatternSet::new(self.patterns.iter().map(Perm::complement)).expect("same lengths")
    }

    /// True iff `w` avoids every member.
    pub fn avoided_by(&self, w: &[Letter]) -> bool {
        self.patterns.iter().all(|p| !perm::contains(w, p))
    }
}

/// Reduces a raw collection of patterns.
pub fn reduce<I: IntoIterator<Item = Perm>>(patterns: I) -> Result<PatternSet> {
    PatternSet::reduced(patterns)
}

pub fn avoids_set(w: &[Letter], patterns: &PatternSet) -> bool {
    patterns.avoided_by(w)
}

impl TryFrom<Vec<Perm>> for PatternSet {
    type Error = Error;
    fn try_from(v: Vec<Perm>) -> Result<Self> {
        PatternSet::new(v)
    }
}

impl From<PatternSet> for Vec<Perm> {
    fn from(t: PatternSet) -> Self {
        t.patterns
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if p.iter().all(|&l| l <= 9) {
                write!(f, "{p}")?;
            } else {
                write!(f, "[{p}]")?;
            }
        }
        Ok(())
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    /// Comma-separated compact patterns (`"123,132"`); letters above 9 need
    /// the bracket form (`"[10,2,1,3,4,5,6,7,8,9]"`).
    fn from_str(s: &str) -> Result<Self> {
        let mut items = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let item;
            if let Some(inner) = rest.strip_prefix('[') {
                let close = inner.find(']').ok_or_else(|| Error::Parse(format!("unclosed bracket in {s:?}")))?;
                item = &rest[..close + 2];
                rest = &inner[close + 1..];
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                item = &rest[..end];
                rest = &rest[end..];
            }
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::Parse(format!("empty pattern in {s:?}")));
            }
            items.push(Perm::new(perm::parse_letters(item)?)?);
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::Parse(format!("trailing comma in {s:?}")));
                }
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("expected ',' in {s:?}")));
            }
        }
        PatternSet::new(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(set("123,1234").reduce(), set("123"));
        assert_eq!(set("123,132").reduce(), set("123,132"));
        assert_eq!(set("21,321,231").reduce(), set("21"));
        assert!(set("123,132").is_reduced());
        assert!(!set("123,1234").is_reduced());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(PatternSet::new(Vec::<Perm>::new()), Err(Error::EmptyPatternSet));
        assert_eq!("1".parse::<PatternSet>(), Err(Error::PatternTooShort("1".into())));
        assert_eq!("12,1".parse::<PatternSet>(), Err(Error::PatternTooShort("1".into())));
        assert!(matches!("".parse::<PatternSet>(), Err(Error::EmptyPatternSet)));
        assert!(matches!("122".parse::<PatternSet>(), Err(Error::NotPermutation(_))));
        assert!(matches!("12,".parse::<PatternSet>(), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_and_display() {
        let t = set("132, 123");
        assert_eq!(t.patterns().len(), 2);
        assert_eq!(t.to_string(), "123,132");
        assert_eq!(t.min_len(), 3);
        let big = set("[10,2,1,3,4,5,6,7,8,9],21");
        assert_eq!(big.min_len(), 2);
        assert_eq!(big.to_string(), "21,[10,2,1,3,4,5,6,7,8,9]");
        assert_eq!(big.to_string().parse::<PatternSet>().unwrap(), big);
    }

    #[test]
    fn symmetric_sets() {
        assert_eq!(set("123,132").reversed(), set("321,231"));
        assert_eq!(set("123,132").complemented(), set("321,312"));
        assert_eq!(set("21").complemented(), set("12"));
    }

    #[test]
    fn avoidance() {
        assert!(avoids_set(&[3, 1, 2], &set("123,132")));
        assert!(!avoids_set(&[1, 4, 2, 5], &set("132")));
        assert!(avoids_set(&[], &set("21")));
    }
}
