//! Words, permutations and classical pattern containment.
//!
//! A [`Word`] is any finite sequence of positive integers; a [`Perm`] is a word
//! whose letters are exactly `1..=n`. Pattern matching follows order
//! isomorphism: two letters are compared with `<`, `>`, and equality must be
//! mirrored, so repeated letters never match distinct pattern letters.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// Largest `n` for which `S_n` may be enumerated exhaustively.
pub const MAX_ENUM_N: usize = 12;

/// Largest index accepted by [`catalan`].
pub const MAX_CATALAN_INDEX: usize = 30;

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n > MAX_ENUM_N {
        Err(Error::SizeCap { n, cap: MAX_ENUM_N })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(pos) = letters.iter().position(|&l| l == 0) {
            return Err(Error::ZeroLetter(pos));
        }
        Ok(Word(letters))
    }

    /// Callers guarantee every letter is positive.
    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| l > 0));
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    pub fn is_permutation(&self) -> bool {
        is_permutation(&self.0)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;
    fn try_from(v: Vec<Letter>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl From<Perm> for Word {
    fn from(p: Perm) -> Self {
        Word(p.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_letters(s)?)
    }
}

/// A permutation of `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Perm(Vec<Letter>);

impl Perm {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if is_permutation(&letters) {
            Ok(Perm(letters))
        } else {
            Err(Error::NotPermutation(letters_to_string(&letters)))
        }
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_permutation(&letters), "{letters:?}");
        Perm(letters)
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n as Letter).collect())
    }

    pub fn reverse_identity(n: usize) -> Self {
        Perm((1..=n as Letter).rev().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn reversed(&self) -> Perm {
        Perm(self.0.iter().rev().copied().collect())
    }

    /// Replaces each letter `m` by `n + 1 - m`.
    pub fn complement(&self) -> Perm {
        let top = self.0.len() as Letter + 1;
        Perm(self.0.iter().map(|&m| top - m).collect())
    }

    /// Swaps the first two letters.
    pub fn hat(&self) -> Result<Perm> {
        if self.0.len() < 2 {
            return Err(Error::TooShortForHat);
        }
        let mut v = self.0.clone();
        v.swap(0, 1);
        Ok(Perm(v))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &l)| l as usize == i + 1)
    }

    /// Lexicographic rank in `S_n`, starting at 0.
    pub fn rank(&self) -> usize {
        rank(&self.0)
    }

    pub fn unrank(n: usize, rank: usize) -> Perm {
        Perm(unrank(n, rank))
    }
}

impl Deref for Perm {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl TryFrom<Vec<Letter>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<Letter>) -> Result<Self> {
        Perm::new(v)
    }
}

impl TryFrom<Word> for Perm {
    type Error = Error;
    fn try_from(w: Word) -> Result<Self> {
        Perm::new(w.0)
    }
}

impl From<Perm> for Vec<Letter> {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Perm::new(parse_letters(s)?)
    }
}

pub fn is_permutation(letters: &[Letter]) -> bool {
    let n = letters.len();
    let mut seen = vec![false; n + 1];
    for &l in letters {
        let l = l as usize;
        if l == 0 || l > n || seen[l] {
            return false;
        }
        seen[l] = true;
    }
    true
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    if letters.iter().all(|&l| l <= 9) {
        for l in letters {
            write!(f, "{l}")?;
        }
        Ok(())
    } else {
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub(crate) fn letters_to_string(letters: &[Letter]) -> String {
    struct Show<'a>(&'a [Letter]);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_letters(f, self.0)
        }
    }
    Show(letters).to_string()
}

/// Parses `"5,2,4,1,3"`, `"52413"` or `"[10,2,1]"`. Zero letters are kept so
/// that the caller reports them with a position.
pub(crate) fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    let s = match (s.strip_prefix('['), s.strip_suffix(']')) {
        (Some(_), Some(_)) => &s[1..s.len() - 1],
        (None, None) => s,
        _ => return Err(Error::Parse(format!("unbalanced brackets in {s:?}"))),
    };
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<Letter>().map_err(|_| Error::Parse(format!("bad letter {part:?}")))
            })
            .collect()
    } else {
        s.chars().map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad letter {c:?} in {s:?}")))).collect()
    }
}

/// True iff `u` and `v` have the same length and every pair of positions
/// compares the same way in both.
pub fn order_isomorphic(u: &[Letter], v: &[Letter]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    (0..u.len()).all(|i| (0..i).all(|j| u[i].cmp(&u[j]) == v[i].cmp(&v[j])))
}

/// True iff some subsequence of `w` is order isomorphic to `pattern`.
pub fn contains(w: &[Letter], pattern: &[Letter]) -> bool {
    let mut found = false;
    for_each_occurrence(w, pattern, |_| {
        found = true;
        false
    });
    found
}

pub fn avoids(w: &[Letter], pattern: &[Letter]) -> bool {
    !contains(w, pattern)
}

/// Calls `visit` with the (0-based, increasing) index tuple of every
/// occurrence of `pattern` in `w`, in lexicographic order of tuples. `visit`
/// returns `false` to stop the search.
pub fn for_each_occurrence<F>(w: &[Letter], pattern: &[Letter], mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let k = pattern.len();
    if k > w.len() {
        return;
    }
    let mut chosen = Vec::with_capacity(k);
    search(w, pattern, 0, &mut chosen, &mut visit);
}

fn search<F>(w: &[Letter], pattern: &[Letter], start: usize, chosen: &mut Vec<usize>, visit: &mut F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    let j = chosen.len();
    if j == pattern.len() {
        return visit(chosen);
    }
    let last_start = w.len() - (pattern.len() - j);
    for i in start..=last_start {
        let fits = chosen.iter().zip(pattern).all(|(&c, &q)| w[i].cmp(&w[c]) == pattern[j].cmp(&q));
        if fits {
            chosen.push(i);
            let keep_going = search(w, pattern, i + 1, chosen, visit);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
    }
    true
}

pub fn reverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().copied().collect()
}

/// Complement of a permutation; rejects anything that is not one.
pub fn complement(w: &[Letter]) -> Result<Perm> {
    Ok(Perm::new(w.to_vec())?.complement())
}

pub fn hat(p: &Perm) -> Result<Perm> {
    p.hat()
}

/// The `n`-th Catalan number, computed with `C_{m+1} = sum C_i C_{m-i}`.
pub fn catalan(n: usize) -> Result<u64> {
    if n > MAX_CATALAN_INDEX {
        return Err(Error::CatalanOverflow(n));
    }
    let mut c = vec![1u64; n + 1];
    for m in 1..=n {
        let mut sum = 0u64;
        for i in 0..m {
            sum = c[i].checked_mul(c[m - 1 - i]).and_then(|x| x.checked_add(sum)).ok_or(Error::CatalanOverflow(n))?;
        }
        c[m] = sum;
    }
    Ok(c[n])
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn rank(p: &[Letter]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

fn unrank(n: usize, mut r: usize) -> Vec<Letter> {
    let mut pool: Vec<Letter> = (1..=n as Letter).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let idx = r / f;
        r %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Lexicographic iterator over `S_n`.
#[derive(Clone, Debug)]
pub struct Permutations {
    next: Option<Vec<Letter>>,
}

impl Iterator for Permutations {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm(current))
    }
}

fn next_permutation(v: &mut [Letter]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn enumerate_permutations(n: usize) -> Result<Permutations> {
    check_size(n)?;
    Ok(Permutations { next: Some((1..=n as Letter).collect()) })
}

pub fn enumerate_avoiders(n: usize, patterns: &crate::patterns::PatternSet) -> Result<impl Iterator<Item = Perm> + '_> {
    Ok(enumerate_permutations(n)?.filter(move |p| patterns.avoided_by(p)))
}

/// A letter that is either a plain value or a value of the complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LiteralLetter {
    Plain(Letter),
    Complement(Letter),
}

impl LiteralLetter {
    /// The value this letter pins in a permutation of length `n`, if any.
    pub fn resolve(self, n: usize) -> Option<Letter> {
        match self {
            LiteralLetter::Plain(m) => (m >= 1 && m as usize <= n).then_some(m),
            LiteralLetter::Complement(m) => (m >= 1 && m as usize <= n).then(|| n as Letter + 1 - m),
        }
    }
}

impl fmt::Display for LiteralLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiteralLetter::Plain(m) => write!(f, "{m}"),
            LiteralLetter::Complement(m) => write!(f, "{m}c"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiteralWord(pub Vec<LiteralLetter>);

impl LiteralWord {
    pub fn letters(&self) -> &[LiteralLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> LiteralWord {
        LiteralWord(self.0.iter().rev().copied().collect())
    }

    /// Concrete values in a permutation of length `n`.
    pub fn resolve(&self, n: usize) -> Option<Vec<Letter>> {
        self.0.iter().map(|l| l.resolve(n)).collect()
    }
}

impl fmt::Display for LiteralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for LiteralWord {
    type Err = Error;

    /// `"1,1c,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(LiteralWord::default());
        }
        s.split(',')
            .map(|part| {
                let part = part.trim();
                let (digits, marked) = match part.strip_suffix('c') {
                    Some(d) => (d, true),
                    None => (part, false),
                };
                let m: Letter = digits.parse().map_err(|_| Error::Parse(format!("bad literal letter {part:?}")))?;
                if m == 0 {
                    return Err(Error::Parse(format!("literal letter {part:?} must be positive")));
                }
                Ok(if marked { LiteralLetter::Complement(m) } else { LiteralLetter::Plain(m) })
            })
            .collect::<Result<Vec<_>>>()
            .map(LiteralWord)
    }
}

/// True iff `p` has positions `i_1 < ... < i_k` carrying exactly the values
/// pinned by `literal` (complement-marked letters are read in `p^c`).
pub fn literally_contains(p: &Perm, literal: &LiteralWord) -> bool {
    let Some(values) = literal.resolve(p.len()) else {
        return false;
    };
    let mut rest = p.iter();
    values.iter().all(|v| rest.any(|x| x == v))
}
