//! The pattern-avoiding stack machine `s_T`.
//!
//! The machine reads its input left to right. The next letter is pushed when
//! the stack, read top to bottom with that letter on top, still avoids every
//! pattern of `T`; otherwise the top of the stack is popped to the output.
//! Once the input is exhausted the stack is emptied.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::perm::{self, Letter, Perm, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    /// The next input letter enters the stack.
    #[serde(rename = "N")]
    Enter,
    /// The top of the stack exits to the output.
    #[serde(rename = "X")]
    Exit,
}

/// A word over `{N, X}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MovementSequence(Vec<Step>);

impl MovementSequence {
    pub fn new(steps: Vec<Step>) -> Self {
        MovementSequence(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every prefix has at least as many `N` as `X`, and the totals agree.
    pub fn is_dyck(&self) -> bool {
        is_dyck(&self.0)
    }

    pub fn semilength(&self) -> usize {
        self.0.len() / 2
    }
}

fn is_dyck(steps: &[Step]) -> bool {
    let mut height: usize = 0;
    for s in steps {
        match s {
            Step::Enter => height += 1,
            Step::Exit => match height.checked_sub(1) {
                Some(h) => height = h,
                None => return false,
            },
        }
    }
    height == 0
}

impl fmt::Display for MovementSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::Enter => "N",
                Step::Exit => "X",
            })?;
        }
        Ok(())
    }
}

impl FromStr for MovementSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'N' | 'n' => Ok(Step::Enter),
                'X' | 'x' => Ok(Step::Exit),
                other => Err(Error::Parse(format!("movement step must be N or X, got {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(MovementSequence)
    }
}

/// One machine step and the state right after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub step: Step,
    pub letter: Letter,
    /// Stack contents, top first.
    pub stack: Vec<Letter>,
    pub output: Vec<Letter>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn movement_sequence(&self) -> MovementSequence {
        MovementSequence(self.events.iter().map(|e| e.step).collect())
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("trace events serialize"));
            out.push('\n');
        }
        out
    }
}

/// Whether `letter` may be pushed onto `stack` (bottom first).
fn push_allowed(stack: &[Letter], letter: Letter, patterns: &PatternSet, scratch: &mut Vec<Letter>) -> bool {
    scratch.clear();
    scratch.push(letter);
    scratch.extend(stack.iter().rev());
    patterns.avoided_by(scratch)
}

fn run<F>(input: &[Letter], patterns: &PatternSet, mut observe: F) -> Vec<Letter>
where
    F: FnMut(Step, Letter, &[Letter], &[Letter]),
{
    let mut stack: Vec<Letter> = Vec::with_capacity(input.len());
    let mut output = Vec::with_capacity(input.len());
    let mut scratch = Vec::with_capacity(input.len() + 1);
    let mut next = 0;
    while next < input.len() {
        let letter = input[next];
        if stack.is_empty() || push_allowed(&stack, letter, patterns, &mut scratch) {
            stack.push(letter);
            next += 1;
            observe(Step::Enter, letter, &stack, &output);
        } else {
            let top = stack.pop().expect("nonempty");
            output.push(top);
            observe(Step::Exit, top, &stack, &output);
        }
    }
    while let Some(top) = stack.pop() {
        output.push(top);
        observe(Step::Exit, top, &stack, &output);
    }
    output
}

/// `s_T(w)`.
pub fn sort(w: &[Letter], patterns: &PatternSet) -> Word {
    Word::from_vec_unchecked(run(w, patterns, |_, _, _, _| {}))
}

/// `s_T` restricted to permutations.
pub fn sort_perm(p: &Perm, patterns: &PatternSet) -> Perm {
    Perm::from_vec_unchecked(run(p, patterns, |_, _, _, _| {}))
}

pub fn sort_with_trace(w: &[Letter], patterns: &PatternSet) -> (Word, MovementSequence, Trace) {
    let mut events = Vec::with_capacity(2 * w.len());
    let out = run(w, patterns, |step, letter, stack, output| {
        events.push(TraceEvent { step, letter, stack: stack.iter().rev().copied().collect(), output: output.to_vec() });
    });
    let trace = Trace { events };
    (Word::from_vec_unchecked(out), trace.movement_sequence(), trace)
}

pub fn movement_sequence(w: &[Letter], patterns: &PatternSet) -> MovementSequence {
    let mut steps = Vec::with_capacity(2 * w.len());
    run(w, patterns, |step, _, _, _| steps.push(step));
    MovementSequence(steps)
}

/// Segmentation `(a_0, ..., a_k)` of a word around the colexicographically
/// least occurrence of a reversed pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clumping {
    pub segments: Vec<Word>,
    /// The pattern whose reverse occurs at `witness_indices`.
    pub witness_pattern: Perm,
    /// 0-based positions of the first letter of `a_1, ..., a_k`.
    pub witness_indices: Vec<usize>,
}

impl Clumping {
    pub fn concat(&self) -> Word {
        Word::from_vec_unchecked(self.segments.iter().flat_map(|s| s.iter().copied()).collect())
    }
}

/// Colex order on index tuples: last entries first, a tuple that runs out
/// while tied is the smaller one.
pub fn colex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// The `T`-clumping of `w`, or `None` when `w` avoids `T^r`.
pub fn t_clumping(w: &[Letter], patterns: &PatternSet) -> Option<Clumping> {
    let mut best: Option<(Vec<usize>, &Perm)> = None;
    for sigma in patterns.iter() {
        let reversed = sigma.reversed();
        perm::for_each_occurrence(w, &reversed, |ix| {
            let better = match &best {
                None => true,
                Some((b, _)) => colex_cmp(ix, b) == Ordering::Less,
            };
            if better {
                best = Some((ix.to_vec(), sigma));
            }
            true
        });
    }
    let (indices, sigma) = best?;
    let mut segments = Vec::with_capacity(indices.len() + 1);
    let mut start = 0;
    for &i in &indices {
        segments.push(Word::from_vec_unchecked(w[start..i].to_vec()));
        start = i;
    }
    segments.push(Word::from_vec_unchecked(w[start..].to_vec()));
    Some(Clumping { segments, witness_pattern: sigma.clone(), witness_indices: indices })
}

/// Evaluates `s_T` through the clumping recurrence
/// `s_T(a_0 ... a_k) = a_{k-1}^r s_T(a_0 ... a_{k-2} a_k)`, bottoming out at
/// `s_T(w) = w^r` for `T^r`-avoiding `w`. Shares no code with the simulation.
pub fn sort_recursive(w: &[Letter], patterns: &PatternSet) -> Word {
    let mut out = Vec::with_capacity(w.len());
    let mut current = w.to_vec();
    while let Some(clumping) = t_clumping(&current, patterns) {
        let k = clumping.segments.len() - 1;
        out.extend(clumping.segments[k - 1].iter().rev());
        current = clumping
            .segments
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k - 1)
            .flat_map(|(_, s)| s.iter().copied())
            .collect();
    }
    out.extend(current.iter().rev());
    Word::from_vec_unchecked(out)
}

/// Number of leading `N` (and trailing `X`) steps forced for inputs of
/// length `n`: the bottom `k - 2` letters never leave early. Clamped at `n`.
pub fn forced_steps(n: usize, patterns: &PatternSet) -> usize {
    patterns.min_len().saturating_sub(2).min(n)
}

/// True iff `m` has the shape `N^j m' X^j` with `m'` a Dyck word and
/// `2n` steps in total, where `j = min(k - 2, n)`.
pub fn is_legal_movement_sequence(m: &MovementSequence, n: usize, patterns: &PatternSet) -> bool {
    let steps = m.steps();
    if steps.len() != 2 * n {
        return false;
    }
    let j = forced_steps(n, patterns);
    steps[..j].iter().all(|&s| s == Step::Enter)
        && steps[steps.len() - j..].iter().all(|&s| s == Step::Exit)
        && is_dyck(&steps[j..steps.len() - j])
}

/// All `T`-legal movement sequences of semilength `n`, in lexicographic order
/// with `N < X`. There are `C_{n-k+2}` of them.
pub fn legal_movement_sequences(n: usize, patterns: &PatternSet) -> Vec<MovementSequence> {
    let j = forced_steps(n, patterns);
    let mut out = Vec::new();
    let mut buf = vec![Step::Enter; j];
    dyck_words(n - j, 0, 0, &mut buf, &mut |middle| {
        let mut steps = middle.to_vec();
        steps.extend(std::iter::repeat_n(Step::Exit, j));
        out.push(MovementSequence(steps));
    });
    out
}

fn dyck_words<F: FnMut(&[Step])>(semilength: usize, opened: usize, closed: usize, buf: &mut Vec<Step>, emit: &mut F) {
    if closed == semilength {
        emit(buf);
        return;
    }
    if opened < semilength {
        buf.push(Step::Enter);
        dyck_words(semilength, opened + 1, closed, buf, emit);
        buf.pop();
    }
    if closed < opened {
        buf.push(Step::Exit);
        dyck_words(semilength, opened, closed + 1, buf, emit);
        buf.pop();
    }
}

/// Replays `m` backwards from the output `out` and returns the only input that
/// could produce `out` while following `m`. The greedy machine need not
/// actually follow `m` on that input.
pub fn reconstruct_input(out: &[Letter], m: &MovementSequence) -> Result<Word> {
    if !m.is_dyck() {
        return Err(Error::InvalidMovementSequence(format!("{m} is not a Dyck word")));
    }
    if m.semilength() != out.len() {
        return Err(Error::InvalidMovementSequence(format!(
            "{m} has semilength {} but the output has length {}",
            m.semilength(),
            out.len()
        )));
    }
    let mut output = out.to_vec();
    let mut stack = Vec::with_capacity(out.len());
    let mut input = Vec::with_capacity(out.len());
    for step in m.steps().iter().rev() {
        match step {
            Step::Exit => stack.push(output.pop().expect("Dyck word balances output")),
            Step::Enter => input.push(stack.pop().expect("Dyck word balances stack")),
        }
    }
    input.reverse();
    Ok(Word::from_vec_unchecked(input))
}
