//! The three equivalent descriptions of a tunnel's principal path.
//!
//! * [`BinaryInvariants`]: the bits `s_2 .. s_n`, where `s_i` is 0 when the
//!   turn at step `i` repeats the turn at step `i - 1` and 1 when it reverses.
//! * [`StepSequence`]: the path as drawn, over `{D, L, R}`.
//! * [`TurnSequence`]: the traveler's left/right turn at each step after the
//!   first.
//!
//! All text encodings are case-sensitive ASCII with no whitespace tolerance.
//! Error positions are 1-based.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty step sequence")]
    Empty,
    #[error("invalid character {found:?} at position {position}")]
    InvalidCharacter { position: usize, found: char },
    #[error("grammar violation at position {position}: {reason}")]
    Grammar {
        position: usize,
        reason: &'static str,
    },
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::InvalidCharacter { position, .. }
            | ParseError::Grammar { position, .. } => Some(*position),
        }
    }
}

/// Returned when an operation needs binary invariants but the step sequence
/// is the single `D` of a simple tunnel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("simple tunnel: the step sequence \"D\" carries no binary invariants")]
pub struct SimpleTunnel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Down,
    Left,
    Right,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::Down => 'D',
            Step::Left => 'L',
            Step::Right => 'R',
        }
    }

    fn from_char(c: char) -> Option<Step> {
        match c {
            'D' => Some(Step::Down),
            'L' => Some(Step::Left),
            'R' => Some(Step::Right),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn reversed(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Turn::Left => 'L',
            Turn::Right => 'R',
        }
    }
}

/// The bits `s_2, s_3, ...`; any finite sequence, including the empty one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryInvariants {
    bits: Vec<bool>,
}

impl BinaryInvariants {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryInvariants { bits }
    }

    /// The sequence of `len` bits whose `i`-th entry is bit `i` of `index`.
    /// Used for exhaustive enumeration; `len` must be at most 64.
    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 64, "length {len} exceeds 64 bits");
        BinaryInvariants {
            bits: (0..len).map(|i| (index >> i) & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// All `2^len` sequences of the given length, in index order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BinaryInvariants> {
        assert!(len < 64, "length {len} too large to enumerate");
        (0..1u64 << len).map(move |i| BinaryInvariants::from_index(i, len))
    }
}

impl fmt::Display for BinaryInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryInvariants {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_binary(s)
    }
}

/// A step sequence satisfying the drawing grammar. Construct through
/// [`parse_steps`], [`StepSequence::from_steps`] or [`binary_to_steps`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepSequence {
    steps: Vec<Step>,
}

impl StepSequence {
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, ParseError> {
        validate_grammar(&steps)?;
        Ok(StepSequence { steps })
    }

    /// The step sequence `D` of a simple tunnel.
    pub fn simple() -> Self {
        StepSequence {
            steps: vec![Step::Down],
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_simple(&self) -> bool {
        self.steps.len() == 1
    }

    pub fn last(&self) -> Step {
        *self.steps.last().expect("step sequences are nonempty")
    }
}

impl fmt::Display for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for StepSequence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_steps(s)
    }
}

/// The turns `t_1, t_2, ...`; `t_1` is always `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TurnSequence {
    turns: Vec<Turn>,
}

impl TurnSequence {
    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn len(&self) -> usize {
        self.turns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.turns.is_empty()
    }
}

impl fmt::Display for TurnSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.turns {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    /// `Step::Left` or `Step::Right`.
    pub letter: Step,
    pub len: usize,
}

/// `D run_1 D run_2 D ... run_k [D]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    pub runs: Vec<Run>,
    pub trailing_d: bool,
}

impl RunDecomposition {
    pub fn to_steps(&self) -> StepSequence {
        let mut steps = Vec::new();
        for run in &self.runs {
            steps.push(Step::Down);
            steps.extend(std::iter::repeat_n(run.letter, run.len));
        }
        if self.trailing_d {
            steps.push(Step::Down);
        }
        StepSequence { steps }
    }
}

pub fn parse_binary(text: &str) -> Result<BinaryInvariants, ParseError> {
    let bits = text
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            found => Err(ParseError::InvalidCharacter {
                position: i + 1,
                found,
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BinaryInvariants { bits })
}

pub fn parse_steps(text: &str) -> Result<StepSequence, ParseError> {
    if text.is_empty() {
        return Err(ParseError::Empty);
    }
    let steps = text
        .chars()
        .enumerate()
        .map(|(i, c)| {
            Step::from_char(c).ok_or(ParseError::InvalidCharacter {
                position: i + 1,
                found: c,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    StepSequence::from_steps(steps)
}

fn validate_grammar(steps: &[Step]) -> Result<(), ParseError> {
    let Some(&first) = steps.first() else {
        return Err(ParseError::Empty);
    };
    if first != Step::Down {
        return Err(ParseError::Grammar {
            position: 1,
            reason: "the first step must be D",
        });
    }
    if let Some(&second) = steps.get(1) {
        if second != Step::Right {
            return Err(ParseError::Grammar {
                position: 2,
                reason: "the second step must be R",
            });
        }
    }
    for (i, pair) in steps.windows(2).enumerate() {
        let reason = match (pair[0], pair[1]) {
            (Step::Down, Step::Down) => "D cannot be followed by D",
            (Step::Left, Step::Right) => "L cannot be followed by R",
            (Step::Right, Step::Left) => "R cannot be followed by L",
            _ => continue,
        };
        return Err(ParseError::Grammar {
            position: i + 2,
            reason,
        });
    }
    Ok(())
}

pub fn binary_to_steps(b: &BinaryInvariants) -> StepSequence {
    let mut steps = Vec::with_capacity(b.len() + 2);
    steps.push(Step::Down);
    steps.push(Step::Right);
    for &bit in b.bits() {
        let prev = steps[steps.len() - 1];
        let next = match prev {
            Step::Left => {
                if bit {
                    Step::Down
                } else {
                    Step::Left
                }
            }
            Step::Right => {
                if bit {
                    Step::Down
                } else {
                    Step::Right
                }
            }
            // D is never the first of two consecutive letters here, and the
            // letter before it is L or R.
            Step::Down => match (steps[steps.len() - 2], bit) {
                (Step::Left, false) | (Step::Right, true) => Step::Right,
                (Step::Right, false) | (Step::Left, true) => Step::Left,
                (Step::Down, _) => unreachable!("DD never occurs"),
            },
        };
        steps.push(next);
    }
    StepSequence { steps }
}

pub fn steps_to_binary(s: &StepSequence) -> Result<BinaryInvariants, SimpleTunnel> {
    if s.is_simple() {
        return Err(SimpleTunnel);
    }
    let steps = s.steps();
    let bits = (2..steps.len())
        .map(|i| match (steps[i - 1], steps[i]) {
            (Step::Down, cur) => {
                // `cur` equal to the letter before the D means a reversal.
                cur == steps[i - 2]
            }
            (_, cur) => cur == Step::Down,
        })
        .collect();
    Ok(BinaryInvariants { bits })
}

pub fn binary_to_turns(b: &BinaryInvariants) -> TurnSequence {
    let mut turns = Vec::with_capacity(b.len() + 1);
    let mut current = Turn::Left;
    turns.push(current);
    for &bit in b.bits() {
        if bit {
            current = current.reversed();
        }
        turns.push(current);
    }
    TurnSequence { turns }
}

pub fn steps_to_turns(s: &StepSequence) -> Result<TurnSequence, SimpleTunnel> {
    steps_to_binary(s).map(|b| binary_to_turns(&b))
}

/// Panics on the simple tunnel `D`, which has no runs.
pub fn run_decomposition(s: &StepSequence) -> RunDecomposition {
    assert!(!s.is_simple(), "the simple tunnel has no run decomposition");
    let mut runs: Vec<Run> = Vec::new();
    let mut after_d = false;
    for &step in &s.steps()[1..] {
        match step {
            Step::Down => after_d = true,
            letter => {
                match runs.last_mut() {
                    Some(run) if !after_d => run.len += 1,
                    _ => runs.push(Run { letter, len: 1 }),
                }
                after_d = false;
            }
        }
    }
    RunDecomposition {
        runs,
        trailing_d: s.last() == Step::Down,
    }
}
