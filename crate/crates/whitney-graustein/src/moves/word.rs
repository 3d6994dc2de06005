//! Cyclic cusp-word calculus: cancelling adjacent mixed pairs until a normal
//! form remains.
//!
//! Cancelling one `+` and one `-` preserves `(c₋ - c₊)/2`, so the normal form
//! is forced by that value: `2v` minus signs for `v > 0`, `2|v|` plus signs
//! for `v < 0`, and a single mixed pair for `v = 0`. The reducer never goes
//! below length two — a closed front always keeps at least one left and one
//! right cusp.

use std::fmt;

use crate::error::Result;
use crate::legendrian::{CuspOrientation, CuspWord, Side};

/// One cancellation: the pair sat at `position` and `position + 1` (cyclic)
/// in the word as it looked before this step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub position: usize,
    pub pair: (CuspOrientation, CuspOrientation),
    /// True when the pair wrapped around the end of the stored sequence.
    pub wrapped: bool,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cancel ({}, {}){}: {}{}",
            self.position,
            self.position + 1,
            if self.wrapped { " [wrap]" } else { "" },
            self.pair.0,
            self.pair.1
        )
    }
}

/// The full rewrite history of one reduction.
#[derive(Debug, Clone, Default)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

/// Reduces a word by repeatedly cancelling the leftmost cyclically adjacent
/// mixed pair. Terminates with all-equal letters or a length-2 mixed word,
/// which is stored canonically as `(+,-)`.
pub fn reduce_word(word: &CuspWord) -> Result<(CuspWord, ReductionTrace)> {
    let mut letters: Vec<(CuspOrientation, Side)> = word
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, word.side_at(i)))
        .collect();
    let mut trace = ReductionTrace::default();

    loop {
        let len = letters.len();
        if len == 2 {
            break;
        }
        let Some(i) = (0..len).find(|&i| letters[i].0 != letters[(i + 1) % len].0) else {
            break; // all letters equal
        };
        let j = (i + 1) % len;
        trace.steps.push(TraceStep {
            position: i,
            pair: (letters[i].0, letters[j].0),
            wrapped: j < i,
        });
        if j < i {
            // Wrapping pair: drop the last and first letters.
            letters.pop();
            letters.remove(0);
        } else {
            letters.drain(i..=j);
        }
    }

    // Canonical representation of the mixed length-2 word.
    if letters.len() == 2
        && letters[0].0 != letters[1].0
        && letters[0].0 == CuspOrientation::Down
    {
        letters.rotate_left(1);
    }

    let first_side = letters[0].1;
    let out = CuspWord::new(letters.into_iter().map(|(l, _)| l).collect(), first_side)?;
    Ok((out, trace))
}
