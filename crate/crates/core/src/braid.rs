//! Braid words, Markov moves and marked closure diagrams.
//!
//! Letter `i > 0` is the positive crossing between strands `i` and `i+1`,
//! `-i` its inverse. Words are read from the bottom of the braid upwards.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i32 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    /// The underlying permutation: `perm[p]` is the top position reached by
    /// the strand starting at bottom position `p` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (top, &bottom) in at.iter().enumerate() {
            perm[bottom] = top;
        }
        perm
    }

    /// Mirror image: every crossing changes sign.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }
}

/// Canonical text form `n=<strands> <letters...>`, which [`parse_braid`] reads back.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Parses `[1,-2,1]`, `1 -2 1` or `1,-2,1`, optionally preceded by `n=<strands>`.
///
/// An explicit `strands` argument takes precedence over the prefix. Without
/// either, the braid gets one strand more than the largest letter.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let mut t = text.trim();
    let mut prefix = None;
    if let Some(rest) = t.strip_prefix("n=") {
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        let n: usize = rest[..end]
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count in {text:?}")))?;
        prefix = Some(n);
        t = rest[end..].trim();
    }
    let inner = match (t.starts_with('['), t.ends_with(']')) {
        (true, true) => &t[1..t.len() - 1],
        (false, false) => t,
        _ => return Err(Error::Parse(format!("unbalanced brackets in {text:?}"))),
    };
    let mut letters = Vec::new();
    for tok in inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
    {
        let v: i32 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad braid letter {tok:?}")))?;
        if v == 0 {
            return Err(Error::Parse("braid letter 0 is not allowed".into()));
        }
        letters.push(v);
    }
    let needed = letters
        .iter()
        .map(|l| l.unsigned_abs() as usize + 1)
        .max()
        .unwrap_or(1);
    let n = strands.or(prefix).unwrap_or(needed);
    BraidWord::new(n, letters)
}

/// Number of components of the closure.
pub fn closure_components(b: &BraidWord) -> usize {
    let perm = b.permutation();
    let mut seen = vec![false; b.strands];
    let mut count = 0;
    for s in 0..b.strands {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = perm[p];
        }
    }
    count
}

/// A move that preserves the closure up to isotopy.
///
/// Positions are 0-based indices into the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarkovMove {
    /// Cyclic rotation: the first `shift` letters move to the end.
    Conjugate { shift: usize },
    /// Swaps letters `pos` and `pos+1`, which must act on distant strands.
    FarCommute { pos: usize },
    /// Removes a letter followed by its inverse at `pos`.
    CancelPair { pos: usize },
    /// Inserts `letter, -letter` before position `pos`.
    InsertPair { pos: usize, letter: i32 },
    /// Rewrites `i j i` as `j i j` at `pos` when `|i| - |j| = ±1` and all signs agree.
    BraidRelation { pos: usize },
    /// Adds a strand and a positive crossing with it at the top.
    StabilizePositive,
    /// Adds a strand and a negative crossing with it at the top.
    StabilizeNegative,
    /// Undoes a stabilization at the top of the word.
    Destabilize,
}

fn bad(msg: String) -> Error {
    Error::InvalidMove(msg)
}

pub fn apply_markov(b: &BraidWord, mv: &MarkovMove) -> Result<BraidWord> {
    let mut w = b.letters.clone();
    let n = b.strands;
    match *mv {
        MarkovMove::Conjugate { shift } => {
            if !w.is_empty() {
                let s = shift % w.len();
                w.rotate_left(s);
            }
            BraidWord::new(n, w)
        }
        MarkovMove::FarCommute { pos } => {
            if pos + 1 >= w.len() {
                return Err(bad(format!("far commutation at {pos} is out of range")));
            }
            if (w[pos].abs() - w[pos + 1].abs()).abs() < 2 {
                return Err(bad(format!(
                    "letters {} and {} do not commute",
                    w[pos],
                    w[pos + 1]
                )));
            }
            w.swap(pos, pos + 1);
            BraidWord::new(n, w)
        }
        MarkovMove::CancelPair { pos } => {
            if pos + 1 >= w.len() || w[pos] != -w[pos + 1] {
                return Err(bad(format!("no cancelling pair at {pos}")));
            }
            w.drain(pos..pos + 2);
            BraidWord::new(n, w)
        }
        MarkovMove::InsertPair { pos, letter } => {
            if pos > w.len() {
                return Err(bad(format!("insertion point {pos} is out of range")));
            }
            if letter == 0 || letter.unsigned_abs() as usize >= n {
                return Err(Error::LetterOutOfRange { letter, strands: n });
            }
            w.splice(pos..pos, [letter, -letter]);
            BraidWord::new(n, w)
        }
        MarkovMove::BraidRelation { pos } => {
            if pos + 2 >= w.len() {
                return Err(bad(format!("braid relation at {pos} is out of range")));
            }
            let (x, y, z) = (w[pos], w[pos + 1], w[pos + 2]);
            let same_sign = x.signum() == y.signum() && y.signum() == z.signum();
            if x != z || (x.abs() - y.abs()).abs() != 1 || !same_sign {
                return Err(bad(format!(
                    "letters {x},{y},{z} do not form a braid relation"
                )));
            }
            w[pos] = y;
            w[pos + 1] = x;
            w[pos + 2] = y;
            BraidWord::new(n, w)
        }
        MarkovMove::StabilizePositive | MarkovMove::StabilizeNegative => {
            let l = n as i32;
            w.push(if *mv == MarkovMove::StabilizePositive {
                l
            } else {
                -l
            });
            BraidWord::new(n + 1, w)
        }
        MarkovMove::Destabilize => {
            let top = n as i32 - 1;
            match w.last() {
                Some(&l) if l.abs() == top && top >= 1 => {}
                _ => return Err(bad(format!("the last letter is not ±{top}"))),
            }
            w.pop();
            if w.iter().any(|l| l.abs() == top) {
                return Err(bad(format!("letter {top} occurs more than once")));
            }
            BraidWord::new(n - 1, w)
        }
    }
}

/// Parses `conjugate:1`, `far-commute:2`, `cancel-pair:0`, `insert-pair:0:1`,
/// `braid-relation:0`, `stabilize+`, `stabilize-` or `destabilize`.
pub fn parse_move(text: &str) -> Result<MarkovMove> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    let num = |i: usize| -> Result<i64> {
        parts
            .get(i)
            .ok_or_else(|| Error::Parse(format!("move {text:?} needs an argument")))?
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad number in move {text:?}")))
    };
    let pos = |i: usize| -> Result<usize> {
        let v = num(i)?;
        usize::try_from(v).map_err(|_| Error::Parse(format!("negative position in move {text:?}")))
    };
    let arity = |k: usize| -> Result<()> {
        if parts.len() == k + 1 {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "move {text:?} expects {k} argument(s)"
            )))
        }
    };
    let mv = match parts[0] {
        "conjugate" => {
            arity(1)?;
            MarkovMove::Conjugate { shift: pos(1)? }
        }
        "far-commute" => {
            arity(1)?;
            MarkovMove::FarCommute { pos: pos(1)? }
        }
        "cancel-pair" => {
            arity(1)?;
            MarkovMove::CancelPair { pos: pos(1)? }
        }
        "insert-pair" => {
            arity(2)?;
            MarkovMove::InsertPair {
                pos: pos(1)?,
                letter: num(2)? as i32,
            }
        }
        "braid-relation" => {
            arity(1)?;
            MarkovMove::BraidRelation { pos: pos(1)? }
        }
        "stabilize+" | "stabilize-positive" => {
            arity(0)?;
            MarkovMove::StabilizePositive
        }
        "stabilize-" | "stabilize-negative" => {
            arity(0)?;
            MarkovMove::StabilizeNegative
        }
        "destabilize" => {
            arity(0)?;
            MarkovMove::Destabilize
        }
        other => return Err(Error::Parse(format!("unknown move {other:?}"))),
    };
    Ok(mv)
}

/// One crossing of a marked diagram with its four local variables.
///
/// `x1`, `x2` are the outgoing ends on top (left, right), `x3`, `x4` the
/// incoming ends at the bottom (right, left).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkedCrossing {
    pub positive: bool,
    /// 1-based strand position of the left strand.
    pub position: usize,
    pub x1: usize,
    pub x2: usize,
    pub x3: usize,
    pub x4: usize,
}

/// An oriented arc between two marks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

/// The closure of a braid with one variable per mark.
///
/// Variables `0..n` sit at the bottom of the braid. Each crossing creates
/// two new variables for its top ends. Closure arcs run from the top of each
/// position back to its bottom, subdivided by extra marks when requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedDiagram {
    pub strands: usize,
    pub num_vars: usize,
    pub crossings: Vec<MarkedCrossing>,
    pub arcs: Vec<Arc>,
    /// Bottom variable of each strand position.
    pub bottom: Vec<usize>,
    /// Top variable of each strand position.
    pub top: Vec<usize>,
}

impl MarkedDiagram {
    pub fn var_name(i: usize) -> String {
        format!("x{}", i + 1)
    }
}

pub fn build_marked_diagram(b: &BraidWord, marks_per_segment: usize) -> Result<MarkedDiagram> {
    if marks_per_segment == 0 {
        return Err(Error::Invalid(
            "marks per segment must be at least 1".into(),
        ));
    }
    let n = b.strands;
    let bottom: Vec<usize> = (0..n).collect();
    let mut cur = bottom.clone();
    let mut next = n;
    let mut crossings = Vec::with_capacity(b.len());
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let (x4, x3) = (cur[i], cur[i + 1]);
        let (x1, x2) = (next, next + 1);
        next += 2;
        cur[i] = x1;
        cur[i + 1] = x2;
        crossings.push(MarkedCrossing {
            positive: l > 0,
            position: i + 1,
            x1,
            x2,
            x3,
            x4,
        });
    }
    let mut arcs = Vec::new();
    for p in 0..n {
        let mut tail = cur[p];
        for _ in 1..marks_per_segment {
            arcs.push(Arc { tail, head: next });
            tail = next;
            next += 1;
        }
        arcs.push(Arc {
            tail,
            head: bottom[p],
        });
    }
    Ok(MarkedDiagram {
        strands: n,
        num_vars: next,
        crossings,
        arcs,
        bottom,
        top: cur,
    })
}
