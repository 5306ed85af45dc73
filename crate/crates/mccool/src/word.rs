//! Freely reduced words in a free group of fixed rank.
//!
//! A [`Word`] carries its ambient rank explicitly: operations on words of
//! different ranks are errors rather than silent embeddings, so index-shift
//! bugs across ranks surface immediately.  Letters are stored as a flat
//! sequence with no exponent compression.
//!
//! Text format: tokens separated by spaces or `*`; `x3` is the third
//! generator, `X3` its inverse; the empty string is the identity.

use std::fmt;

use crate::{Error, Result};

/// A single signed generator occurrence, `x_index` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: u32,
    /// `+1` for `x_index`, `-1` for its inverse.
    pub sign: i8,
}

impl Letter {
    pub fn new(index: u32, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { index, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: -self.sign }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign == -other.sign
    }
}

/// A freely reduced word over the generators `x_1 .. x_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    /// Freely reduces a raw letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(rank: u32, letters: I) -> Result<Self> {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if l.index == 0 || l.index > rank {
                return Err(Error::IndexOutOfRange { index: l.index, rank });
            }
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Ok(Word { rank, letters: stack })
    }

    pub fn identity(rank: u32) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The single-letter word `x_index^sign`.
    pub fn generator(rank: u32, index: u32, sign: i8) -> Result<Self> {
        Word::reduce(rank, [Letter::new(index, sign)])
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Freely reduced concatenation `self * other`.
    ///
    /// Both inputs are already reduced, so cancellation only happens at the
    /// junction.
    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Ok(Word { rank: self.rank, letters: stack })
    }

    /// The group inverse: reversed sequence with flipped signs.
    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// The commutator `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        self.invert()
            .multiply(&other.invert())?
            .multiply(self)?
            .multiply(other)
    }

    /// Re-reads the word at a larger rank.
    pub fn with_rank(&self, rank: u32) -> Result<Word> {
        Word::reduce(rank, self.letters.iter().copied())
    }

    /// Detects the conjugate-of-a-generator shape `U^-1 * x_j^s * U`.
    ///
    /// Matched inverse pairs are peeled off both ends until a single letter
    /// remains, which makes the returned conjugator the shortest one.
    /// Returns `None` when the word is not of this shape.
    pub fn peel_conjugate(&self) -> Option<(Word, u32, i8)> {
        if self.letters.len().is_multiple_of(2) {
            return None;
        }
        let m = self.letters.len();
        let mut t = 0;
        while m - 2 * t > 1 && self.letters[t].cancels(self.letters[m - 1 - t]) {
            t += 1;
        }
        if m - 2 * t != 1 {
            return None;
        }
        let center = self.letters[t];
        let conjugator = Word {
            rank: self.rank,
            letters: self.letters[m - t..].to_vec(),
        };
        Some((conjugator, center.index, center.sign))
    }

    /// Parses the space/`*`-separated token format.
    pub fn parse(text: &str, rank: u32) -> Result<Word> {
        let mut letters = Vec::new();
        let mut pos = 0;
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() {
                pos += 1;
                continue;
            }
            let mut chars = token.chars();
            let head = chars.next().unwrap();
            let sign = match head {
                'x' => 1,
                'X' => -1,
                _ => {
                    return Err(Error::Parse {
                        pos,
                        message: format!("expected x<k> or X<k>, found `{token}`"),
                    })
                }
            };
            let digits = chars.as_str();
            let index: u32 = digits.parse().map_err(|_| Error::Parse {
                pos,
                message: format!("bad generator index in `{token}`"),
            })?;
            if index == 0 || index > rank {
                return Err(Error::IndexOutOfRange { index, rank });
            }
            letters.push(Letter::new(index, sign));
            pos += token.len() + 1;
        }
        Word::reduce(rank, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let c = if l.sign > 0 { 'x' } else { 'X' };
            write!(f, "{}{}", c, l.index)?;
        }
        Ok(())
    }
}
