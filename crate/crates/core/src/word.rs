//! Signed generators and words over the region generators `X0, X1, ...`.
//!
//! Text form: whitespace-separated tokens `X<k>` and `X<k>^-1`, for example
//! `X1 X2^-1 X0`. The empty word is the empty string.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, Mul};

use crate::error::{Error, Result};

/// Region generator `X_i`; the index is the region label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub u32);

impl Generator {
    pub const OUTER: Generator = Generator(0);

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: u32) -> Letter {
        Letter { generator: Generator(generator), inverse: false }
    }

    pub const fn neg(generator: u32) -> Letter {
        Letter { generator: Generator(generator), inverse: true }
    }

    pub const fn new(generator: u32, inverse: bool) -> Letter {
        Letter { generator: Generator(generator), inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// Dense index `2 * generator + inverse`, used by lookup tables.
    pub fn dense(self) -> usize {
        2 * self.generator.0 as usize + self.inverse as usize
    }

    pub fn from_dense(index: usize) -> Letter {
        Letter::new((index / 2) as u32, index % 2 == 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "X{}^-1", self.generator.0)
        } else {
            write!(f, "X{}", self.generator.0)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Word {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// Group inverse: reversed, each letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Cyclic rotation starting at `start`.
    pub fn rotate(&self, start: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::new();
        }
        let start = start % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[start..]);
        v.extend_from_slice(&self.0[..start]);
        Word(v)
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.0.iter().map(|l| l.generator.0).max()
    }

    /// Parses the whitespace-separated token form.
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let token = &text[start..i];
            letters.push(parse_token(token).ok_or_else(|| Error::WordToken {
                token: token.to_string(),
                position: start,
            })?);
        }
        Ok(Word(letters))
    }
}

fn parse_token(token: &str) -> Option<Letter> {
    let rest = token.strip_prefix('X')?;
    let (digits, inverse) = match rest.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    let generator: u32 = digits.parse().ok()?;
    Some(Letter::new(generator, inverse))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

impl Index<usize> for Word {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = core::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

/// Concatenation.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + rhs.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&rhs.0);
        Word(v)
    }
}

impl Mul<Word> for Word {
    type Output = Word;

    fn mul(mut self, rhs: Word) -> Word {
        self.0.extend(rhs.0);
        self
    }
}

/// Renders a word in the token form; handy for reports.
pub fn format_word(w: &Word) -> String {
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = Word::parse("X1 X2^-1  X0").unwrap();
        assert_eq!(w.letters(), &[Letter::pos(1), Letter::neg(2), Letter::pos(0)]);
        assert_eq!(w.to_string(), "X1 X2^-1 X0");
        assert_eq!(Word::parse("").unwrap(), Word::new());
        assert_eq!(Word::parse("   ").unwrap().to_string(), "");
    }

    #[test]
    fn rejects_bad_tokens() {
        for bad in ["x1", "X", "X-1", "X1^-2", "X1^1", "X01", "X1X2", "Y3"] {
            assert!(Word::parse(bad).is_err(), "{bad}");
        }
        match Word::parse("X1 oops") {
            Err(Error::WordToken { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverse_and_rotation() {
        let w = Word::parse("X1 X2^-1 X3").unwrap();
        assert_eq!(w.inverse().to_string(), "X3^-1 X2 X1^-1");
        assert_eq!(w.rotate(1).to_string(), "X2^-1 X3 X1");
        assert_eq!(Word::new().rotate(3), Word::new());
        assert_eq!(Letter::from_dense(Letter::neg(7).dense()), Letter::neg(7));
    }
}
