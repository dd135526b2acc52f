//! Binary words packed into a single machine word.
//!
//! A [`Word`] stores up to [`MAX_LEN`] digits. The leftmost digit is the most
//! significant of the `len` low bits, so prefixes are right shifts, suffixes are
//! masks and concatenation is a shift-or.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Longest word representable.
pub const MAX_LEN: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("invalid character {found:?} at position {position}")]
    InvalidChar { position: usize, found: char },
    #[error("word of length {0} exceeds the maximum length {MAX_LEN}")]
    TooLong(usize),
    #[error("identical words")]
    IdenticalWords,
}

/// A finite word over `{0, 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    bits: u64,
    len: u8,
}

#[inline]
fn mask(r: usize) -> u64 {
    if r >= 64 {
        u64::MAX
    } else {
        (1u64 << r) - 1
    }
}

impl Word {
    /// The empty word. Only meaningful as an automaton vertex label.
    pub const EMPTY: Word = Word { bits: 0, len: 0 };

    /// Builds a word from its `len` low bits, leftmost digit most significant.
    pub fn from_bits(bits: u64, len: usize) -> Result<Word, WordError> {
        if len > MAX_LEN {
            return Err(WordError::TooLong(len));
        }
        Ok(Word {
            bits: bits & mask(len),
            len: len as u8,
        })
    }

    pub fn from_digits(digits: &[u8]) -> Result<Word, WordError> {
        if digits.len() > MAX_LEN {
            return Err(WordError::TooLong(digits.len()));
        }
        let mut bits = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            if d > 1 {
                return Err(WordError::InvalidChar {
                    position: i + 1,
                    found: char::from(b'0' + d.min(9)),
                });
            }
            bits = (bits << 1) | d as u64;
        }
        Ok(Word {
            bits,
            len: digits.len() as u8,
        })
    }

    /// `digit` repeated `n` times.
    pub fn constant(digit: u8, n: usize) -> Result<Word, WordError> {
        if n > MAX_LEN {
            return Err(WordError::TooLong(n));
        }
        let bits = if digit == 0 { 0 } else { mask(n) };
        Ok(Word { bits, len: n as u8 })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Digit at zero-based position `i` from the left.
    #[inline]
    pub fn digit(&self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits >> (self.len() - 1 - i)) & 1) as u8
    }

    pub fn digits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |i| self.digit(i))
    }

    pub fn to_digits(&self) -> Vec<u8> {
        self.digits().collect()
    }

    #[inline]
    pub fn ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    #[inline]
    pub fn bitflip(&self) -> Word {
        Word {
            bits: !self.bits & mask(self.len()),
            len: self.len,
        }
    }

    pub fn reverse(&self) -> Word {
        let bits = if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.len())
        };
        Word {
            bits,
            len: self.len,
        }
    }

    /// The first `r` digits. Panics if `r > len`.
    #[inline]
    pub fn prefix(&self, r: usize) -> Word {
        assert!(r <= self.len(), "prefix longer than word");
        Word {
            bits: self.bits >> (self.len() - r),
            len: r as u8,
        }
    }

    /// The last `r` digits. Panics if `r > len`.
    #[inline]
    pub fn suffix(&self, r: usize) -> Word {
        assert!(r <= self.len(), "suffix longer than word");
        Word {
            bits: self.bits & mask(r),
            len: r as u8,
        }
    }

    /// Appends a single digit.
    pub fn push(&self, digit: u8) -> Result<Word, WordError> {
        if self.len() >= MAX_LEN {
            return Err(WordError::TooLong(self.len() + 1));
        }
        Ok(Word {
            bits: (self.bits << 1) | (digit & 1) as u64,
            len: self.len + 1,
        })
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        let len = self.len() + other.len();
        if len > MAX_LEN {
            return Err(WordError::TooLong(len));
        }
        let bits = if other.len == 0 {
            self.bits
        } else {
            (self.bits << other.len()) | other.bits
        };
        Ok(Word {
            bits,
            len: len as u8,
        })
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> Result<Word, WordError> {
        let mut out = Word::EMPTY;
        for _ in 0..times {
            out = out.concat(self)?;
        }
        Ok(out)
    }

    #[inline]
    pub fn starts_with(&self, other: &Word) -> bool {
        other.len() <= self.len() && self.prefix(other.len()) == *other
    }

    #[inline]
    pub fn ends_with(&self, other: &Word) -> bool {
        other.len() <= self.len() && self.suffix(other.len()) == *other
    }

    /// True when `pattern` occurs in `self` starting at zero-based position `i`.
    #[inline]
    pub fn occurs_at(&self, pattern: &Word, i: usize) -> bool {
        let end = i + pattern.len();
        end <= self.len() && (self.bits >> (self.len() - end)) & mask(pattern.len()) == pattern.bits
    }

    /// Leftmost zero-based position of `pattern` in `self`.
    ///
    /// Each candidate position is a single masked compare on the packed bits.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.len() > self.len() {
            return None;
        }
        let m = mask(pattern.len());
        let last = self.len() - pattern.len();
        (0..=last).find(|&i| (self.bits >> (last - i)) & m == pattern.bits)
    }

    #[inline]
    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    /// All `2^n` words of length `n`, in increasing lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!(n <= 32, "enumerating all words of length {n} is not supported");
        (0..(1u64 << n)).map(move |bits| Word { bits, len: n as u8 })
    }
}

impl Ord for Word {
    /// Plain lexicographic order on the digit strings, with `0 < 1` and a
    /// proper prefix sorting first.
    fn cmp(&self, other: &Self) -> Ordering {
        let m = self.len().min(other.len());
        self.prefix(m)
            .bits
            .cmp(&other.prefix(m).bits)
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.digits() {
            f.write_str(if d == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Word, WordError> {
        make_word(text)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let text = String::deserialize(d)?;
        make_word(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses `0`/`1` text. Positions in errors are 1-based.
pub fn make_word(text: &str) -> Result<Word, WordError> {
    if text.is_empty() {
        return Err(WordError::Empty);
    }
    let mut bits = 0u64;
    let mut len = 0usize;
    for (i, ch) in text.chars().enumerate() {
        let d = match ch {
            '0' => 0,
            '1' => 1,
            other => {
                return Err(WordError::InvalidChar {
                    position: i + 1,
                    found: other,
                })
            }
        };
        len += 1;
        if len > MAX_LEN {
            return Err(WordError::TooLong(text.chars().count()));
        }
        bits = (bits << 1) | d;
    }
    Ok(Word {
        bits,
        len: len as u8,
    })
}

/// Border array: `fail[i]` is the length of the longest proper border of the
/// first `i + 1` digits.
pub fn failure_function(pattern: &[u8]) -> Vec<usize> {
    let mut fail = vec![0; pattern.len()];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Counts (possibly overlapping) occurrences of `pattern` in a digit sequence.
pub fn occurrences_in(pattern: &Word, text: &[u8]) -> usize {
    let pat = pattern.to_digits();
    if pat.is_empty() || pat.len() > text.len() {
        return 0;
    }
    let fail = failure_function(&pat);
    let mut k = 0;
    let mut count = 0;
    for &d in text {
        while k > 0 && d != pat[k] {
            k = fail[k - 1];
        }
        if d == pat[k] {
            k += 1;
        }
        if k == pat.len() {
            count += 1;
            k = fail[k - 1];
        }
    }
    count
}

/// Number of starting positions at which `pattern` occurs in `text`.
pub fn occurrences(pattern: &Word, text: &Word) -> usize {
    if pattern.len() > text.len() {
        return 0;
    }
    occurrences_in(pattern, &text.to_digits())
}

/// Which race outcome a word represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OmegaClass {
    InOmegaV,
    InOmegaW,
    NotInOmega,
}

impl OmegaClass {
    /// Exchanges the roles of the two words.
    pub fn swap(self) -> OmegaClass {
        match self {
            OmegaClass::InOmegaV => OmegaClass::InOmegaW,
            OmegaClass::InOmegaW => OmegaClass::InOmegaV,
            OmegaClass::NotInOmega => OmegaClass::NotInOmega,
        }
    }
}

/// Digit-sequence form of [`omega_class`], for texts longer than [`MAX_LEN`].
pub fn omega_class_digits(u: &[u8], v: &Word, w: &Word) -> OmegaClass {
    let ends_with = |x: &Word| {
        x.len() <= u.len() && u[u.len() - x.len()..].iter().copied().eq(x.digits())
    };
    if ends_with(v) && occurrences_in(v, u) == 1 && occurrences_in(w, u) == 0 {
        OmegaClass::InOmegaV
    } else if ends_with(w) && occurrences_in(w, u) == 1 && occurrences_in(v, u) == 0 {
        OmegaClass::InOmegaW
    } else {
        OmegaClass::NotInOmega
    }
}

/// Classifies `u` as a race won by `v`, won by `w`, or neither.
///
/// `u` is won by `v` when it ends with `v`, contains `v` exactly once and does
/// not contain `w` at all.
pub fn omega_class(u: &Word, v: &Word, w: &Word) -> Result<OmegaClass, WordError> {
    if v == w {
        return Err(WordError::IdenticalWords);
    }
    if v.is_empty() || w.is_empty() {
        return Err(WordError::Empty);
    }
    Ok(omega_class_unchecked(u, v, w))
}

/// [`omega_class`] without the argument checks, using packed window compares.
#[inline]
pub(crate) fn omega_class_unchecked(u: &Word, v: &Word, w: &Word) -> OmegaClass {
    let count = |x: &Word, limit: usize| {
        if x.len() > u.len() {
            return 0;
        }
        let mut c = 0;
        for i in 0..=(u.len() - x.len()) {
            if u.occurs_at(x, i) {
                c += 1;
                if c > limit {
                    break;
                }
            }
        }
        c
    };
    if u.ends_with(v) && count(w, 0) == 0 && count(v, 1) == 1 {
        OmegaClass::InOmegaV
    } else if u.ends_with(w) && count(v, 0) == 0 && count(w, 1) == 1 {
        OmegaClass::InOmegaW
    } else {
        OmegaClass::NotInOmega
    }
}
