//! Noncommutative monomials and the combinatorics on words needed to put
//! them in cyclic normal form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{self, Limits};

/// A monomial in noncommuting variables, stored as 0-based variable indices.
///
/// The empty word is the monomial `1`. Words are ordered degree-lexicographically:
/// shorter words first, words of equal length by letter index.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(v: u32) -> Self {
        Word(vec![v])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Occurrence count of each variable, indexed by variable.
    pub fn multidegree(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.0.iter().map(|&v| v as usize + 1).max().unwrap_or(0)];
        for &v in &self.0 {
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, e: usize) -> Word {
        Word(self.0.repeat(e))
    }

    /// Rotation starting at position `k` (taken modulo the length).
    pub fn rotation(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |k| self.rotation(k))
    }

    pub fn max_variable(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Writes a single variable: `a`..`z` for indices below 26, `x<i>` otherwise.
pub fn write_variable(f: &mut impl fmt::Write, v: u32) -> fmt::Result {
    if v < 26 {
        f.write_char((b'a' + v as u8) as char)
    } else {
        write!(f, "x{v}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for &v in &self.0 {
            write_variable(f, v)?;
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
    type Err = Error;

    /// Parses juxtaposed variables such as `abba` or `x0x12`; `1` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let bytes = s.as_bytes();
        let mut letters = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos];
            if c == b'x' && pos + 1 < bytes.len() && bytes[pos + 1].is_ascii_digit() {
                let start = pos + 1;
                pos = start;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let v = s[start..pos]
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad variable index in {s:?}")))?;
                letters.push(v);
            } else if c.is_ascii_lowercase() {
                letters.push((c - b'a') as u32);
                pos += 1;
            } else {
                return Err(Error::InvalidArgument(format!(
                    "unexpected character {:?} in word {s:?}",
                    c as char
                )));
            }
        }
        Ok(Word(letters))
    }
}

/// A word written as `root^exponent` up to rotation, with `root` Lyndon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicNormalForm {
    pub root: Word,
    pub exponent: usize,
}

/// Start index of the lexicographically least rotation (two-pointer scan, linear time).
pub fn least_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Length of the primitive root: the smallest period when it divides the length.
fn primitive_root_len(s: &[u32]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let period = n - fail[n - 1];
    if n.is_multiple_of(period) {
        period
    } else {
        n
    }
}

pub fn is_lyndon(w: &Word) -> bool {
    let s = w.letters();
    !s.is_empty() && primitive_root_len(s) == s.len() && least_rotation(s) == 0
}

pub fn cyclic_normalize(w: &Word) -> Result<CyclicNormalForm> {
    let s = w.letters();
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    let root_len = primitive_root_len(s);
    let start = least_rotation(s);
    let root: Vec<u32> = (0..root_len).map(|k| s[(start + k) % s.len()]).collect();
    Ok(CyclicNormalForm {
        root: Word(root),
        exponent: s.len() / root_len,
    })
}

/// All Lyndon words over `alphabet_size` letters of length at most `max_len`,
/// in degree-lexicographic order.
pub fn lyndon_words(alphabet_size: u32, max_len: usize) -> Result<Vec<Word>> {
    lyndon_words_capped(alphabet_size, max_len, Limits::current().max_words)
}

pub fn lyndon_words_capped(alphabet_size: u32, max_len: usize, cap: usize) -> Result<Vec<Word>> {
    if alphabet_size == 0 || max_len == 0 {
        return Err(Error::InvalidArgument(
            "alphabet size and maximal length must be positive".into(),
        ));
    }
    let top = alphabet_size - 1;
    let mut out = Vec::new();
    let mut w: Vec<u32> = vec![0];
    loop {
        out.push(Word(w.clone()));
        limits::check("lyndon word count", out.len(), cap)?;
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort_by_key(|w| w.len());
    Ok(out)
}

/// Replaces each letter of `w` by its image and concatenates.
pub fn substitute_word(w: &Word, images: &BTreeMap<u32, Word>) -> Result<Word> {
    let mut letters = Vec::new();
    for &v in w.letters() {
        let img = images.get(&v).ok_or(Error::MissingImage(v))?;
        letters.extend_from_slice(img.letters());
    }
    Ok(Word(letters))
}

/// Substitution where variable `v` maps to `images[v]`.
pub(crate) fn substitute_positional(w: &Word, images: &[&Word]) -> Word {
    let mut letters = Vec::new();
    for &v in w.letters() {
        letters.extend_from_slice(images[v as usize].letters());
    }
    Word(letters)
}
