//! Alphabets, words, runs, rotations and the ω-order.
//!
//! Symbols are single bytes. An [`Alphabet`] fixes the symbol order and the
//! size σ used by the run bounds elsewhere in the crate; when none is declared
//! it defaults to the sorted distinct symbols of the input.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered set of distinct byte symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    /// Declares an alphabet. Symbols are ordered by byte value regardless of
    /// the order given.
    pub fn new(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut sorted = symbols.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSymbol(w[0] as char));
        }
        Ok(Alphabet { symbols: sorted })
    }

    /// The sorted distinct symbols occurring in `words`.
    pub fn infer<'a, I>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut seen = [false; 256];
        for w in words {
            for &c in w.as_bytes() {
                seen[c as usize] = true;
            }
        }
        let symbols: Vec<u8> = (0..=255u8).filter(|&c| seen[c as usize]).collect();
        Alphabet::new(&symbols)
    }

    /// The first `sigma` lowercase letters.
    pub fn letters(sigma: usize) -> Result<Self> {
        if sigma == 0 || sigma > 26 {
            return Err(Error::InvalidParameter(format!(
                "letter alphabet size must be in 1..=26, got {sigma}"
            )));
        }
        Alphabet::new(&(b'a'..b'a' + sigma as u8).collect::<Vec<_>>())
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn contains(&self, c: u8) -> bool {
        self.symbols.binary_search(&c).is_ok()
    }

    /// Checks that every symbol of `w` belongs to this alphabet.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.as_bytes().iter().find(|&&c| !self.contains(c)) {
            Some(&c) => Err(Error::SymbolNotInAlphabet(c as char)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.symbols))
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alphabet::new(s.as_bytes())
    }
}

/// A finite sequence of byte symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Self {
        Word(symbols.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    /// Number of adjacent unequal symbol pairs (blocks minus one).
    pub fn runs(&self) -> usize {
        runs(&self.0)
    }

    /// The rotation starting at `shift`.
    pub fn rotation(&self, shift: usize) -> Word {
        let shift = shift % self.len().max(1);
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[shift..]);
        v.extend_from_slice(&self.0[..shift]);
        Word(v)
    }

    /// All `|w|` circular rotations in shift order, duplicates included.
    pub fn rotations(&self) -> Result<Vec<Word>> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok((0..self.len()).map(|s| self.rotation(s)).collect())
    }

    /// Primitive root and exponent.
    pub fn root_exp(&self) -> Result<RootExp> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let period = smallest_period(&self.0);
        let n = self.len();
        let root_len = if n.is_multiple_of(period) { period } else { n };
        Ok(RootExp {
            root: Word(self.0[..root_len].to_vec()),
            exponent: n / root_len,
        })
    }

    pub fn is_primitive(&self) -> bool {
        self.root_exp().map(|re| re.exponent == 1).unwrap_or(false)
    }

    /// Lexicographically least rotation.
    pub fn least_rotation(&self) -> Word {
        if self.is_empty() {
            return Word::default();
        }
        self.rotation(least_rotation_start(&self.0))
    }

    /// `true` when the word is strictly smaller than each of its proper
    /// rotations.
    pub fn is_lyndon(&self) -> bool {
        !self.is_empty() && (1..self.len()).all(|s| self.0[..] < self.rotation(s).0[..])
    }

    pub fn concat<'a, I>(parts: I) -> Word
    where
        I: IntoIterator<Item = &'a Word>,
    {
        Word(
            parts
                .into_iter()
                .flat_map(|w| w.0.iter().copied())
                .collect(),
        )
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.as_bytes().to_vec())
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl AsRef<[u8]> for Word {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Word::from(s))
    }
}

/// A word written as `root^exponent` with a primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootExp {
    pub root: Word,
    pub exponent: usize,
}

/// Counts positions `i` with `s[i] != s[i + 1]`.
pub fn runs(s: &[u8]) -> usize {
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Smallest period of `s` from the border (failure) function.
fn smallest_period(s: &[u8]) -> usize {
    let n = s.len();
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
    n - fail[n - 1]
}

/// Start index of the least rotation (Booth's algorithm).
pub(crate) fn least_rotation_start(s: &[u8]) -> usize {
    let n = s.len();
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k: usize = 0;
    let at = |i: usize| s[i % n];
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// ω-order on two non-empty words.
///
/// Compares `u^ω` and `v^ω` over their first `|u| + |v|` symbols; if they
/// agree there the roots coincide and the shorter word is smaller.
pub fn omega_compare(u: &Word, v: &Word) -> Result<Ordering> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(omega_cmp_cyclic(u.as_bytes(), 0, v.as_bytes(), 0))
}

/// ω-order between the rotation of `a` starting at `sa` and the rotation of
/// `b` starting at `sb`, without materialising either rotation.
pub(crate) fn omega_cmp_cyclic(a: &[u8], sa: usize, b: &[u8], sb: usize) -> Ordering {
    let (la, lb) = (a.len(), b.len());
    let (mut i, mut j) = (sa, sb);
    for _ in 0..la + lb {
        match a[i].cmp(&b[j]) {
            Ordering::Equal => {}
            other => return other,
        }
        i += 1;
        if i == la {
            i = 0;
        }
        j += 1;
        if j == lb {
            j = 0;
        }
    }
    la.cmp(&lb)
}
