//! BWT and extended BWT construction and inversion.
//!
//! Construction sorts all circular rotations of all parts with the ω-order
//! (quadratic-ish, fine for desk-sized inputs). Inversion walks the cycles of
//! the LF mapping between the L column and the F column.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{omega_cmp_cyclic, Word};

/// A multiset of non-empty words, kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    parts: Vec<Word>,
}

impl Decomposition {
    pub fn new(parts: Vec<Word>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        if parts.iter().any(Word::is_empty) {
            return Err(Error::EmptyPart);
        }
        Ok(Decomposition { parts })
    }

    pub fn singleton(w: Word) -> Result<Self> {
        Decomposition::new(vec![w])
    }

    pub fn parts(&self) -> &[Word] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Word> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total_length(&self) -> usize {
        self.parts.iter().map(Word::len).sum()
    }

    /// Concatenation of the parts in order.
    pub fn concat(&self) -> Word {
        Word::concat(&self.parts)
    }

    pub fn min_part_length(&self) -> usize {
        self.parts.iter().map(Word::len).min().unwrap_or(0)
    }

    /// The multiset as a sorted list, for order-insensitive comparison.
    pub fn sorted_parts(&self) -> Vec<Word> {
        let mut v = self.parts.clone();
        v.sort();
        v
    }

    /// The same multiset with duplicates removed (first occurrence kept).
    pub fn dedup(&self) -> Decomposition {
        let mut seen = std::collections::HashSet::new();
        let parts = self
            .parts
            .iter()
            .filter(|p| seen.insert(*p))
            .cloned()
            .collect();
        Decomposition { parts }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Decomposition {
    type Err = Error;

    /// Parses the comma-joined form, e.g. `baa,bab`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        Decomposition::new(s.split(',').map(|p| Word::from(p.trim())).collect())
    }
}

/// The L column of an (e)BWT matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EbwtResult {
    l_column: Word,
}

impl EbwtResult {
    pub fn l_column(&self) -> &Word {
        &self.l_column
    }

    pub fn into_l_column(self) -> Word {
        self.l_column
    }

    /// Symbols of L sorted ascending.
    pub fn f_column(&self) -> Word {
        let mut v = self.l_column.as_bytes().to_vec();
        v.sort_unstable();
        Word::new(v)
    }

    pub fn len(&self) -> usize {
        self.l_column.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l_column.is_empty()
    }

    pub fn runs(&self) -> usize {
        self.l_column.runs()
    }
}

impl fmt::Display for EbwtResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.l_column.fmt(f)
    }
}

/// One row of the eBWT matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRow {
    pub rotation: Word,
    pub last: u8,
}

/// (part, shift) pairs for every rotation, sorted by ω-order; stable with
/// respect to input order on ties.
fn sorted_rotations(parts: &[Word]) -> Vec<(usize, usize)> {
    let mut rows: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| (0..p.len()).map(move |s| (i, s)))
        .collect();
    rows.sort_by(|&(i, s), &(j, t)| {
        omega_cmp_cyclic(parts[i].as_bytes(), s, parts[j].as_bytes(), t)
    });
    rows
}

fn last_symbol(p: &Word, shift: usize) -> u8 {
    let b = p.as_bytes();
    b[(shift + b.len() - 1) % b.len()]
}

/// BWT of a single word over its circular rotations (no sentinel).
pub fn bwt(w: &Word) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(ebwt(&Decomposition::singleton(w.clone())?).into_l_column())
}

/// Extended BWT of a multiset of words.
pub fn ebwt(parts: &Decomposition) -> EbwtResult {
    let p = parts.parts();
    let l = sorted_rotations(p)
        .into_iter()
        .map(|(i, s)| last_symbol(&p[i], s))
        .collect::<Vec<_>>();
    EbwtResult {
        l_column: Word::new(l),
    }
}

/// The sorted rotation matrix, one row per rotation.
pub fn ebwt_matrix(parts: &Decomposition) -> Vec<MatrixRow> {
    let p = parts.parts();
    sorted_rotations(p)
        .into_iter()
        .map(|(i, s)| MatrixRow {
            rotation: p[i].rotation(s),
            last: last_symbol(&p[i], s),
        })
        .collect()
}

/// Number of runs of the eBWT.
pub fn rho(parts: &Decomposition) -> usize {
    ebwt(parts).runs()
}

/// LF mapping: row `r` of L maps to the F row holding the same occurrence
/// of the symbol `L[r]`.
pub fn lf_mapping(l: &[u8]) -> Vec<usize> {
    let mut counts = [0usize; 256];
    for &c in l {
        counts[c as usize] += 1;
    }
    let mut next = [0usize; 256];
    let mut acc = 0;
    for c in 0..256 {
        next[c] = acc;
        acc += counts[c];
    }
    l.iter()
        .map(|&c| {
            let r = next[c as usize];
            next[c as usize] += 1;
            r
        })
        .collect()
}

/// Cycles of a permutation, each starting at its smallest unvisited index.
pub(crate) fn permutation_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            cycle.push(r);
            r = perm[r];
        }
        cycles.push(cycle);
    }
    cycles
}

/// Recovers the multiset of primitive words whose eBWT is `l`.
///
/// Each part is returned as its least rotation; parts are sorted by ω-order.
pub fn invert_ebwt(l: &Word) -> Result<Decomposition> {
    if l.is_empty() {
        return Err(Error::EmptyWord);
    }
    let bytes = l.as_bytes();
    let lf = lf_mapping(bytes);
    let mut parts: Vec<Word> = permutation_cycles(&lf)
        .into_iter()
        .map(|cycle| {
            // L[r] precedes F[r], so following LF reads the word backwards
            let mut w: Vec<u8> = cycle.iter().map(|&r| bytes[r]).collect();
            w.reverse();
            Word::new(w).least_rotation()
        })
        .collect();
    parts.sort_by(|u, v| omega_cmp_cyclic(u.as_bytes(), 0, v.as_bytes(), 0));
    Decomposition::new(parts)
}
