//! k-restricted decompositions: counting, enumeration, extremal search and
//! the constructive block decomposition.
//!
//! A decomposition of a word is fully described by the ordered list of its
//! part lengths, so everything here works on [`Composition`]s and only
//! slices the word when a run count is needed.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::transform::{rho, Decomposition};
use crate::word::{Alphabet, Word};

/// Default cap on the number of compositions an exhaustive search visits.
pub const DEFAULT_SEARCH_LIMIT: u64 = 2_000_000;

/// An ordered list of part sizes, each at least `min_part`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    min_part: usize,
}

impl Composition {
    pub fn new(parts: Vec<usize>, min_part: usize) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyDecomposition);
        }
        let floor = min_part.max(1);
        if let Some(&p) = parts.iter().find(|&&p| p < floor) {
            return Err(Error::PartTooSmall {
                part: p,
                min: floor,
            });
        }
        Ok(Composition {
            parts,
            min_part: floor,
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn min_part(&self) -> usize {
        self.min_part
    }

    /// The part lengths of `d`, with floor 1.
    pub fn of(d: &Decomposition) -> Composition {
        Composition {
            parts: d.parts().iter().map(Word::len).collect(),
            min_part: 1,
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `2+2+2`; the floor is set to 1.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('+')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad composition part '{p}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts, 1)
    }
}

/// Lexicographic stream of compositions of `n` into parts `>= min_part`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
    min_part: usize,
}

/// The lexicographically least composition of `n`: as many minimal parts as
/// fit, then the remainder.
fn least_composition(n: usize, m: usize, out: &mut Vec<usize>) {
    let mut rest = n;
    while rest >= 2 * m {
        out.push(m);
        rest -= m;
    }
    out.push(rest);
}

impl Compositions {
    fn new(n: usize, min_part: usize) -> Self {
        let m = min_part.max(1);
        let current = (n >= m && n > 0).then(|| {
            let mut v = Vec::new();
            least_composition(n, m, &mut v);
            v
        });
        Compositions {
            current,
            min_part: m,
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        let len = cur.len();
        if len >= 2 {
            // bump the second-to-last part; merge if the tail cannot stand alone
            let mut next = cur[..len - 1].to_vec();
            let tail = cur[len - 1];
            if tail > self.min_part {
                next[len - 2] += 1;
                least_composition(tail - 1, self.min_part, &mut next);
            } else {
                next[len - 2] += tail;
            }
            self.current = Some(next);
        }
        Some(Composition {
            parts: cur,
            min_part: self.min_part,
        })
    }
}

/// Every composition of `n` into parts `> k`, in lexicographic order.
pub fn enumerate_compositions(n: usize, k: usize) -> Compositions {
    Compositions::new(n, k + 1)
}

/// `G^c_n` with `G^c_0 = ... = G^c_{c-1} = 1` and `G^c_n = G^c_{n-1} + G^c_{n-c}`.
pub fn generalized_fibonacci(c: usize, n: usize) -> BigUint {
    assert!(c >= 1, "generalized Fibonacci order must be at least 1");
    if n < c {
        return BigUint::one();
    }
    let mut g: Vec<BigUint> = vec![BigUint::one(); c];
    for i in c..=n {
        let v = &g[i - 1] + &g[i - c];
        g.push(v);
    }
    g.swap_remove(n)
}

/// Number of k-restricted decompositions of a word of length `n`.
pub fn count_decompositions(n: usize, k: usize) -> Result<BigUint> {
    if n < k + 1 {
        return Err(Error::TooShort { len: n, k });
    }
    Ok(generalized_fibonacci(k + 1, n - (k + 1)))
}

/// Unique real root above 1 of `X^{k+1} - X^k - 1`, by bisection on `[1, 2]`.
///
/// `k = 0` gives exactly 2.
pub fn growth_rate(k: u32) -> f64 {
    let f = |x: f64| x.powi(k as i32 + 1) - x.powi(k as i32) - 1.0;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    if f(hi) == 0.0 {
        return hi;
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Slices `w` according to `c`.
pub fn apply_composition(w: &Word, c: &Composition) -> Result<Decomposition> {
    let sum = c.n();
    if sum != w.len() {
        return Err(Error::LengthMismatch { sum, len: w.len() });
    }
    let bytes = w.as_bytes();
    let mut at = 0;
    let parts = c
        .parts()
        .iter()
        .map(|&p| {
            let part = Word::new(&bytes[at..at + p]);
            at += p;
            part
        })
        .collect();
    Decomposition::new(parts)
}

/// Outcome of an exhaustive search over the k-restricted decompositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub word: Word,
    pub k: usize,
    pub count_explored: BigUint,
    pub min_rho: usize,
    pub min_witness: Composition,
    pub max_rho: usize,
    pub max_witness: Composition,
    /// ρ of the whole word as a single part (its BWT runs).
    pub baseline_rho: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub limit: BigUint,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            limit: BigUint::from(DEFAULT_SEARCH_LIMIT),
            cancel: None,
        }
    }
}

/// Running (min, max) with lexicographically least witnesses.
#[derive(Debug, Clone)]
struct Extremes {
    count: u64,
    min: Option<(usize, Vec<usize>)>,
    max: Option<(usize, Vec<usize>)>,
}

impl Extremes {
    fn empty() -> Self {
        Extremes {
            count: 0,
            min: None,
            max: None,
        }
    }

    fn observe(&mut self, r: usize, parts: &[usize]) {
        self.count += 1;
        let better_min = match &self.min {
            None => true,
            Some((m, p)) => r < *m || (r == *m && parts < p.as_slice()),
        };
        if better_min {
            self.min = Some((r, parts.to_vec()));
        }
        let better_max = match &self.max {
            None => true,
            Some((m, p)) => r > *m || (r == *m && parts < p.as_slice()),
        };
        if better_max {
            self.max = Some((r, parts.to_vec()));
        }
    }

    fn merge(mut self, other: Extremes) -> Extremes {
        self.count += other.count;
        if let Some((r, p)) = &other.min {
            let mut probe = Extremes {
                count: 0,
                min: self.min.take(),
                max: None,
            };
            probe.observe(*r, p);
            self.min = probe.min;
        }
        if let Some((r, p)) = &other.max {
            let mut probe = Extremes {
                count: 0,
                min: None,
                max: self.max.take(),
            };
            probe.observe(*r, p);
            self.max = probe.max;
        }
        self
    }
}

fn rho_of_split(w: &Word, parts: &[usize]) -> usize {
    let bytes = w.as_bytes();
    let mut at = 0;
    let words = parts
        .iter()
        .map(|&p| {
            let part = Word::new(&bytes[at..at + p]);
            at += p;
            part
        })
        .collect();
    rho(&Decomposition::new(words).expect("compositions have non-empty parts"))
}

/// Exact min and max of ρ over all k-restricted decompositions of `w`.
pub fn search_extremes(w: &Word, k: usize, limit: &BigUint) -> Result<SearchResult> {
    search_extremes_with(
        w,
        k,
        &SearchOptions {
            limit: limit.clone(),
            cancel: None,
        },
    )
}

/// As [`search_extremes`], with cancellation.
///
/// The space is split by first part across the rayon pool; the reduction is
/// order-independent, so the result does not depend on scheduling.
pub fn search_extremes_with(w: &Word, k: usize, opts: &SearchOptions) -> Result<SearchResult> {
    let n = w.len();
    let count = count_decompositions(n, k)?;
    if count > opts.limit {
        return Err(Error::GuardExceeded {
            count: count.to_string(),
            limit: opts.limit.to_string(),
        });
    }
    let m = k + 1;
    let cancelled = |flag: &Option<Arc<AtomicBool>>| {
        flag.as_ref()
            .is_some_and(|f| f.load(AtomicOrdering::Relaxed))
    };
    let total = (m..=n)
        .into_par_iter()
        .filter(|&first| first == n || n - first >= m)
        .map(|first| -> Result<Extremes> {
            let mut acc = Extremes::empty();
            if first == n {
                acc.observe(rho_of_split(w, &[n]), &[n]);
                return Ok(acc);
            }
            let mut parts = vec![first];
            for (i, rest) in Compositions::new(n - first, m).enumerate() {
                if i % 256 == 0 && cancelled(&opts.cancel) {
                    return Err(Error::Cancelled);
                }
                parts.truncate(1);
                parts.extend_from_slice(rest.parts());
                acc.observe(rho_of_split(w, &parts), &parts);
            }
            Ok(acc)
        })
        .try_reduce(Extremes::empty, |a, b| Ok(a.merge(b)))?;

    let (min_rho, min_parts) = total.min.expect("non-empty search space");
    let (max_rho, max_parts) = total.max.expect("non-empty search space");
    debug_assert_eq!(BigUint::from(total.count), count);
    Ok(SearchResult {
        word: w.clone(),
        k,
        count_explored: BigUint::from(total.count),
        min_rho,
        min_witness: Composition {
            parts: min_parts,
            min_part: m,
        },
        max_rho,
        max_witness: Composition {
            parts: max_parts,
            min_part: m,
        },
        baseline_rho: rho(&Decomposition::singleton(w.clone())?),
    })
}

/// `q - 1` blocks of length `p` followed by one block of length `p + r`,
/// where `|w| = pq + r` and `0 <= r < p`.
pub fn block_decomposition(w: &Word, p: usize) -> Result<Decomposition> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "block length must be positive".into(),
        ));
    }
    let n = w.len();
    if n < p {
        return Err(Error::TooShort { len: n, k: p - 1 });
    }
    let q = n / p;
    let mut parts: Vec<usize> = vec![p; q - 1];
    parts.push(n - (q - 1) * p);
    apply_composition(w, &Composition::new(parts, p)?)
}

/// Result of checking the constructive upper bound on one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub sigma: usize,
    pub k: usize,
    /// `σ^{k+1} + 4k + 2`.
    pub bound: u128,
    /// `σ^{k+1} + 2(k + 1 + r)` where `r = |w| mod (k + 1)`.
    pub fine_bound: u128,
    pub achieved: usize,
    pub ok: bool,
    pub fine_ok: bool,
}

pub fn best_bound(sigma: usize, k: usize) -> u128 {
    (sigma as u128).pow(k as u32 + 1) + 4 * k as u128 + 2
}

/// Compares ρ of the `(k+1)`-block decomposition with the upper bounds.
///
/// σ comes from `alphabet` when given, else from the symbols of `w`.
pub fn verify_best_bound(w: &Word, k: usize, alphabet: Option<&Alphabet>) -> Result<BoundCheck> {
    let sigma = match alphabet {
        Some(a) => {
            a.check(w)?;
            a.size()
        }
        None => Alphabet::infer([w])?.size(),
    };
    let p = k + 1;
    let blocks = block_decomposition(w, p)?;
    let achieved = rho(&blocks);
    let r = w.len() % p;
    let bound = best_bound(sigma, k);
    let fine_bound = (sigma as u128).pow(p as u32) + 2 * (p + r) as u128;
    Ok(BoundCheck {
        sigma,
        k,
        bound,
        fine_bound,
        achieved,
        ok: (achieved as u128) <= bound,
        fine_ok: (achieved as u128) <= fine_bound,
    })
}

/// Lyndon factorization into non-increasing Lyndon words (Duval).
pub fn lyndon_factorization(w: &Word) -> Result<Decomposition> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = w.as_bytes();
    let n = s.len();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            parts.push(Word::new(&s[i..i + j - k]));
            i += j - k;
        }
    }
    Decomposition::new(parts)
}

/// Stars-and-bars count: `Σ_p C(n - (k+1)p + p - 1, p - 1)`.
pub fn count_by_binomial_sum(n: usize, k: usize) -> BigUint {
    let m = k + 1;
    let mut total = BigUint::zero();
    for p in 1..=n / m {
        total += binomial(n - m * p + p - 1, p - 1);
    }
    total
}

fn binomial(n: usize, r: usize) -> BigUint {
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
