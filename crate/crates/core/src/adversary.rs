//! Preimages of `(ba)^n` under the eBWT and the worst-case family built on
//! them.
//!
//! With `L = (ba)^n` and `F = a^n b^n`, the i-th `a` sits at F row `i` and L
//! row `2i`, the i-th `b` at F row `n + i` and L row `2i - 1` (1-based). The
//! LF permutation is therefore explicit and its cycles are the words of
//! `W(n)`. A cycle of length exactly `k` is a solution of a linear system
//! whose matrix `2S - I` is circulant with inverse `C(1, 2, ..., 2^{k-1}) /
//! (2^k - 1)`; [`cycle_solutions`] solves it exactly for every admissible
//! letter pattern.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::decomposition::best_bound;
use crate::error::{Error, Result};
use crate::transform::{permutation_cycles, Decomposition};
use crate::word::{omega_cmp_cyclic, Word};

/// Largest cycle length the exact solver accepts (keeps `α n + β` in i128).
pub const MAX_CYCLE_LENGTH: usize = 60;

/// The multiset `W(n)` with `ebwt(W(n)) = (ba)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageFamily {
    pub n: usize,
    pub parts: Decomposition,
    pub min_part_length: usize,
    pub part_count: usize,
}

/// LF permutation of `(ba)^n`, 0-based rows.
fn lf_ba(n: usize) -> Vec<usize> {
    (0..2 * n)
        .map(|r| if r % 2 == 0 { n + r / 2 } else { r / 2 })
        .collect()
}

/// `W(n)` in linear time from the explicit LF permutation.
pub fn preimage_ba(n: usize) -> Result<PreimageFamily> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut parts: Vec<Word> = permutation_cycles(&lf_ba(n))
        .into_iter()
        .map(|cycle| {
            let w: Vec<u8> = cycle
                .iter()
                .rev()
                .map(|&r| if r % 2 == 0 { b'b' } else { b'a' })
                .collect();
            Word::new(w).least_rotation()
        })
        .collect();
    parts.sort_by(|u, v| omega_cmp_cyclic(u.as_bytes(), 0, v.as_bytes(), 0));
    let min_part_length = parts.iter().map(Word::len).min().unwrap_or(0);
    let part_count = parts.len();
    Ok(PreimageFamily {
        n,
        parts: Decomposition::new(parts)?,
        min_part_length,
        part_count,
    })
}

/// Lengths of the LF cycles of `(ba)^n`, i.e. the part lengths of `W(n)`.
pub fn cycle_lengths_ba(n: usize) -> Vec<usize> {
    permutation_cycles(&lf_ba(n)).iter().map(Vec::len).collect()
}

/// `true` when the LF permutation of `(ba)^n` has no fixed point, i.e. `W(n)`
/// has no part of length 1.
pub fn fixed_point_free(n: usize) -> bool {
    lf_ba(n).iter().enumerate().all(|(r, &to)| r != to)
}

/// One candidate letter pattern for a cycle of length `k`, with the solved
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSystem {
    pub k: usize,
    /// `t_j = 1` when the j-th letter of the cycle is a `b`; `t_1 = 0`, `t_k = 1`.
    pub t: Vec<u8>,
    pub alpha: Vec<i128>,
    pub beta: Vec<i128>,
    /// `i_j = (α_j n + β_j) / (2^k - 1)`.
    pub i: Vec<Ratio<i128>>,
    pub feasible: bool,
}

impl CycleSystem {
    /// Indices as reduced `p/q` strings.
    pub fn i_strings(&self) -> Vec<String> {
        self.i
            .iter()
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
            .collect()
    }
}

/// `α_j = Σ_l 2^{(l - j) mod k} t_l` and `β_j = Σ_l 2^{(l - j - 1) mod k} t_l`.
fn coefficients(t: &[u8]) -> (Vec<i128>, Vec<i128>) {
    let k = t.len() as i64;
    let pow = |e: i64| 1i128 << e.rem_euclid(k);
    let mut alpha = Vec::with_capacity(t.len());
    let mut beta = Vec::with_capacity(t.len());
    for j in 0..k {
        let (mut a, mut b) = (0i128, 0i128);
        for (l, &tl) in t.iter().enumerate() {
            if tl == 1 {
                a += pow(l as i64 - j);
                b += pow(l as i64 - j - 1);
            }
        }
        alpha.push(a);
        beta.push(b);
    }
    (alpha, beta)
}

/// Solves the length-`k` cycle system of `(ba)^n` for all `2^{k-2}` letter
/// patterns.
pub fn cycle_solutions(n: usize, k: usize) -> Result<Vec<CycleSystem>> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(
            "cycle length must be at least 2 (length 1 is never feasible)".into(),
        ));
    }
    if k > MAX_CYCLE_LENGTH {
        return Err(Error::InvalidParameter(format!(
            "cycle length {k} above the supported maximum {MAX_CYCLE_LENGTH}"
        )));
    }
    let modulus = (1i128 << k) - 1;
    let n_big = n as i128;
    let mut out = Vec::with_capacity(1 << (k - 2));
    for mask in 0u64..(1u64 << (k - 2)) {
        let mut t = vec![0u8; k];
        t[k - 1] = 1;
        // t_2 is the most significant free bit
        for (j, slot) in t.iter_mut().enumerate().take(k - 1).skip(1) {
            *slot = ((mask >> (k - 2 - j)) & 1) as u8;
        }
        let (alpha, beta) = coefficients(&t);
        let i: Vec<Ratio<i128>> = alpha
            .iter()
            .zip(&beta)
            .map(|(&a, &b)| Ratio::new(a * n_big + b, modulus))
            .collect();
        let feasible = i
            .iter()
            .all(|r| r.is_integer() && *r.numer() >= 1 && *r.numer() <= n_big)
            && distinct_per_letter(&t, &i);
        out.push(CycleSystem {
            k,
            t,
            alpha,
            beta,
            i,
            feasible,
        });
    }
    Ok(out)
}

/// No index repeats among the `a` letters, nor among the `b` letters.
fn distinct_per_letter(t: &[u8], i: &[Ratio<i128>]) -> bool {
    for letter in [0u8, 1] {
        let mut idx: Vec<i128> = t
            .iter()
            .zip(i)
            .filter(|(&tj, _)| tj == letter)
            .map(|(_, r)| *r.numer())
            .collect();
        let before = idx.len();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != before {
            return false;
        }
    }
    true
}

/// `true` when some letter pattern yields a cycle of length exactly `k`.
pub fn has_cycle_of_length(n: usize, k: usize) -> Result<bool> {
    if k == 1 {
        return Ok(!fixed_point_free(n));
    }
    Ok(cycle_solutions(n, k)?.iter().any(|s| s.feasible))
}

/// `Π_{k'=2}^{k} (2^{k'} - 1)`; 1 when `k < 2`.
pub fn family_modulus(k: usize) -> Option<u128> {
    (2..=k).try_fold(1u128, |acc, j| {
        let f = 1u128.checked_shl(j as u32)?.checked_sub(1)?;
        acc.checked_mul(f)
    })
}

/// A binary word with a k-restricted decomposition of maximal ρ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstFamily {
    pub k: usize,
    pub n: usize,
    pub word: Word,
    pub witness: Decomposition,
    /// `ρ(witness) = 2n - 1`.
    pub witness_rho: usize,
    /// `σ^{k+1} + 4k + 2` with σ = 2.
    pub bound: u128,
    /// `(2n - 1) / bound`.
    pub ratio_lower_bound: Ratio<u128>,
}

/// Smallest `n` divisible by the family modulus with `2n - 1 >= ratio ·
/// bound`, together with `W(n)` as the witness decomposition.
pub fn worst_family(k: usize, ratio: u64) -> Result<WorstFamily> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let modulus = family_modulus(k)
        .ok_or_else(|| Error::InvalidParameter(format!("modulus overflows for k = {k}")))?;
    let bound = best_bound(2, k);
    let target = (ratio as u128)
        .checked_mul(bound)
        .ok_or_else(|| Error::InvalidParameter("ratio too large".into()))?;
    // 2n - 1 >= target  <=>  n >= ceil((target + 1) / 2)
    let n_min = ((target + 2) / 2).max(1);
    let n = n_min.div_ceil(modulus) * modulus;
    let n = usize::try_from(n)
        .map_err(|_| Error::InvalidParameter(format!("n = {n} does not fit in memory")))?;
    let family = preimage_ba(n)?;
    if family.min_part_length <= k {
        return Err(Error::InvariantViolated(format!(
            "W({n}) has a part of length {} <= k = {k}",
            family.min_part_length
        )));
    }
    let witness_rho = 2 * n - 1;
    Ok(WorstFamily {
        k,
        n,
        word: family.parts.concat(),
        witness: family.parts,
        witness_rho,
        bound,
        ratio_lower_bound: Ratio::new(witness_rho as u128, bound),
    })
}

pub type Matrix = Vec<Vec<i128>>;

/// Cyclic shift: ones on the superdiagonal and in the bottom-left corner.
pub fn shift_matrix(k: usize) -> Matrix {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(j == (i + 1) % k)).collect())
        .collect()
}

/// Circulant matrix with entry `(i, j) = c[(j - i) mod k]`.
pub fn circulant(first_row: &[i128]) -> Matrix {
    let k = first_row.len();
    (0..k)
        .map(|i| (0..k).map(|j| first_row[(j + k - i) % k]).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Checks `(2S - I) · C(1, 2, ..., 2^{k-1}) = (2^k - 1) · I` exactly.
pub fn verify_circulant_inverse(k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    if k > MAX_CYCLE_LENGTH {
        return Err(Error::InvalidParameter(format!(
            "k = {k} above the supported maximum {MAX_CYCLE_LENGTH}"
        )));
    }
    let s = shift_matrix(k);
    let p: Matrix = s
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| 2 * v - i128::from(i == j))
                .collect()
        })
        .collect();
    let c = circulant(&(0..k).map(|j| 1i128 << j).collect::<Vec<_>>());
    let scale = (1i128 << k) - 1;
    let product = mat_mul(&p, &c);
    Ok(product.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &v)| v == if i == j { scale } else { 0 })
    }))
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// `n + 1` is an odd prime and 2 has multiplicative order `n` modulo it.
pub fn artin_candidate(n: u64) -> bool {
    let Some(p) = n.checked_add(1) else {
        return false;
    };
    if !is_odd_prime(p) {
        return false;
    }
    pow_mod(2, n, p) == 1 && prime_factors(n).iter().all(|&q| pow_mod(2, n / q, p) != 1)
}

/// Above this bound [`artin_scan`] skips the preimage cross-check.
pub const ARTIN_CROSS_CHECK_LIMIT: u64 = 10_000;

/// All `m <= limit` with [`artin_candidate`] true.
///
/// For `m` up to [`ARTIN_CROSS_CHECK_LIMIT`] the result is cross-checked
/// against the preimages: `m` is listed exactly when `m` is even and
/// `W(m / 2)` is a single word (that word then has length `m`).
pub fn artin_scan(limit: u64) -> Result<Vec<u64>> {
    let hits: Vec<u64> = (1..=limit)
        .into_par_iter()
        .filter(|&m| artin_candidate(m))
        .collect();
    let checked = limit.min(ARTIN_CROSS_CHECK_LIMIT);
    let mismatch = (1..=checked).into_par_iter().find_first(|&m| {
        let single = m % 2 == 0 && cycle_lengths_ba((m / 2) as usize).len() == 1;
        single != hits.binary_search(&m).is_ok()
    });
    if let Some(m) = mismatch {
        return Err(Error::InvariantViolated(format!(
            "artin scan and preimage disagree at m = {m}"
        )));
    }
    Ok(hits)
}
