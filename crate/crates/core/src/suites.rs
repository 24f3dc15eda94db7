//! Named property suites.
//!
//! Each suite runs a group of exhaustive or seeded-random checks and reports
//! one [`PropertyResult`] per property, with a counterexample on failure.
//! `all` runs every suite in [`SUITES`] order.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::adversary::{
    artin_scan, cycle_lengths_ba, cycle_solutions, family_modulus, fixed_point_free,
    has_cycle_of_length, preimage_ba, verify_circulant_inverse, worst_family,
};
use crate::decomposition::{
    apply_composition, best_bound, block_decomposition, count_by_binomial_sum,
    count_decompositions, enumerate_compositions, generalized_fibonacci, growth_rate,
    search_extremes, verify_best_bound,
};
use crate::error::{Error, Result};
use crate::transform::{ebwt, invert_ebwt, rho, Decomposition};
use crate::word::{omega_cmp_cyclic, Alphabet, Word};

pub const SUITES: &[&str] = &[
    "example1",
    "roundtrip",
    "counting",
    "growth",
    "bounds",
    "structural",
    "adversary",
    "worst",
    "artin",
    "circulant",
];

const SEED: u64 = 0x5eed_0eb7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub suite: String,
    pub property: String,
    pub passed: bool,
    /// Number of cases checked.
    pub cases: u64,
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}/{} ({} cases, {:.1} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.property,
            self.cases,
            self.elapsed.as_secs_f64() * 1e3
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub results: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} properties, {} failed", self.results.len(), failed)
    }
}

/// Outcome of one property body: cases checked, first counterexample.
type Outcome = (u64, Option<String>);

struct Runner<'a> {
    suite: &'a str,
    results: Vec<PropertyResult>,
}

impl<'a> Runner<'a> {
    fn new(suite: &'a str) -> Self {
        Runner {
            suite,
            results: Vec::new(),
        }
    }

    fn check(&mut self, property: &str, body: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (cases, counterexample) = body();
        self.results.push(PropertyResult {
            suite: self.suite.to_string(),
            property: property.to_string(),
            passed: counterexample.is_none(),
            cases,
            counterexample,
            elapsed: start.elapsed(),
        });
    }
}

/// First failing case over a parallel iterator, in input order.
fn first_failure<I, T>(cases: I, f: impl Fn(&T) -> Option<String> + Sync) -> Outcome
where
    I: IntoParallelIterator<Item = T>,
    I::Iter: IndexedParallelIterator,
    T: Send,
{
    let iter = cases.into_par_iter();
    let n = iter.len() as u64;
    (n, iter.map(|c| f(&c)).find_first(Option::is_some).flatten())
}

fn random_word(rng: &mut impl Rng, sigma: u8, len: usize) -> Word {
    Word::new(
        (0..len)
            .map(|_| b'a' + rng.gen_range(0..sigma))
            .collect::<Vec<_>>(),
    )
}

fn binary_words(len: usize) -> impl Iterator<Item = Word> {
    (0..1u64 << len).map(move |mask| {
        Word::new(
            (0..len)
                .map(|i| {
                    if mask >> (len - 1 - i) & 1 == 1 {
                        b'b'
                    } else {
                        b'a'
                    }
                })
                .collect::<Vec<_>>(),
        )
    })
}

fn sort_omega(parts: &mut [Word]) {
    parts.sort_by(|u, v| omega_cmp_cyclic(u.as_bytes(), 0, v.as_bytes(), 0));
}

/// Runs the named suite, or every suite for `all`.
pub fn run_suite(name: &str) -> Result<SuiteReport> {
    if name == "all" {
        let mut report = SuiteReport::default();
        for s in SUITES {
            report.results.extend(run_suite(s)?.results);
        }
        return Ok(report);
    }
    let mut r = Runner::new(name);
    match name {
        "example1" => example1(&mut r),
        "roundtrip" => roundtrip(&mut r),
        "counting" => counting(&mut r),
        "growth" => growth(&mut r),
        "bounds" => bounds(&mut r),
        "structural" => structural(&mut r),
        "adversary" => adversary(&mut r),
        "worst" => worst(&mut r),
        "artin" => artin(&mut r),
        "circulant" => circulant(&mut r),
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(SuiteReport { results: r.results })
}

fn example1(r: &mut Runner) {
    r.check("ebwt-golden", || {
        let d: Decomposition = "baa,bab".parse().expect("literal");
        let res = ebwt(&d);
        let ok = res.l_column().as_bytes() == b"bababa" && res.f_column().as_bytes() == b"aaabbb";
        (1, (!ok).then(|| format!("L={} F={}", res, res.f_column())))
    });
    r.check("invert-golden", || {
        let got = invert_ebwt(&Word::from("bababa")).map(|d| d.to_string());
        let ok = got.as_deref() == Ok("aab,abb");
        (1, (!ok).then(|| format!("{got:?}")))
    });
}

fn roundtrip(r: &mut Runner) {
    r.check("exhaustive-binary-len<=10", || {
        let words: Vec<Word> = (1..=10).flat_map(binary_words).collect();
        first_failure(words, |l| {
            let parts = invert_ebwt(l).ok()?;
            if ebwt(&parts).l_column() != l {
                return Some(format!("L={l} recovered {parts}"));
            }
            parts
                .parts()
                .iter()
                .find(|p| !p.is_primitive())
                .map(|p| format!("L={l} non-primitive part {p}"))
        })
    });
    r.check("random-len<=200", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let words: Vec<Word> = (0..10_000)
            .map(|_| {
                let sigma = rng.gen_range(2..=4);
                let len = rng.gen_range(1..=200);
                random_word(&mut rng, sigma, len)
            })
            .collect();
        first_failure(words, |l| {
            let parts = invert_ebwt(l).ok()?;
            if ebwt(&parts).l_column() != l {
                return Some(format!("L={l}"));
            }
            parts
                .parts()
                .iter()
                .find(|p| !p.is_primitive())
                .map(|p| format!("L={l} non-primitive part {p}"))
        })
    });
    r.check("primitive-multisets", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
        let mut cases = Vec::new();
        for _ in 0..2_000 {
            let sigma = rng.gen_range(2..=3);
            let mut parts: Vec<Word> = Vec::new();
            let mut total = 0;
            let budget = rng.gen_range(1..=60);
            for _ in 0..200 {
                if total >= budget {
                    break;
                }
                let len = rng.gen_range(1..=(budget - total).min(12));
                let w = random_word(&mut rng, sigma, len);
                if !w.is_primitive() {
                    continue;
                }
                let w = w.least_rotation();
                if parts.contains(&w) {
                    continue;
                }
                total += w.len();
                parts.push(w);
            }
            sort_omega(&mut parts);
            cases.push(parts);
        }
        first_failure(cases, |parts| {
            let d = Decomposition::new(parts.clone()).ok()?;
            let back = invert_ebwt(ebwt(&d).l_column()).ok()?;
            (back.parts() != parts.as_slice()).then(|| format!("{d} -> {back}"))
        })
    });
}

fn counting(r: &mut Runner) {
    r.check("enumeration=fibonacci=binomial(n<=22,k<=4)", || {
        let cases: Vec<(usize, usize)> = (1..=22)
            .flat_map(|n| (0..=4).filter(move |&k| n > k).map(move |k| (n, k)))
            .collect();
        first_failure(cases, |&(n, k)| {
            let streamed = BigUint::from(enumerate_compositions(n, k).count());
            let formula = count_decompositions(n, k).ok()?;
            let oracle = count_by_binomial_sum(n, k);
            (streamed != formula || formula != oracle)
                .then(|| format!("n={n} k={k}: stream {streamed}, G {formula}, binomial {oracle}"))
        })
    });
    r.check("restriction-nesting", || {
        let cases: Vec<(usize, usize)> = (1..=16)
            .flat_map(|n| (0..4).filter(move |&k| n > k + 1).map(move |k| (n, k)))
            .collect();
        first_failure(cases, |&(n, k)| {
            let wide: std::collections::HashSet<Vec<usize>> = enumerate_compositions(n, k)
                .map(|c| c.parts().to_vec())
                .collect();
            let narrow: Vec<Vec<usize>> = enumerate_compositions(n, k + 1)
                .map(|c| c.parts().to_vec())
                .collect();
            if let Some(c) = narrow.iter().find(|c| !wide.contains(*c)) {
                return Some(format!("n={n} k={k}: {c:?} not in D_k"));
            }
            (narrow.len() > wide.len()).then(|| format!("n={n} k={k}: count not monotone"))
        })
    });
    r.check("apply-concat-identity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
        let cases: Vec<(Word, usize)> = (1..=16)
            .flat_map(|n| (0..3).map(move |k| (n, k)))
            .filter(|&(n, k)| n > k)
            .map(|(n, k)| (random_word(&mut rng, 3, n), k))
            .collect();
        first_failure(cases, |(w, k)| {
            enumerate_compositions(w.len(), *k).find_map(|c| {
                let d = apply_composition(w, &c).ok()?;
                let lens: Vec<usize> = d.parts().iter().map(Word::len).collect();
                (d.concat() != *w || lens != c.parts()).then(|| format!("{w} with {c}"))
            })
        })
    });
}

fn growth(r: &mut Runner) {
    r.check("ratio-converges(n=200,k<=5)", || {
        let cases: Vec<u32> = (0..=5).collect();
        first_failure(cases, |&k| {
            let c = k as usize + 1;
            let num = generalized_fibonacci(c, 201).to_f64()?;
            let den = generalized_fibonacci(c, 200).to_f64()?;
            let root = growth_rate(k);
            let err = (num / den - root).abs();
            (err > 1e-6).then(|| format!("k={k}: ratio {} root {root} err {err:e}", num / den))
        })
    });
    r.check("golden-ratio(k=1)", || {
        let root = growth_rate(1);
        let err = (root - 1.618_033_988_7).abs();
        (1, (err > 1e-9).then(|| format!("root {root}")))
    });
    r.check("root-bracket", || {
        let cases: Vec<u32> = (1..=64).collect();
        first_failure(cases, |&k| {
            let x = growth_rate(k);
            let f = x.powi(k as i32 + 1) - x.powi(k as i32) - 1.0;
            (!(x > 1.0 && x < 2.0) || f.abs() > 1e-9).then(|| format!("k={k} root {x}"))
        })
    });
}

fn bounds(r: &mut Runner) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let cases: Vec<(Word, usize, usize)> = (0..500)
        .map(|_| {
            let sigma = rng.gen_range(2..=3usize);
            let k = rng.gen_range(0..=3usize);
            let len = rng.gen_range(k + 1..=200);
            (random_word(&mut rng, sigma as u8, len), k, sigma)
        })
        .collect();
    r.check("block-bound(sigma^(k+1)+4k+2)", || {
        first_failure(cases.clone(), |(w, k, sigma)| {
            let a = Alphabet::letters(*sigma).ok()?;
            let chk = verify_best_bound(w, *k, Some(&a)).ok()?;
            (!chk.ok).then(|| format!("{w} k={k}: {} > {}", chk.achieved, chk.bound))
        })
    });
    r.check("block-fine-bound(sigma^(k+1)+2(k+1+r))", || {
        first_failure(cases.clone(), |(w, k, sigma)| {
            let a = Alphabet::letters(*sigma).ok()?;
            let chk = verify_best_bound(w, *k, Some(&a)).ok()?;
            (!chk.fine_ok).then(|| format!("{w} k={k}: {} > {}", chk.achieved, chk.fine_bound))
        })
    });
    r.check("optimum-below-bound", || {
        let limit = BigUint::from(20_000u32);
        first_failure(cases.clone(), |(w, k, sigma)| {
            let best = match search_extremes(w, *k, &limit) {
                Ok(res) => res.min_rho,
                Err(Error::GuardExceeded { .. }) => rho(&block_decomposition(w, k + 1).ok()?),
                Err(e) => return Some(format!("{w} k={k}: {e}")),
            };
            let bound = best_bound(*sigma, *k);
            (best as u128 > bound).then(|| format!("{w} k={k}: {best} > {bound}"))
        })
    });
}

/// All words of length `p` over the first `sigma` letters, in lex order.
fn all_words(sigma: u8, p: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                (0..sigma).map(move |c| {
                    let mut v = w.clone();
                    v.push(b'a' + c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}

/// A random multiset of 2..=8 words, with at least one repeated element.
fn random_multiset(rng: &mut ChaCha8Rng) -> Vec<Word> {
    let sigma = rng.gen_range(2..=3);
    let count = rng.gen_range(2..=8);
    let mut parts: Vec<Word> = (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=8);
            random_word(rng, sigma, len)
        })
        .collect();
    let dup = parts[rng.gen_range(0..parts.len())].clone();
    parts.push(dup);
    parts.shuffle(rng);
    parts
}

fn structural(r: &mut Runner) {
    r.check("all-words-pattern(sigma<=3,p<=4)", || {
        let cases: Vec<(u8, usize)> = [2u8, 3]
            .iter()
            .flat_map(|&s| (1..=4).map(move |p| (s, p)))
            .collect();
        first_failure(cases, |&(sigma, p)| {
            let d = Decomposition::new(all_words(sigma, p)).ok()?;
            let res = ebwt(&d);
            let block: Vec<u8> = (0..sigma)
                .flat_map(|c| std::iter::repeat_n(b'a' + c, p))
                .collect();
            let expected = Word::new(block).repeat((sigma as usize).pow(p as u32 - 1));
            let runs = (sigma as usize).pow(p as u32) - 1;
            (res.l_column() != &expected || res.runs() != runs)
                .then(|| format!("sigma={sigma} p={p}: L={res} runs={}", res.runs()))
        })
    });
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let pairs: Vec<(Vec<Word>, usize)> = (0..1_000)
        .map(|_| {
            let parts = random_multiset(&mut rng);
            let drop = rng.gen_range(0..parts.len());
            (parts, drop)
        })
        .collect();
    r.check("dedup-invariance", || {
        first_failure(pairs.clone(), |(parts, _)| {
            let a = Decomposition::new(parts.clone()).ok()?;
            let b = a.dedup();
            (rho(&a) != rho(&b)).then(|| format!("{a}: {} vs {b}: {}", rho(&a), rho(&b)))
        })
    });
    r.check("removal-bound", || {
        first_failure(pairs.clone(), |(parts, drop)| {
            let a = Decomposition::new(parts.clone()).ok()?;
            let w = &parts[*drop];
            let mult = parts.iter().filter(|p| *p == w).count();
            let mut rest = parts.clone();
            rest.remove(*drop);
            let b = Decomposition::new(rest).ok()?;
            let (ra, rb) = (rho(&a) as i64, rho(&b) as i64);
            let ok = if mult >= 2 {
                ra == rb
            } else {
                (0..=2 * w.len() as i64).contains(&(ra - rb))
            };
            (!ok).then(|| format!("A={a} ({ra}) minus {w} (x{mult}) -> {rb}"))
        })
    });
    r.check("subset-monotonicity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
        let cases: Vec<(Vec<Word>, Vec<bool>)> = pairs
            .iter()
            .map(|(parts, _)| {
                let set = Decomposition::new(parts.clone())
                    .expect("non-empty")
                    .dedup()
                    .into_parts();
                let mut keep: Vec<bool> = set.iter().map(|_| rng.gen_bool(0.5)).collect();
                keep[0] = true;
                (set, keep)
            })
            .collect();
        first_failure(cases, |(set, keep)| {
            let a = Decomposition::new(set.clone()).ok()?;
            let sub: Vec<Word> = set
                .iter()
                .zip(keep)
                .filter(|(_, &k)| k)
                .map(|(w, _)| w.clone())
                .collect();
            let b = Decomposition::new(sub).ok()?;
            (rho(&b) > rho(&a)).then(|| format!("B={b} ({}) > A={a} ({})", rho(&b), rho(&a)))
        })
    });
    r.check("equal-length-bound", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
        let cases: Vec<(usize, Vec<Word>)> = (0..1_000)
            .map(|_| {
                let sigma = rng.gen_range(2..=3u8);
                let p = rng.gen_range(1..=4);
                let count = rng.gen_range(1..=30);
                let parts = (0..count)
                    .map(|_| random_word(&mut rng, sigma, p))
                    .collect();
                ((sigma as usize).pow(p as u32), parts)
            })
            .collect();
        first_failure(cases, |(cap, parts)| {
            let d = Decomposition::new(parts.clone()).ok()?;
            (rho(&d) > *cap).then(|| format!("{d}: {} > {cap}", rho(&d)))
        })
    });
}

fn adversary(r: &mut Runner) {
    r.check("solver<=>inversion(n<=200,2<=k<=8)", || {
        let cases: Vec<usize> = (1..=200).collect();
        first_failure(cases, |&n| {
            let lens = cycle_lengths_ba(n);
            (2..=8).find_map(|k| {
                let solver = has_cycle_of_length(n, k).ok()?;
                let actual = lens.contains(&k);
                (solver != actual).then(|| format!("n={n} k={k}: solver {solver}, W(n) {actual}"))
            })
        })
    });
    r.check("no-fixed-points", || {
        let cases: Vec<usize> = (1..=300).collect();
        first_failure(cases, |&n| {
            (!fixed_point_free(n) || cycle_lengths_ba(n).contains(&1)).then(|| format!("n={n}"))
        })
    });
    r.check("length-2<=>n=1mod3(n<=300)", || {
        let cases: Vec<usize> = (1..=300).collect();
        first_failure(cases, |&n| {
            let has = cycle_lengths_ba(n).contains(&2);
            (has != (n % 3 == 1)).then(|| format!("n={n}: has length-2 part = {has}"))
        })
    });
    r.check("preimage=inversion(n<=200)", || {
        let cases: Vec<usize> = (1..=200).collect();
        first_failure(cases, |&n| {
            let fam = preimage_ba(n).ok()?;
            let inv = invert_ebwt(&Word::from("ba").repeat(n)).ok()?;
            (fam.parts != inv).then(|| format!("n={n}: {} vs {inv}", fam.parts))
        })
    });
    r.check("conservation-and-runs", || {
        let cases: Vec<usize> = (1..=200).collect();
        first_failure(cases, |&n| {
            let fam = preimage_ba(n).ok()?;
            let all = fam.parts.concat();
            let a = all.as_bytes().iter().filter(|&&c| c == b'a').count();
            let ok = all.len() == 2 * n && a == n && rho(&fam.parts) == 2 * n - 1;
            (!ok).then(|| format!("n={n}"))
        })
    });
    r.check("coefficient-bounds", || {
        let cases: Vec<(usize, usize)> = (2..=10)
            .flat_map(|k| [1usize, 7, 100].map(|n| (n, k)))
            .collect();
        first_failure(cases, |&(n, k)| {
            let top = (1i128 << k) - 1;
            cycle_solutions(n, k).ok()?.iter().find_map(|s| {
                (!s.alpha.iter().chain(&s.beta).all(|&v| 0 < v && v < top))
                    .then(|| format!("n={n} k={k} t={:?}", s.t))
            })
        })
    });
}

fn worst(r: &mut Runner) {
    r.check("modulus-guarantee(n<=1e4,k<=5)", || {
        let cases: Vec<(usize, usize)> = (1..=5)
            .flat_map(|k| {
                let m = family_modulus(k).expect("small k") as usize;
                (1..=10_000 / m).map(move |q| (k, q * m))
            })
            .collect();
        first_failure(cases, |&(k, n)| {
            let min = cycle_lengths_ba(n).into_iter().min()?;
            (min <= k).then(|| format!("k={k} n={n}: min part length {min}"))
        })
    });
    r.check("worst_family(2,2)", || {
        let got = worst_family(2, 2);
        let ok = matches!(&got, Ok(f) if f.n == 21
            && f.word.len() == 42
            && rho(&f.witness) == 41
            && f.bound == 18
            && f.ratio_lower_bound >= num_rational::Ratio::from_integer(2)
            && f.witness.min_part_length() > 2);
        (1, (!ok).then(|| format!("{got:?}")))
    });
    r.check("worst_family-small", || {
        let cases = vec![(1usize, 1u64, 6usize), (3, 1, 21)];
        first_failure(cases, |&(k, m, n)| {
            let f = worst_family(k, m).ok()?;
            (f.n != n || f.witness.min_part_length() <= k)
                .then(|| format!("k={k} M={m}: n={}", f.n))
        })
    });
}

fn artin(r: &mut Runner) {
    r.check("scan(60)", || {
        let expected = vec![2, 4, 10, 12, 18, 28, 36, 52, 58];
        let got = artin_scan(60);
        (
            1,
            (got.as_ref() != Ok(&expected)).then(|| format!("{got:?}, expected {expected:?}")),
        )
    });
    r.check("single-word-preimages(n<=60)", || {
        let listed = [2usize, 4, 10, 12, 18, 28, 36, 52, 58];
        let cases: Vec<usize> = (1..=60).collect();
        let (n, first) = first_failure(cases, |&n| {
            let single = cycle_lengths_ba(n).len() == 1;
            (single != listed.contains(&n)).then(|| format!("n={n}: |W(n)|=1 is {single}"))
        });
        let singles: Vec<usize> = (1..=60)
            .filter(|&n| cycle_lengths_ba(n).len() == 1)
            .collect();
        (
            n,
            first.map(|f| format!("{f}; single-word n = {singles:?}")),
        )
    });
    r.check("single-word<=>artin(2n),n<=5000", || {
        let cases: Vec<usize> = (1..=5_000).collect();
        first_failure(cases, |&n| {
            let single = cycle_lengths_ba(n).len() == 1;
            let cand = crate::adversary::artin_candidate(2 * n as u64);
            (single != cand).then(|| format!("n={n}"))
        })
    });
}

fn circulant(r: &mut Runner) {
    r.check("(2S-I)C=(2^k-1)I(k<=16)", || {
        let cases: Vec<usize> = (2..=16).collect();
        first_failure(cases, |&k| {
            (verify_circulant_inverse(k) != Ok(true)).then(|| format!("k={k}"))
        })
    });
}
