//! Operations shared by the command line and the HTTP service.
//!
//! Both front ends build an [`Operation`], call [`execute`] and print the
//! resulting JSON payload, so `--json` output and service responses are
//! byte-identical for the same logical request.

use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ebwtlab::adversary::{artin_scan, cycle_solutions, verify_circulant_inverse, worst_family};
use ebwtlab::decomposition::{count_decompositions, enumerate_compositions, SearchOptions};
use ebwtlab::suites::run_suite;
use ebwtlab::{
    apply_composition, block_decomposition, bwt, ebwt, invert_ebwt, lyndon_factorization,
    search_extremes_with, verify_best_bound, Alphabet, Composition, Decomposition, Error, Word,
};

use crate::config::Limits;

/// Machine-readable error codes.
pub mod codes {
    pub const MALFORMED_INPUT: &str = "malformed_input";
    pub const INVALID_PARAMETER: &str = "invalid_parameter";
    pub const GUARD_EXCEEDED: &str = "guard_exceeded";
    pub const CANCELLED: &str = "cancelled";
    pub const NOT_FOUND: &str = "not_found";
    pub const INTERNAL: &str = "internal";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        ApiError {
            code: code.to_string(),
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        ApiError::new(codes::MALFORMED_INPUT, message)
    }

    fn guard(message: impl Into<String>) -> Self {
        ApiError::new(codes::GUARD_EXCEEDED, message)
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::GuardExceeded { .. } => codes::GUARD_EXCEEDED,
            Error::Cancelled => codes::CANCELLED,
            Error::UnknownSuite(_) => codes::NOT_FOUND,
            Error::InvariantViolated(_) => codes::INTERNAL,
            Error::EmptyWord
            | Error::EmptyAlphabet
            | Error::DuplicateSymbol(_)
            | Error::SymbolNotInAlphabet(_)
            | Error::EmptyDecomposition
            | Error::EmptyPart => codes::MALFORMED_INPUT,
            Error::LengthMismatch { .. }
            | Error::PartTooSmall { .. }
            | Error::TooShort { .. }
            | Error::InvalidParameter(_) => codes::INVALID_PARAMETER,
        };
        ApiError::new(code, e.to_string())
    }
}

/// A logical request, independent of the transport.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Operation {
    Ebwt {
        parts: Vec<String>,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Bwt {
        word: String,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Invert {
        l: String,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Runs {
        word: String,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Apply {
        word: String,
        parts_lengths: Vec<usize>,
        k: usize,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Search {
        word: String,
        k: usize,
        #[serde(default)]
        limit: Option<String>,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Count {
        n: usize,
        k: usize,
    },
    Enumerate {
        n: usize,
        k: usize,
    },
    Block {
        word: String,
        p: usize,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Bound {
        word: String,
        k: usize,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Lyndon {
        word: String,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Family {
        k: usize,
        ratio: u64,
    },
    Cycles {
        n: usize,
        k: usize,
    },
    Artin {
        limit: u64,
    },
    Circulant {
        k: usize,
    },
    Verify {
        suite: String,
    },
}

/// Successful result: the JSON payload and its plain-text rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub text: String,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
        }
    }

    /// Compact JSON, the exact bytes both front ends emit.
    pub fn json_string(&self) -> String {
        self.json.to_string()
    }
}

fn parse_word(s: &str, cap: Option<usize>) -> Result<Word, ApiError> {
    if let Some(c) = s.chars().find(|c| !c.is_ascii_graphic()) {
        return Err(ApiError::malformed(format!(
            "symbol {c:?} is not a printable ASCII character"
        )));
    }
    if s.is_empty() {
        return Err(Error::EmptyWord.into());
    }
    if let Some(cap) = cap {
        if s.len() > cap {
            return Err(ApiError::guard(format!(
                "word length {} exceeds the cap {cap}",
                s.len()
            )));
        }
    }
    Ok(Word::from(s))
}

/// Declared alphabet, or the sorted distinct symbols of `words`.
fn resolve_alphabet(declared: &Option<String>, words: &[&Word]) -> Result<Alphabet, ApiError> {
    match declared {
        Some(a) => {
            let alphabet: Alphabet = a.parse()?;
            for w in words {
                alphabet.check(w)?;
            }
            Ok(alphabet)
        }
        None => Ok(Alphabet::infer(words.iter().copied())?),
    }
}

fn parts_json(d: &Decomposition) -> Vec<String> {
    d.parts().iter().map(Word::to_string).collect()
}

/// Runs one operation under `limits`.
pub fn execute(
    op: &Operation,
    limits: &Limits,
    cancel: Option<Arc<AtomicBool>>,
) -> Result<Output, ApiError> {
    let cap = limits.max_word_len;
    match op {
        Operation::Ebwt { parts, alphabet } => {
            if parts.is_empty() {
                return Err(Error::EmptyDecomposition.into());
            }
            let words = parts
                .iter()
                .map(|p| parse_word(p, None))
                .collect::<Result<Vec<_>, _>>()?;
            let d = Decomposition::new(words)?;
            if let Some(c) = cap {
                if d.total_length() > c {
                    return Err(ApiError::guard(format!(
                        "total length {} exceeds the cap {c}",
                        d.total_length()
                    )));
                }
            }
            resolve_alphabet(alphabet, &d.parts().iter().collect::<Vec<_>>())?;
            let res = ebwt(&d);
            Ok(Output::new(
                json!({ "l": res.to_string(), "runs": res.runs() }),
                res.to_string(),
            ))
        }
        Operation::Bwt { word, alphabet } => {
            let w = parse_word(word, cap)?;
            resolve_alphabet(alphabet, &[&w])?;
            let l = bwt(&w)?;
            Ok(Output::new(
                json!({ "l": l.to_string(), "runs": l.runs() }),
                l.to_string(),
            ))
        }
        Operation::Invert { l, alphabet } => {
            let w = parse_word(l, cap)?;
            resolve_alphabet(alphabet, &[&w])?;
            let d = invert_ebwt(&w)?;
            Ok(Output::new(
                json!({ "parts": parts_json(&d) }),
                d.to_string(),
            ))
        }
        Operation::Runs { word, alphabet } => {
            let w = parse_word(word, cap)?;
            resolve_alphabet(alphabet, &[&w])?;
            Ok(Output::new(
                json!({ "runs": w.runs() }),
                w.runs().to_string(),
            ))
        }
        Operation::Apply {
            word,
            parts_lengths,
            k,
            alphabet,
        } => {
            let w = parse_word(word, cap)?;
            resolve_alphabet(alphabet, &[&w])?;
            let comp = Composition::new(parts_lengths.clone(), 1)?;
            let d = apply_composition(&w, &comp)?;
            let res = ebwt(&d);
            let part_admissible: Vec<bool> = d.parts().iter().map(|p| p.len() > *k).collect();
            let admissible = part_admissible.iter().all(|&a| a);
            let json = json!({
                "parts": parts_json(&d),
                "l": res.to_string(),
                "runs": res.runs(),
                "admissible": admissible,
                "part_admissible": part_admissible,
            });
            let text = format!(
                "parts      {d}\nl          {res}\nruns       {}\nadmissible {admissible}",
                res.runs()
            );
            Ok(Output::new(json, text))
        }
        Operation::Search {
            word,
            k,
            limit,
            alphabet,
        } => {
            let w = parse_word(word, limits.max_search_word_len)?;
            resolve_alphabet(alphabet, &[&w])?;
            let requested = match limit {
                Some(l) => l
                    .parse::<BigUint>()
                    .map_err(|_| ApiError::malformed(format!("limit '{l}' is not an integer")))?,
                None => limits.search_limit.clone(),
            };
            if requested > limits.search_limit {
                return Err(ApiError::guard(format!(
                    "limit {requested} exceeds the configured maximum {}",
                    limits.search_limit
                )));
            }
            let res = search_extremes_with(
                &w,
                *k,
                &SearchOptions {
                    limit: requested,
                    cancel,
                },
            )?;
            let json = json!({
                "word": res.word.to_string(),
                "k": res.k,
                "count_explored": res.count_explored.to_string(),
                "min_rho": res.min_rho,
                "min_witness": res.min_witness.to_string(),
                "max_rho": res.max_rho,
                "max_witness": res.max_witness.to_string(),
                "baseline_rho": res.baseline_rho,
            });
            let text = format!(
                "word            {}\nk               {}\ncount_explored  {}\nmin_rho         {}\nmin_witness     {}\nmax_rho         {}\nmax_witness     {}\nbaseline_rho    {}",
                res.word, res.k, res.count_explored, res.min_rho, res.min_witness,
                res.max_rho, res.max_witness, res.baseline_rho
            );
            Ok(Output::new(json, text))
        }
        Operation::Count { n, k } => {
            let c = count_decompositions(*n, *k)?;
            Ok(Output::new(
                json!({ "count": c.to_string() }),
                c.to_string(),
            ))
        }
        Operation::Enumerate { n, k } => {
            let c = count_decompositions(*n, *k)?;
            if c > BigUint::from(limits.max_enumerate) {
                return Err(ApiError::guard(format!(
                    "{c} compositions exceed the listing cap {}",
                    limits.max_enumerate
                )));
            }
            let list: Vec<String> = enumerate_compositions(*n, *k)
                .map(|c| c.to_string())
                .collect();
            let text = list.join("\n");
            Ok(Output::new(json!({ "compositions": list }), text))
        }
        Operation::Block { word, p, alphabet } => {
            let w = parse_word(word, cap)?;
            resolve_alphabet(alphabet, &[&w])?;
            let d = block_decomposition(&w, *p)?;
            let res = ebwt(&d);
            let json = json!({ "parts": parts_json(&d), "l": res.to_string(), "runs": res.runs() });
            Ok(Output::new(
                json,
                format!("{d}\nl     {res}\nruns  {}", res.runs()),
            ))
        }
        Operation::Bound { word, k, alphabet } => {
            let w = parse_word(word, cap)?;
            let a = resolve_alphabet(alphabet, &[&w])?;
            let chk = verify_best_bound(&w, *k, Some(&a))?;
            let json = json!({
                "sigma": chk.sigma,
                "k": chk.k,
                "bound": chk.bound.to_string(),
                "fine_bound": chk.fine_bound.to_string(),
                "achieved": chk.achieved,
                "ok": chk.ok,
                "fine_ok": chk.fine_ok,
            });
            let text = format!(
                "sigma       {}\nk           {}\nbound       {}\nfine_bound  {}\nachieved    {}\nok          {}\nfine_ok     {}",
                chk.sigma, chk.k, chk.bound, chk.fine_bound, chk.achieved, chk.ok, chk.fine_ok
            );
            Ok(Output::new(json, text))
        }
        Operation::Lyndon { word, alphabet } => {
            let w = parse_word(word, cap)?;
            resolve_alphabet(alphabet, &[&w])?;
            let d = lyndon_factorization(&w)?;
            let bbwt = ebwt(&d);
            let json =
                json!({ "parts": parts_json(&d), "bbwt": bbwt.to_string(), "runs": bbwt.runs() });
            Ok(Output::new(json, d.to_string()))
        }
        Operation::Family { k, ratio } => {
            let f = worst_family(*k, *ratio)?;
            if let Some(c) = cap {
                if f.word.len() > c {
                    return Err(ApiError::guard(format!(
                        "family word length {} exceeds the cap {c}",
                        f.word.len()
                    )));
                }
            }
            let ratio_str = format!(
                "{}/{}",
                f.ratio_lower_bound.numer(),
                f.ratio_lower_bound.denom()
            );
            let json = json!({
                "n": f.n,
                "word": f.word.to_string(),
                "parts": f.witness.to_string(),
                "witness_rho": f.witness_rho,
                "bound": f.bound.to_string(),
                "ratio_lower_bound": ratio_str,
            });
            let text = format!("{}\n{}\n{}", f.n, f.word, f.witness);
            Ok(Output::new(json, text))
        }
        Operation::Cycles { n, k } => {
            if *k > limits.max_cycle_length {
                return Err(ApiError::guard(format!(
                    "cycle length {k} exceeds the cap {}",
                    limits.max_cycle_length
                )));
            }
            let systems = cycle_solutions(*n, *k)?;
            let json_systems: Vec<Value> = systems
                .iter()
                .map(|s| {
                    json!({
                        "t": s.t,
                        "alpha": s.alpha.iter().map(|&v| v as i64).collect::<Vec<_>>(),
                        "beta": s.beta.iter().map(|&v| v as i64).collect::<Vec<_>>(),
                        "i": s.i_strings(),
                        "feasible": s.feasible,
                    })
                })
                .collect();
            let text = systems
                .iter()
                .map(|s| {
                    format!(
                        "t={:?} alpha={:?} beta={:?} i=[{}] feasible={}",
                        s.t,
                        s.alpha,
                        s.beta,
                        s.i_strings().join(", "),
                        s.feasible
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(
                json!({ "n": n, "k": k, "systems": json_systems }),
                text,
            ))
        }
        Operation::Artin { limit } => {
            if *limit > limits.max_artin_limit {
                return Err(ApiError::guard(format!(
                    "limit {limit} exceeds the cap {}",
                    limits.max_artin_limit
                )));
            }
            let values = artin_scan(*limit)?;
            let text = values
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Output::new(json!({ "values": values }), text))
        }
        Operation::Circulant { k } => {
            let ok = verify_circulant_inverse(*k)?;
            let scale = (1u128 << k) - 1;
            Ok(Output::new(
                json!({ "k": k, "ok": ok, "scale": scale.to_string() }),
                format!("(2S-I)·C(1,2,...,2^{}) = {scale}·I: {ok}", k - 1),
            ))
        }
        Operation::Verify { suite } => {
            let report = run_suite(suite)?;
            let results: Vec<Value> = report
                .results
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite,
                        "property": r.property,
                        "passed": r.passed,
                        "cases": r.cases,
                        "counterexample": r.counterexample,
                    })
                })
                .collect();
            let json = json!({ "suite": suite, "passed": report.passed(), "results": results });
            Ok(Output::new(json, report.to_string()))
        }
    }
}

/// Envelope for `/api/job` style requests.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobRequest {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(flatten)]
    pub operation: Operation,
}

#[derive(Debug, Clone, Serialize)]
pub struct JobResponse {
    pub id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ApiError>,
    pub timing_ms: f64,
}

pub fn run_job(req: JobRequest, limits: &Limits, cancel: Option<Arc<AtomicBool>>) -> JobResponse {
    let start = Instant::now();
    let outcome = execute(&req.operation, limits, cancel);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok(out) => JobResponse {
            id: req.id,
            result: Some(out.json),
            error: None,
            timing_ms,
        },
        Err(e) => JobResponse {
            id: req.id,
            result: None,
            error: Some(e),
            timing_ms,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(op: Operation) -> Result<Output, ApiError> {
        execute(&op, &Limits::service(), None)
    }

    #[test]
    fn ebwt_payload() {
        let out = run(Operation::Ebwt {
            parts: vec!["baa".into(), "bab".into()],
            alphabet: None,
        })
        .unwrap();
        assert_eq!(out.json_string(), r#"{"l":"bababa","runs":5}"#);
        assert_eq!(out.text, "bababa");
    }

    #[test]
    fn apply_payload() {
        let out = run(Operation::Apply {
            word: "abab".into(),
            parts_lengths: vec![2, 2],
            k: 1,
            alphabet: None,
        })
        .unwrap();
        assert_eq!(out.json["l"], "bbaa");
        assert_eq!(out.json["runs"], 1);
        assert_eq!(out.json["admissible"], true);

        let out = run(Operation::Apply {
            word: "ab".into(),
            parts_lengths: vec![1, 1],
            k: 1,
            alphabet: None,
        })
        .unwrap();
        assert_eq!(out.json["admissible"], false);
        assert_eq!(out.json["part_admissible"], json!([false, false]));
    }

    #[test]
    fn count_is_string() {
        let out = run(Operation::Count { n: 6, k: 1 }).unwrap();
        assert_eq!(out.json_string(), r#"{"count":"5"}"#);
        let big = run(Operation::Count { n: 400, k: 0 }).unwrap();
        assert_eq!(
            big.json["count"],
            (BigUint::from(1u32) << 399usize).to_string()
        );
    }

    #[test]
    fn error_codes() {
        let e = run(Operation::Runs {
            word: "".into(),
            alphabet: None,
        })
        .unwrap_err();
        assert_eq!(e.code, codes::MALFORMED_INPUT);
        let e = run(Operation::Search {
            word: "a".repeat(65),
            k: 1,
            limit: None,
            alphabet: None,
        })
        .unwrap_err();
        assert_eq!(e.code, codes::GUARD_EXCEEDED);
        let e = run(Operation::Search {
            word: "ab".repeat(20),
            k: 0,
            limit: Some("10".into()),
            alphabet: None,
        })
        .unwrap_err();
        assert_eq!(e.code, codes::GUARD_EXCEEDED);
        assert!(e.message.contains("549755813888"), "{}", e.message);
        let e = run(Operation::Bwt {
            word: "abc".into(),
            alphabet: Some("ab".into()),
        })
        .unwrap_err();
        assert_eq!(e.code, codes::MALFORMED_INPUT);
        let e = run(Operation::Count { n: 1, k: 3 }).unwrap_err();
        assert_eq!(e.code, codes::INVALID_PARAMETER);
        let e = run(Operation::Verify {
            suite: "nope".into(),
        })
        .unwrap_err();
        assert_eq!(e.code, codes::NOT_FOUND);
    }

    #[test]
    fn declared_alphabet_sets_sigma() {
        let out = run(Operation::Bound {
            word: "abab".into(),
            k: 1,
            alphabet: Some("abc".into()),
        })
        .unwrap();
        assert_eq!(out.json["sigma"], 3);
        assert_eq!(out.json["bound"], "15");
    }

    #[test]
    fn job_envelope() {
        let req: JobRequest =
            serde_json::from_str(r#"{"id":"r1","op":"count","n":6,"k":1}"#).unwrap();
        let resp = run_job(req, &Limits::service(), None);
        assert_eq!(resp.id.as_deref(), Some("r1"));
        assert_eq!(resp.result, Some(json!({"count": "5"})));
        assert!(resp.error.is_none());
    }
}
