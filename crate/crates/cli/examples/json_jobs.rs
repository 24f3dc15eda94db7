//! Runs JSON job requests through the same code path as `POST /api/job`,
//! one request per line on stdin (or a few built-in ones).
//!
//!     echo '{"id":"a","op":"count","n":40,"k":2}' | cargo run --example json_jobs

use std::io::{BufRead, IsTerminal};

use ebwtlab_cli::api::{run_job, JobRequest};
use ebwtlab_cli::config::Limits;

const DEMO: &[&str] = &[
    r#"{"id":"1","op":"ebwt","parts":["baa","bab"]}"#,
    r#"{"id":"2","op":"apply","word":"abab","parts_lengths":[2,2],"k":1}"#,
    r#"{"id":"3","op":"search","word":"abaababaab","k":1}"#,
    r#"{"id":"4","op":"count","n":200,"k":3}"#,
    r#"{"id":"5","op":"family","k":3,"ratio":1}"#,
    r#"{"id":"6","op":"search","word":"abaababaabaababaababaabaababaababaabaababaababaabaababaababaababaab","k":1}"#,
];

fn main() {
    let limits = Limits::service();
    let stdin = std::io::stdin();
    let mut lines: Vec<String> = Vec::new();
    if !stdin.is_terminal() {
        lines = stdin
            .lock()
            .lines()
            .map_while(Result::ok)
            .filter(|l| !l.trim().is_empty())
            .collect();
    }
    if lines.is_empty() {
        lines = DEMO.iter().map(|s| s.to_string()).collect();
    }
    for line in lines {
        let out = match serde_json::from_str::<JobRequest>(&line) {
            Ok(req) => serde_json::to_string(&run_job(req, &limits, None)).unwrap(),
            Err(e) => format!(
                r#"{{"error":{{"code":"malformed_input","message":{:?}}}}}"#,
                e.to_string()
            ),
        };
        println!("{out}");
    }
}
