//! Runs a named property suite (default: all) and prints one line per
//! property.
//!
//!     cargo run --release --example property_suites -- roundtrip

use std::process::ExitCode;

use ebwtlab::suites::run_suite;

fn main() -> ExitCode {
    let name = std::env::args().nth(1).unwrap_or_else(|| "all".to_string());
    match run_suite(&name) {
        Ok(report) => {
            println!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
