use std::process::{Command, Output};

fn ebwtlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ebwtlab"))
        .args(args)
        .env_remove("EBWTLAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ebwtlab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn ebwt_of_example_multiset() {
    assert_eq!(stdout(&["ebwt", "baa,bab"]), "bababa");
    assert_eq!(
        stdout(&["--json", "ebwt", "baa,bab"]),
        r#"{"l":"bababa","runs":5}"#
    );
}

#[test]
fn runs_of_unary_word() {
    assert_eq!(stdout(&["runs", "aaa"]), "0");
}

#[test]
fn invert_returns_canonical_rotations() {
    assert_eq!(stdout(&["invert", "bababa"]), "aab,abb");
}

#[test]
fn artin_scan_output() {
    // 60 is included: 61 is prime and 2 has order 60 modulo 61
    assert_eq!(
        stdout(&["artin", "--max", "60"]),
        "2 4 10 12 18 28 36 52 58 60"
    );
    assert_eq!(
        stdout(&["artin", "--max", "59"]),
        "2 4 10 12 18 28 36 52 58"
    );
}

#[test]
fn count_is_a_decimal_string_in_json() {
    assert_eq!(
        stdout(&["--json", "count", "--n", "6", "--k", "1"]),
        r#"{"count":"5"}"#
    );
    assert_eq!(stdout(&["count", "--n", "6", "--k", "1"]), "5");
}

#[test]
fn apply_with_parts_lengths() {
    let out = stdout(&[
        "--json", "apply", "--word", "abab", "--parts", "2+2", "--k", "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["l"], "bbaa");
    assert_eq!(v["runs"], 1);
    assert_eq!(v["admissible"], true);
}

#[test]
fn declared_alphabet_changes_the_bound() {
    let binary = stdout(&["--json", "bound", "--word", "abaabab", "--k", "2"]);
    let ternary = stdout(&[
        "--json",
        "--alphabet",
        "abc",
        "bound",
        "--word",
        "abaabab",
        "--k",
        "2",
    ]);
    let b: serde_json::Value = serde_json::from_str(&binary).unwrap();
    let t: serde_json::Value = serde_json::from_str(&ternary).unwrap();
    assert_eq!(b["bound"], "18");
    assert_eq!(t["bound"], "37");
}

#[test]
fn verify_passing_suites_exit_zero() {
    for suite in ["circulant", "counting", "adversary"] {
        let out = ebwtlab(&["verify", "--suite", suite]);
        assert!(
            out.status.success(),
            "{suite}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));
    }
}

#[test]
fn verify_failing_suite_exits_nonzero() {
    // the artin suite carries the literal scan(60) expectation, which does not hold
    let out = ebwtlab(&["verify", "--suite", "artin"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL] artin/scan(60)"));
}

#[test]
fn unknown_suite_is_an_error() {
    let out = ebwtlab(&["verify", "--suite", "nope"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_subcommand_fails_on_stderr() {
    let out = ebwtlab(&["frobnicate"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("frobnicate"));
}

#[test]
fn malformed_input_fails_on_stderr() {
    for args in [
        &["ebwt", "baa,,bab"][..],
        &["apply", "--word", "abab", "--parts", "3+3"],
        &["--alphabet", "ab", "runs", "abc"],
    ] {
        let out = ebwtlab(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn json_errors_carry_a_code() {
    let out = ebwtlab(&[
        "--json", "search", "--word", "abab", "--k", "1", "--limit", "1",
    ]);
    assert!(!out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["code"], "guard_exceeded");
}

#[test]
fn config_file_tightens_guards() {
    let path = std::env::temp_dir().join(format!("ebwtlab-cli-test-{}.conf", std::process::id()));
    std::fs::write(&path, "search_limit = 1\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ebwtlab"))
        .args(["search", "--word", "abab", "--k", "1"])
        .env("EBWTLAB_CONFIG", &path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}
