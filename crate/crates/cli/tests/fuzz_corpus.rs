//! Replays the `cli_run` fuzz corpus: NUL-separated argument vectors.

use std::fs;
use std::path::PathBuf;

use grd_cli::run;

#[test]
fn cli_corpus_replays() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/cli_run");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        let args: Vec<&str> = text.split('\0').collect();
        let argv = ["grd", "--format", "machine"].into_iter().chain(args.iter().copied());
        let out = run(argv);
        assert!(matches!(out.code, 0 | 2 | 3), "exit {} for {args:?}: {}", out.code, out.stderr);
        if out.code == 0 {
            match serde_json::from_str::<serde_json::Value>(&out.stdout) {
                Ok(v) => assert_eq!(v["schema_version"], 1),
                Err(_) => assert!(args.iter().any(|a| a.starts_with('-')), "{args:?}"),
            }
        } else {
            assert!(!out.stderr.is_empty());
        }
        seen += 1;
    }
    assert!(seen >= 5);
}

/// Inputs that once reached panics or unbounded work.
#[test]
fn hostile_inputs_fail_cleanly() {
    let cases: &[&[&str]] = &[
        &["split", "1@18446744073709551557, -1@0"],
        &["implies", "--from", "1@2305843009213693951, -1@0", "--to", "1@1, -1@0"],
        &["witness", "--from", "catalog:symmetric(3)", "--to", "catalog:example3iii", "--window", "4000"],
        &["probe", "1@1, -1@0", "--function", "abs", "--count", "4000000000"],
        &["divides", "--num", "y2^100*y3^100*y5^100 - 1", "--den", "y2 - 1", "--brute", "10"],
    ];
    for args in cases {
        let out = run(std::iter::once("grd").chain(args.iter().copied()));
        assert_eq!(out.code, 3, "{args:?}: {}", out.stderr);
    }
}
