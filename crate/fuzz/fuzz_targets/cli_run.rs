#![no_main]

use libfuzzer_sys::fuzz_target;

/// Subcommands whose cost is bounded by the input size.
const CHEAP: [&str; 7] = ["analyze", "split", "implies", "equiv", "canon", "divides", "catalog"];

// NUL-separated argument vectors.
fuzz_target!(|data: &[u8]| {
    if data.len() > 512 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args: Vec<&str> = text.split('\0').collect();
    if args.len() > 8 || !CHEAP.contains(&args[0]) {
        return;
    }
    let argv = ["grd", "--format", "machine"].into_iter().chain(args.iter().copied());
    let out = grd_cli::run(argv);
    assert!(matches!(out.code, 0 | 2 | 3), "exit {} for {args:?}: {}", out.code, out.stderr);
    if out.code != 0 {
        assert!(!out.stderr.is_empty());
        return;
    }
    match serde_json::from_str::<serde_json::Value>(&out.stdout) {
        Ok(v) => assert_eq!(v["schema_version"], 1),
        // Help and version text are the only other successful output.
        Err(_) => assert!(args.iter().any(|a| a.starts_with('-')), "{args:?}"),
    }
});
