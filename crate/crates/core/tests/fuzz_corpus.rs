//! Replays the fuzz corpora through the fuzz targets' checks, and runs the
//! same checks on random strings over the grammar alphabet.

use std::fs;
use std::path::PathBuf;

use grd_core::algebra::parse_laurent;
use grd_core::exact::parse_rational;
use grd_core::schemes::{parse_scheme, parse_scheme_ref, CatalogEntry};
use grd_core::witness::{Branch, FunctionSpec};
use proptest::prelude::*;

fn check_scheme(text: &str) {
    if let Ok(s) = parse_scheme(text) {
        let printed = s.to_string();
        let again = parse_scheme(&printed).expect("printed schemes reparse");
        assert_eq!(again, s);
        assert_eq!(again.to_string(), printed);
    }
}

fn check_scheme_ref(text: &str) {
    if let Ok(s) = parse_scheme_ref(text) {
        assert_eq!(parse_scheme(&s.to_string()).expect("printed schemes reparse"), s);
    }
}

fn check_laurent(text: &str) {
    if let Ok(p) = parse_laurent(text) {
        assert_eq!(parse_laurent(&p.to_string()).expect("printed polynomials reparse"), p);
    }
}

fn check_rational(text: &str) {
    if let Ok(r) = parse_rational(text) {
        assert_eq!(parse_rational(&r.to_string()).expect("printed rationals reparse"), r);
    }
}

fn check_keywords(text: &str) {
    if let Ok(f) = text.parse::<FunctionSpec>() {
        assert_eq!(f.to_string().parse::<FunctionSpec>().expect("reparse"), f);
    }
    if let Ok(b) = text.parse::<Branch>() {
        assert_eq!(b.to_string().parse::<Branch>().expect("reparse"), b);
    }
    if let Ok(e) = text.parse::<CatalogEntry>() {
        assert_eq!(e.to_string().parse::<CatalogEntry>().expect("reparse"), e);
    }
}

fn replay(target: &str, check: fn(&str)) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
        let bytes = fs::read(entry.unwrap().path()).unwrap();
        if let Ok(text) = std::str::from_utf8(&bytes) {
            check(text);
            seen += 1;
        }
    }
    assert!(seen > 0, "empty corpus for {target}");
}

#[test]
fn corpora_replay() {
    replay("parse_scheme", check_scheme);
    replay("parse_scheme_ref", check_scheme_ref);
    replay("parse_laurent", check_laurent);
    replay("parse_rational", check_rational);
    replay("function_spec", check_keywords);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn random_scheme_text(text in "[-0-9/@, ]{0,24}") {
        check_scheme(&text);
    }

    #[test]
    fn random_references(text in "(catalog:)?(riemann|symmetric|theorem1|example3iii)?[-0-9/(), ]{0,12}") {
        check_scheme_ref(&text);
    }

    #[test]
    fn random_laurent_text(text in "[-+0-9y^*/ ]{0,24}") {
        check_laurent(&text);
    }

    #[test]
    fn random_rational_text(text in "[-0-9/ ]{0,12}") {
        check_rational(&text);
    }

    #[test]
    fn random_keyword_text(text in "[a-z_0-9(),/ -]{0,28}") {
        check_keywords(&text);
    }
}
