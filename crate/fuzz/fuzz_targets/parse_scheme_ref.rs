#![no_main]

use grd_core::schemes::{parse_scheme, parse_scheme_ref};
use libfuzzer_sys::fuzz_target;

// Literal schemes and `catalog:` references.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_scheme_ref(text) {
        assert_eq!(parse_scheme(&s.to_string()).expect("printed schemes reparse"), s);
    }
});
