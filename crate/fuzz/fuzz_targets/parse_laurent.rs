#![no_main]

use grd_core::algebra::parse_laurent;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_laurent(text) {
        assert_eq!(parse_laurent(&p.to_string()).expect("printed polynomials reparse"), p);
    }
});
