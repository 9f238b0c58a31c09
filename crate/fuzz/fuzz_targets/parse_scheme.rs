#![no_main]

use grd_core::schemes::parse_scheme;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_scheme(text) {
        let printed = s.to_string();
        let again = parse_scheme(&printed).expect("printed schemes reparse");
        assert_eq!(again, s);
        assert_eq!(again.to_string(), printed);
    }
});
