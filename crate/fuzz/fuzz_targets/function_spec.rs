#![no_main]

use grd_core::schemes::CatalogEntry;
use grd_core::witness::{Branch, FunctionSpec};
use libfuzzer_sys::fuzz_target;

// The small keyword grammars: functions, probe branches, catalog entries.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = text.parse::<FunctionSpec>() {
        assert_eq!(f.to_string().parse::<FunctionSpec>().expect("reparse"), f);
    }
    if let Ok(b) = text.parse::<Branch>() {
        assert_eq!(b.to_string().parse::<Branch>().expect("reparse"), b);
    }
    if let Ok(e) = text.parse::<CatalogEntry>() {
        assert_eq!(e.to_string().parse::<CatalogEntry>().expect("reparse"), e);
    }
});
