#![no_main]

use csspair::format::parse_sweep;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_sweep(text) {
        assert!(!s.points.is_empty());
    }
});
