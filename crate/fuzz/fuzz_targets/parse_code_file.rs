#![no_main]

use csspair::format::{parse_css, write_css};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_css(text) {
        let again = parse_css(&write_css(&q)).unwrap();
        assert_eq!(again.encoding(), q.encoding());
    }
});
