#![no_main]

use csspair::format::{parse_matrix, write_matrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(text) {
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }
});
