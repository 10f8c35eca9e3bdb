#![no_main]

use libfuzzer_sys::fuzz_target;
use picard_core::lab::{parse_witness, verify_witness};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_witness(text) {
        // verification must report, never panic
        let _ = verify_witness(&w);
    }
});
