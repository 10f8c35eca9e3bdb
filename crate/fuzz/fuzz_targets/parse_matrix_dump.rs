#![no_main]

use libfuzzer_sys::fuzz_target;
use picard_core::linalg::{parse_dump, write_dump};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_dump(text) {
        let printed = write_dump(&m);
        let again = parse_dump(&printed).expect("written dump parses");
        assert_eq!(printed, write_dump(&again));
    }
});
